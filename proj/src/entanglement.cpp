#include "qorth/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qorth/error.hpp"

namespace qorth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTolerance = 1e-12;
constexpr double kAgreementTolerance = 1e-10;

double concurrence_from_weights(const Eigen::VectorXd& weights) {
  const double purity = weights.squaredNorm();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

// Extremal eigenvectors with c(0,0) > 0 and c(N,N) > 0. These entries never
// vanish for a > 0, so the pair varies continuously with G01 from the Fock basis.
struct ExtremalPair {
  Eigen::VectorXd low;
  Eigen::VectorXd high;
};

ExtremalPair extremal_pair(const SpectralDecomposition& decomposition) {
  const auto n_max = decomposition.eigenvalues.size() - 1;
  ExtremalPair pair{decomposition.eigenvectors.col(0), decomposition.eigenvectors.col(n_max)};
  if (pair.low(0) < 0.0) pair.low = -pair.low;
  if (pair.high(n_max) < 0.0) pair.high = -pair.high;
  return pair;
}

}  // namespace

FockState::FockState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw Error(ErrorCode::NotNormalizable, "Fock state needs at least one amplitude");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kNormTolerance)) {
    throw Error(ErrorCode::NotNormalizable,
                "Fock amplitudes have squared norm " + std::to_string(norm2));
  }
}

Eigen::VectorXd reduced_mode_weights(const FockState& state) {
  return state.amplitudes().cwiseAbs2();
}

double concurrence(const FockState& state) {
  return concurrence_from_weights(reduced_mode_weights(state));
}

double concurrence_bound(int bosons) {
  return std::sqrt(2.0 * bosons / (bosons + 1.0));
}

double comb_concurrence_formula(long long count) {
  if (count < 2) throw Error(ErrorCode::InvalidCount, "comb concurrence needs count >= 2");
  const double n = static_cast<double>(count);
  return std::sqrt(2.0 * (n - 1.0) / n);
}

GammaConcurrenceCheck gamma_concurrence_check(const TwoModeCombSpec& spec) {
  validate(spec);
  if (spec.params.g01 != 0.0) {
    throw Error(ErrorCode::TunnelingPresent, "relation only holds without tunneling");
  }
  const TwoModeComb comb = comb_state(spec);
  const double c = comb_concurrence_formula(spec.count);
  GammaConcurrenceCheck check;
  check.gamma_tilde = comb.gamma_tilde;
  check.predicted = kPi * c * c / (2.0 * g_statistics(comb.g_basis).mean_above_ground);
  check.agree = std::abs(check.predicted - check.gamma_tilde) <=
                kAgreementTolerance * std::abs(check.gamma_tilde);
  return check;
}

double fast_gamma_tilde(const SpectralDecomposition& decomposition) {
  const auto n_max = decomposition.eigenvalues.size() - 1;
  return kPi / (n_max * decomposition.spacing);
}

FockState fast_state(const SpectralDecomposition& decomposition, double phase, double gamma) {
  const auto n_max = decomposition.eigenvalues.size() - 1;
  const auto& g = decomposition.eigenvalues;
  const ExtremalPair c = extremal_pair(decomposition);
  const double amp = 1.0 / std::sqrt(2.0);
  const std::complex<double> w0 = std::polar(amp, -g(0) * gamma);
  const std::complex<double> wn = std::polar(amp, phase - g(n_max) * gamma);
  Eigen::VectorXcd psi = w0 * c.low.cast<std::complex<double>>() +
                         wn * c.high.cast<std::complex<double>>();
  // rounding in the eigenvectors can push the norm off by a few ulps
  psi /= psi.norm();
  return FockState(std::move(psi));
}

double fast_concurrence_closed_form(const SpectralDecomposition& decomposition, double phase,
                                    double gamma) {
  const auto n_max = decomposition.eigenvalues.size() - 1;
  const ExtremalPair c = extremal_pair(decomposition);
  const std::complex<double> rot =
      std::polar(1.0, phase - kPi * gamma / fast_gamma_tilde(decomposition));
  double sum = 0.0;
  for (Eigen::Index n = 0; n <= n_max; ++n) {
    const double m2 = std::norm(c.low(n) + c.high(n) * rot);
    sum += m2 * m2;
  }
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - 0.25 * sum)));
}

TraceSeries concurrence_fast_trace(const TwoModeParams& params, double phase,
                                   std::span<const double> gamma_grid) {
  check_grid(gamma_grid);
  const SpectralDecomposition decomposition = diagonalize(params);
  TraceSeries series;
  series.quantity = Quantity::Concurrence;
  series.gammas.assign(gamma_grid.begin(), gamma_grid.end());
  series.values.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) {
    series.values.push_back(concurrence(fast_state(decomposition, phase, gamma)));
  }
  return series;
}

ProfileShape classify_profile(const TwoModeParams& params, double phase, int points,
                              double threshold) {
  if (points < 3 || points % 2 == 0) {
    throw Error(ErrorCode::InvalidParams, "profile grid needs an odd number of points >= 3");
  }
  const SpectralDecomposition decomposition = diagonalize(params);
  ProfileShape shape;
  shape.gamma_tilde = fast_gamma_tilde(decomposition);
  const std::vector<double> grid = linspace(0.0, 2.0 * shape.gamma_tilde, points);
  const int center = points / 2;

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = concurrence(fast_state(decomposition, phase, grid[i]));
  }
  shape.center_value = values[center];

  const auto left = std::max_element(values.begin(), values.begin() + center + 1);
  const auto right = std::max_element(values.begin() + center, values.end());
  shape.peak_gammas = {grid[left - values.begin()], grid[right - values.begin()]};
  shape.peak_value = std::max(*left, *right);
  shape.double_peaked = shape.peak_value - shape.center_value > threshold;
  return shape;
}

BifurcationReport find_bifurcation(int bosons, double phase, const BifurcationScan& scan) {
  if (bosons < 2) {
    throw Error(ErrorCode::UnsupportedN, "bifurcation analysis needs at least 2 bosons");
  }
  if (!(scan.ratio_min > 0.0) || !(scan.ratio_max > scan.ratio_min) || scan.ratio_points < 2) {
    throw Error(ErrorCode::InvalidParams, "bad tunneling-ratio scan range");
  }
  auto params_at = [&](double ratio) { return TwoModeParams{0.0, 1.0, ratio, bosons}; };
  auto shape_at = [&](double ratio) {
    return classify_profile(params_at(ratio), phase, scan.gamma_points, scan.threshold);
  };

  const double log_lo = std::log10(scan.ratio_min);
  const double log_hi = std::log10(scan.ratio_max);
  const std::vector<double> exponents = linspace(log_lo, log_hi, scan.ratio_points);

  double below = 0.0;
  double above = 0.0;
  ProfileShape probe;
  bool found = false;
  bool previous_single = false;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const double ratio = std::pow(10.0, exponents[i]);
    const ProfileShape shape = shape_at(ratio);
    if (shape.double_peaked && previous_single) {
      below = std::pow(10.0, exponents[i - 1]);
      above = ratio;
      probe = shape;
      found = true;
      break;
    }
    previous_single = !shape.double_peaked;
  }
  if (!found) {
    throw Error(ErrorCode::NoBifurcationFound,
                "concurrence profile never splits for G01/G1 in the scanned range");
  }

  BifurcationReport report;
  report.probe_ratio = above;
  report.probe_gamma_tilde = probe.gamma_tilde;
  report.peak_gammas_above = probe.peak_gammas;
  while (above - below > scan.bracket_width) {
    const double mid = 0.5 * (below + above);
    if (shape_at(mid).double_peaked) {
      above = mid;
    } else {
      below = mid;
    }
  }
  report.critical_ratio = 0.5 * (below + above);
  const ProfileShape critical = shape_at(report.critical_ratio);
  report.peak_gamma_below = shape_at(below).gamma_tilde;
  report.max_concurrence_at_critical = critical.center_value;
  return report;
}

double asymptotic_limit_fidelity(const TwoModeParams& params, double phase) {
  if (params.bosons != 2) {
    throw Error(ErrorCode::UnsupportedN, "the |1>|1> limit is defined for two bosons only");
  }
  if (params.g0 != 0.0) {
    throw Error(ErrorCode::InvalidParams, "asymptotic check assumes G0 = 0");
  }
  const SpectralDecomposition decomposition = diagonalize(params);
  const FockState psi = fast_state(decomposition, phase, fast_gamma_tilde(decomposition));
  return std::abs(psi.amplitudes()(1));
}

}  // namespace qorth
