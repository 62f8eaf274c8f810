#include "qorth/twomode.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qorth/error.hpp"

namespace qorth {

namespace {

constexpr double kPi = std::numbers::pi;
// columns whose leading magnitudes agree this closely are treated as ties
constexpr double kSignTieTolerance = 1e-9;

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    auto col = vectors.col(k);
    const double top = col.cwiseAbs().maxCoeff();
    for (Eigen::Index n = 0; n < col.size(); ++n) {
      if (std::abs(col(n)) >= top * (1.0 - kSignTieTolerance)) {
        if (col(n) < 0.0) col = -col;
        break;
      }
    }
  }
}

}  // namespace

void validate(const TwoModeParams& params) {
  if (params.bosons < 1 || params.bosons > kMaxBosons) {
    throw Error(ErrorCode::InvalidParams,
                "boson number must lie in [1, " + std::to_string(kMaxBosons) + "], got " +
                    std::to_string(params.bosons));
  }
  if (!std::isfinite(params.g0) || !std::isfinite(params.g1) || !std::isfinite(params.g01)) {
    throw Error(ErrorCode::InvalidParams, "generator coefficients must be finite");
  }
  if (params.g01 == 0.0 && !(params.g1 > params.g0)) {
    throw Error(ErrorCode::InvalidParams, "without tunneling the levels must satisfy G1 > G0");
  }
}

Eigen::MatrixXd SymmetricTridiagonal::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.diagonal() = diagonal;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off_diagonal(i);
    m(i + 1, i) = off_diagonal(i);
  }
  return m;
}

Eigen::VectorXd SymmetricTridiagonal::apply(const Eigen::VectorXd& v) const {
  const Eigen::Index n = size();
  Eigen::VectorXd out = diagonal.cwiseProduct(v);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out(i) += off_diagonal(i) * v(i + 1);
    out(i + 1) += off_diagonal(i) * v(i);
  }
  return out;
}

double SymmetricTridiagonal::norm() const {
  const Eigen::Index n = size();
  double best = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::abs(diagonal(i));
    if (i > 0) row += std::abs(off_diagonal(i - 1));
    if (i + 1 < n) row += std::abs(off_diagonal(i));
    best = std::max(best, row);
  }
  return best;
}

SymmetricTridiagonal build_generator(const TwoModeParams& params) {
  validate(params);
  const int n_max = params.bosons;
  SymmetricTridiagonal h;
  h.diagonal.resize(n_max + 1);
  h.off_diagonal.resize(n_max);
  for (int n = 0; n <= n_max; ++n) {
    // G0 n0 + G1 n1 on |N-n>|n>
    h.diagonal(n) = params.g0 * (n_max - n) + params.g1 * n;
  }
  for (int n = 1; n <= n_max; ++n) {
    // a0^dag a1 |N-n>|n> = sqrt(n (N-n+1)) |N-n+1>|n-1>
    h.off_diagonal(n - 1) = params.g01 * std::sqrt(static_cast<double>(n) * (n_max - n + 1));
  }
  return h;
}

AnalyticSpectrum spectrum_analytic(const TwoModeParams& params) {
  validate(params);
  AnalyticSpectrum s;
  s.spacing = std::hypot(params.g1 - params.g0, 2.0 * params.g01);
  if (!(s.spacing > 0.0)) {
    throw Error(ErrorCode::DegenerateSpectrum, "G1 == G0 and G01 == 0 give a degenerate spectrum");
  }
  s.offset = 0.5 * params.bosons * (params.g0 + params.g1 - s.spacing);
  s.eigenvalues.resize(params.bosons + 1);
  for (int n = 0; n <= params.bosons; ++n) s.eigenvalues(n) = s.offset + n * s.spacing;
  return s;
}

SpectralDecomposition diagonalize(const TwoModeParams& params) {
  const AnalyticSpectrum analytic = spectrum_analytic(params);
  const SymmetricTridiagonal h = build_generator(params);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(h.diagonal, h.off_diagonal, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "tridiagonal eigensolver did not converge");
  }

  SpectralDecomposition out;
  out.offset = analytic.offset;
  out.spacing = analytic.spacing;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  fix_signs(out.eigenvectors);
  return out;
}

void validate(const TwoModeCombSpec& spec) {
  validate(spec.params);
  const int n_max = spec.params.bosons;
  if (spec.count < 2) {
    throw Error(ErrorCode::CombConstraintViolation, "a comb needs at least 2 teeth");
  }
  if (spec.stride < 1) {
    throw Error(ErrorCode::CombConstraintViolation, "comb stride must be at least 1");
  }
  const long long length = static_cast<long long>(spec.stride) * (spec.count - 1);
  if (length > n_max) {
    throw Error(ErrorCode::CombConstraintViolation,
                "stride * (count - 1) = " + std::to_string(length) + " exceeds N = " +
                    std::to_string(n_max));
  }
  if (spec.base_index < 0 || spec.base_index + length > n_max) {
    throw Error(ErrorCode::CombConstraintViolation, "comb teeth fall outside 0..N");
  }
  if (spec.phases.size() != 0 && spec.phases.size() != spec.count) {
    throw Error(ErrorCode::LengthMismatch, "comb phase list must have one entry per tooth");
  }
}

TwoModeComb comb_state(const TwoModeCombSpec& spec) {
  validate(spec);
  return comb_state(spec, diagonalize(spec.params));
}

TwoModeComb comb_state(const TwoModeCombSpec& spec, const SpectralDecomposition& decomposition) {
  validate(spec);
  if (decomposition.eigenvalues.size() != spec.params.bosons + 1) {
    throw Error(ErrorCode::LengthMismatch, "decomposition does not match the boson number");
  }
  const Eigen::VectorXd phases =
      spec.phases.size() == 0 ? Eigen::VectorXd::Zero(spec.count) : spec.phases;

  Eigen::VectorXd g(spec.count);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(spec.count));
  Eigen::VectorXcd fock = Eigen::VectorXcd::Zero(spec.params.bosons + 1);
  for (int j = 0; j < spec.count; ++j) {
    const int index = spec.base_index + j * spec.stride;
    g(j) = decomposition.eigenvalues(index);
    fock += std::polar(amplitude, phases(j)) * decomposition.eigenvectors.col(index).cast<std::complex<double>>();
  }

  TwoModeComb comb{
      make_state(g, Eigen::VectorXd::Constant(spec.count, 1.0 / spec.count), phases),
      std::move(fock),
      2.0 * kPi / (spec.count * spec.stride * decomposition.spacing),
  };
  return comb;
}

ExtremalStates extremal_states(const TwoModeParams& params, double phase) {
  validate(params);
  const SpectralDecomposition decomposition = diagonalize(params);
  const Eigen::Vector2d phases(0.0, phase);
  const int n_max = params.bosons;

  ExtremalStates out{
      comb_state({params, 0, n_max, 2, phases}, decomposition),
      comb_state({params, 0, 1, 2, phases}, decomposition),
      {},
      {},
  };
  const std::string n = std::to_string(n_max);
  if (params.g01 == 0.0) {
    out.fastest_label = "(|" + n + ">|0> + e^{i phi}|0>|" + n + ">)/sqrt(2): " + n +
                        "-qubit GHZ state (|0...0> + e^{i phi}|1...1>)/sqrt(2)";
    out.slowest_label = "(|" + n + ">|0> + e^{i phi}|" + std::to_string(n_max - 1) +
                        ">|1>)/sqrt(2): (|0...0> + e^{i phi}|W_" + n + ">)/sqrt(2)";
  } else {
    out.fastest_label = "(|g_0> + e^{i phi}|g_" + n + ">)/sqrt(2) with tunneling";
    out.slowest_label = "(|g_0> + e^{i phi}|g_1>)/sqrt(2) with tunneling";
  }
  return out;
}

CombGammaBounds gamma_comb_bounds(int bosons, int stride, double spacing) {
  if (stride < 1 || stride > bosons) {
    throw Error(ErrorCode::InvalidStride, "stride must lie in [1, N]");
  }
  if (!(spacing > 0.0)) throw Error(ErrorCode::DegenerateSpectrum, "level spacing must be positive");
  return {2.0 * kPi / ((bosons + stride) * spacing), kPi / spacing};
}

double tunneling_ratio(double g0, double g1, double g01) {
  if (g1 == g0) {
    throw Error(ErrorCode::DegenerateLevels, "ratio undefined for G1 == G0");
  }
  return 1.0 / std::hypot(1.0, 2.0 * g01 / (g1 - g0));
}

}  // namespace qorth
