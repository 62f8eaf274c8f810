#include "qorth/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qorth/detail/golden_section.hpp"
#include "qorth/error.hpp"
#include "qorth/evolution.hpp"

namespace qorth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRefineWidth = 1e-12;
constexpr double kSaturationTolerance = 1e-12;

double survival(const PureState& state, double gamma) { return std::norm(overlap(state, gamma)); }

}  // namespace

double gamma_tilde(const CombSpec& spec) {
  if (spec.count < 2) throw Error(ErrorCode::InvalidCount, "a comb needs at least 2 terms");
  if (!(spec.spacing > 0.0)) throw Error(ErrorCode::NonpositiveSpacing, "comb spacing must be positive");
  return 2.0 * kPi / (spec.spacing * spec.count);
}

double period(const CombSpec& spec) {
  if (!(spec.spacing > 0.0)) throw Error(ErrorCode::NonpositiveSpacing, "comb spacing must be positive");
  return 2.0 * kPi / spec.spacing;
}

BoundsReport bounds(const PureState& state) {
  const GStatistics stats = g_statistics(state);
  if (state.size() < 2 || stats.std == 0.0) {
    throw Error(ErrorCode::ZeroDispersion,
                "orthogonality needs at least two distinct contributing eigenvalues");
  }
  BoundsReport report;
  report.ml_bound = kPi / (2.0 * stats.mean_above_ground);
  report.mt_bound = kPi / (2.0 * stats.std);
  report.gamma_min = std::max(report.ml_bound, report.mt_bound);
  report.saturated = std::abs(report.ml_bound - report.mt_bound) <=
                     kSaturationTolerance * report.gamma_min;
  return report;
}

CombRelations comb_relations(long long count) {
  if (count < 2) throw Error(ErrorCode::InvalidCount, "comb relations need count >= 2");
  const double n = static_cast<double>(count);
  // (n^2 - 1) / n^2 written as (1 - 1/n)(1 + 1/n) to stay accurate for large n
  const double shrink = (1.0 - 1.0 / n) * (1.0 + 1.0 / n);
  CombRelations rel;
  rel.quotient = std::sqrt((n + 1.0) / (3.0 * (n - 1.0)));
  rel.g_ratio = (2.0 / std::sqrt(3.0)) * std::sqrt(shrink);
  rel.geometric_phase_s = kPi * std::sqrt(4.0 * shrink / 3.0);
  return rel;
}

std::optional<double> first_orthogonality(const PureState& state, double gamma_max,
                                          const OrthogonalitySearch& options) {
  if (!(gamma_max > 0.0) || !std::isfinite(gamma_max)) {
    throw Error(ErrorCode::InvalidParams, "gamma_max must be positive and finite");
  }
  if (options.samples_per_bound < 1) {
    throw Error(ErrorCode::InvalidParams, "samples_per_bound must be at least 1");
  }
  const BoundsReport b = bounds(state);
  const double step = b.mt_bound / options.samples_per_bound;
  const auto intervals = static_cast<long long>(std::ceil(gamma_max / step));
  const double width = kRefineWidth * b.gamma_min;

  auto gamma_at = [&](long long i) { return std::min(gamma_max, static_cast<double>(i) * step); };

  double prev = survival(state, 0.0);
  double curr = survival(state, gamma_at(1));
  for (long long i = 1; i <= intervals; ++i) {
    const bool last = (i == intervals);
    const double next = last ? curr : survival(state, gamma_at(i + 1));
    if (curr <= prev && curr <= next) {
      const double lo = gamma_at(i - 1);
      const double hi = gamma_at(last ? i : i + 1);
      const auto best = detail::golden_section_minimize(
          [&](double g) { return survival(state, g); }, lo, hi, width);
      if (best.value < options.tolerance && best.x > 0.0 && best.x <= gamma_max) {
        return best.x;
      }
      if (curr < options.tolerance) return gamma_at(i);
    }
    prev = curr;
    curr = next;
  }
  return std::nullopt;
}

std::complex<double> inner_product(const PureState& a, const PureState& b) {
  if (a.size() != b.size() || a.eigenvalues() != b.eigenvalues()) {
    throw Error(ErrorCode::LengthMismatch, "states must share the same eigenvalue list");
  }
  return a.amplitudes().dot(b.amplitudes());
}

OrthonormalFamily orthonormal_family(const CombSpec& spec) {
  const PureState comb = make_comb(spec);
  const double step = gamma_tilde(spec);
  OrthonormalFamily family;
  family.states.reserve(spec.count);
  for (int m = 0; m < spec.count; ++m) family.states.push_back(evolve(comb, m * step));

  family.gram.resize(spec.count, spec.count);
  for (int n = 0; n < spec.count; ++n) {
    for (int m = 0; m < spec.count; ++m) {
      family.gram(n, m) = inner_product(family.states[n], family.states[m]);
    }
  }
  return family;
}

}  // namespace qorth
