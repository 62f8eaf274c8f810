#include "qorth/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qorth/error.hpp"

namespace qorth {

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  // fmod of a tiny negative value can round up to exactly 2pi
  if (wrapped >= two_pi) wrapped = 0.0;
  return wrapped;
}

Eigen::VectorXcd PureState::amplitudes() const {
  Eigen::VectorXcd out(size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    out(k) = std::polar(std::sqrt(weights_(k)), phases_(k));
  }
  return out;
}

PureState PureState::with_phases(const Eigen::VectorXd& phases) const {
  if (phases.size() != size()) {
    throw Error(ErrorCode::LengthMismatch, "phase list must match the number of terms");
  }
  PureState out = *this;
  out.phases_ = phases.unaryExpr([](double p) { return wrap_phase(p); });
  return out;
}

PureState make_state(const Eigen::VectorXd& eigenvalues, const Eigen::VectorXd& weights,
                     const Eigen::VectorXd& phases) {
  const Eigen::Index n = eigenvalues.size();
  if (weights.size() != n || phases.size() != n) {
    throw Error(ErrorCode::LengthMismatch,
                "eigenvalues, weights and phases must have equal lengths (got " +
                    std::to_string(n) + ", " + std::to_string(weights.size()) + ", " +
                    std::to_string(phases.size()) + ")");
  }
  if (n == 0) {
    throw Error(ErrorCode::NotNormalizable, "state has no terms");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!std::isfinite(eigenvalues(k)) || !std::isfinite(weights(k)) ||
        !std::isfinite(phases(k))) {
      throw Error(ErrorCode::NotNormalizable, "non-finite entry at index " + std::to_string(k));
    }
    if (k > 0 && !(eigenvalues(k) > eigenvalues(k - 1))) {
      throw Error(ErrorCode::NonMonotoneEigenvalues,
                  "eigenvalues must be strictly increasing (index " + std::to_string(k) + ")");
    }
    if (weights(k) < 0.0) {
      throw Error(ErrorCode::NotNormalizable, "negative weight at index " + std::to_string(k));
    }
  }

  const double sum = weights.sum();
  if (sum == 0.0 || std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::NotNormalizable,
                "weights sum to " + std::to_string(sum) + ", expected 1");
  }

  const auto kept = (weights.array() > 0.0).count();
  PureState state;
  state.eigenvalues_.resize(kept);
  state.weights_.resize(kept);
  state.phases_.resize(kept);
  Eigen::Index j = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (weights(k) == 0.0) continue;
    state.eigenvalues_(j) = eigenvalues(k);
    state.weights_(j) = weights(k) / sum;
    state.phases_(j) = wrap_phase(phases(k));
    ++j;
  }
  return state;
}

Eigen::VectorXd CombSpec::eigenvalues() const {
  Eigen::VectorXd g(count);
  for (int k = 0; k < count; ++k) g(k) = base + k * spacing;
  return g;
}

PureState make_comb(const CombSpec& spec) {
  if (spec.count < 2) {
    throw Error(ErrorCode::InvalidCount,
                "a comb needs at least 2 terms; a single eigenstate never becomes orthogonal");
  }
  if (!(spec.spacing > 0.0) || !std::isfinite(spec.spacing)) {
    throw Error(ErrorCode::NonpositiveSpacing, "comb spacing must be positive");
  }
  Eigen::VectorXd phases = spec.phases;
  if (phases.size() == 0) {
    phases = Eigen::VectorXd::Zero(spec.count);
  } else if (phases.size() != spec.count) {
    throw Error(ErrorCode::LengthMismatch, "comb phase list must have one entry per term");
  }
  const Eigen::VectorXd weights = Eigen::VectorXd::Constant(spec.count, 1.0 / spec.count);
  return make_state(spec.eigenvalues(), weights, phases);
}

double shannon_entropy(const PureState& state) {
  double entropy = 0.0;
  for (double r : state.weights()) entropy -= r * std::log(r);
  // a single term gives -1 * ln 1 = -0.0
  return entropy == 0.0 ? 0.0 : entropy;
}

GStatistics g_statistics(const PureState& state) {
  const auto& g = state.eigenvalues();
  const auto& r = state.weights();
  GStatistics s;
  s.mean = r.dot(g);
  s.second_moment = r.dot(g.cwiseProduct(g));
  // centered sum avoids the cancellation in <g^2> - <g>^2
  const double variance = r.dot((g.array() - s.mean).square().matrix());
  s.std = std::sqrt(variance);
  s.mean_above_ground = r.dot((g.array() - state.ground()).matrix());
  return s;
}

}  // namespace qorth
