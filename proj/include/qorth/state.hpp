#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace qorth {

/// A normalized pure state written in the eigenbasis of the transformation
/// generator: amplitude sqrt(r_k) exp(i phi_k) on the eigenvector with
/// eigenvalue g_k.
///
/// Only terms with nonzero weight are kept, eigenvalues are strictly
/// increasing, weights sum to one and phases live in [0, 2pi).
class PureState {
 public:
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::VectorXd& phases() const { return phases_; }

  Eigen::Index size() const { return eigenvalues_.size(); }

  /// Lowest contributing eigenvalue.
  double ground() const { return eigenvalues_(0); }

  /// Amplitudes sqrt(r_k) exp(i phi_k) in the generator eigenbasis.
  Eigen::VectorXcd amplitudes() const;

  /// Same eigenvalues and weights with new phases (wrapped into [0, 2pi)).
  PureState with_phases(const Eigen::VectorXd& phases) const;

 private:
  friend PureState make_state(const Eigen::VectorXd&, const Eigen::VectorXd&,
                              const Eigen::VectorXd&);

  PureState() = default;

  Eigen::VectorXd eigenvalues_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd phases_;
};

/// Equally weighted superposition of `count` eigenvectors whose eigenvalues
/// are base, base + spacing, ..., base + (count - 1) spacing.
struct CombSpec {
  int count = 2;
  double base = 0.0;
  double spacing = 1.0;
  Eigen::VectorXd phases;  // empty means all zero

  Eigen::VectorXd eigenvalues() const;
};

struct GStatistics {
  double mean = 0.0;
  double second_moment = 0.0;
  double std = 0.0;
  /// mean - lowest contributing eigenvalue
  double mean_above_ground = 0.0;
};

/// Weight sums within this distance of one are accepted and renormalized.
inline constexpr double kWeightSumTolerance = 1e-9;

/// Validates and normalizes. Zero-weight terms are dropped.
///
/// Throws Error with LengthMismatch, NonMonotoneEigenvalues or
/// NotNormalizable (negative weight, all weights zero, or a sum further than
/// kWeightSumTolerance from one).
PureState make_state(const Eigen::VectorXd& eigenvalues, const Eigen::VectorXd& weights,
                     const Eigen::VectorXd& phases);

/// Throws InvalidCount for count < 2, NonpositiveSpacing for spacing <= 0 and
/// LengthMismatch when a non-empty phase list has the wrong length.
PureState make_comb(const CombSpec& spec);

/// -sum r_k ln r_k, in nats.
double shannon_entropy(const PureState& state);

GStatistics g_statistics(const PureState& state);

/// Wraps an angle into [0, 2pi).
double wrap_phase(double angle);

}  // namespace qorth
