#pragma once

#include <Eigen/Dense>

#include <string>

#include "qorth/state.hpp"

namespace qorth {

/// N bosons on two sites with one-body generator
/// g = G0 n0 + G1 n1 + G01 (a0^dag a1 + a1^dag a0).
struct TwoModeParams {
  double g0 = 0.0;
  double g1 = 1.0;
  double g01 = 0.0;
  int bosons = 1;
};

inline constexpr int kMaxBosons = 4096;

/// Throws InvalidParams: N outside [1, kMaxBosons], non-finite coefficients,
/// or g1 <= g0 without tunneling.
void validate(const TwoModeParams& params);

/// Real symmetric tridiagonal matrix; entry (n, n+1) is off_diagonal(n).
struct SymmetricTridiagonal {
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;

  Eigen::Index size() const { return diagonal.size(); }
  Eigen::MatrixXd dense() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  /// Largest absolute row sum; equals the induced infinity and one norms.
  double norm() const;
};

/// The generator in the Fock basis |N-n>|n>, n = 0..N.
SymmetricTridiagonal build_generator(const TwoModeParams& params);

struct AnalyticSpectrum {
  double offset = 0.0;   // A = (N/2)(G0 + G1 - a)
  double spacing = 0.0;  // a = sqrt((G1 - G0)^2 + 4 G01^2)
  Eigen::VectorXd eigenvalues;
};

/// Throws DegenerateSpectrum when a = 0.
AnalyticSpectrum spectrum_analytic(const TwoModeParams& params);

struct SpectralDecomposition {
  double offset = 0.0;
  double spacing = 0.0;
  Eigen::VectorXd eigenvalues;   // ascending
  /// Column k holds the Fock-basis coefficients c_{n,k} of eigenvector k; the
  /// largest-magnitude entry of each column is positive.
  Eigen::MatrixXd eigenvectors;
};

/// Numeric eigendecomposition of build_generator. Throws DegenerateSpectrum
/// or ConvergenceFailure.
SpectralDecomposition diagonalize(const TwoModeParams& params);

/// Equally weighted, equally spaced superposition of generator eigenstates
/// n1, n1 + m, ..., n1 + m (count - 1).
struct TwoModeCombSpec {
  TwoModeParams params;
  int base_index = 0;
  int stride = 1;
  int count = 2;
  Eigen::VectorXd phases;  // empty means all zero
};

struct TwoModeComb {
  PureState g_basis;
  Eigen::VectorXcd fock_amplitudes;  // index n is the |N-n>|n> coefficient
  double gamma_tilde = 0.0;          // 2pi / (count stride a)
};

/// Throws CombConstraintViolation unless 1 <= m(count-1) <= N and the top
/// index stays within N.
void validate(const TwoModeCombSpec& spec);

TwoModeComb comb_state(const TwoModeCombSpec& spec);
TwoModeComb comb_state(const TwoModeCombSpec& spec, const SpectralDecomposition& decomposition);

struct ExtremalStates {
  TwoModeComb fastest;  // |g_0> and |g_N>
  TwoModeComb slowest;  // |g_0> and |g_1>
  std::string fastest_label;
  std::string slowest_label;
};

ExtremalStates extremal_states(const TwoModeParams& params, double phase = 0.0);

struct CombGammaBounds {
  double gamma_l = 0.0;  // 2pi / ((N + m) a)
  double gamma_s = 0.0;  // pi / a
};

/// Throws InvalidStride unless 1 <= m <= N, DegenerateSpectrum for a <= 0.
CombGammaBounds gamma_comb_bounds(int bosons, int stride, double spacing);

/// gamma_tilde with tunneling over gamma_tilde without,
/// [1 + 4 G01^2 / (G1 - G0)^2]^(-1/2). Throws DegenerateLevels for G1 == G0.
double tunneling_ratio(double g0, double g1, double g01);

}  // namespace qorth
