#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>

#include "qorth/evolution.hpp"
#include "qorth/twomode.hpp"

namespace qorth {

/// Normalized state of N bosons on two sites; amplitude n multiplies |N-n>|n>.
class FockState {
 public:
  /// Throws NotNormalizable unless the squared norm is 1 within 1e-12.
  explicit FockState(Eigen::VectorXcd amplitudes);

  int bosons() const { return static_cast<int>(amplitudes_.size()) - 1; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Eigenvalues of the reduced density matrix of mode 0. With the total number
/// fixed, that matrix is diagonal in the occupation of mode 0, so these are
/// just |b_n|^2.
Eigen::VectorXd reduced_mode_weights(const FockState& state);

/// Mode concurrence sqrt(2 (1 - tr rho_0^2)).
double concurrence(const FockState& state);

/// sqrt(2N / (N + 1)), the largest concurrence N bosons can carry.
double concurrence_bound(int bosons);

/// Concurrence of a no-tunneling comb with `count` teeth,
/// sqrt(2 (count - 1) / count). Throws InvalidCount for count < 2.
double comb_concurrence_formula(long long count);

struct GammaConcurrenceCheck {
  double gamma_tilde = 0.0;  // 2pi / (count m a)
  double predicted = 0.0;    // pi C^2 / (2 (<g> - g_1))
  bool agree = false;        // relative difference <= 1e-10
};

/// Throws TunnelingPresent unless G01 == 0.
GammaConcurrenceCheck gamma_concurrence_check(const TwoModeCombSpec& spec);

/// gamma_tilde = pi / (N a) of the fastest comb.
double fast_gamma_tilde(const SpectralDecomposition& decomposition);

/// (e^{-i g_0 gamma}|g_0> + e^{i(phase - g_N gamma)}|g_N>)/sqrt(2) in the Fock basis,
/// with |g_0> and |g_N> signed so that <N,0|g_0> > 0 and <0,N|g_N> > 0.
FockState fast_state(const SpectralDecomposition& decomposition, double phase, double gamma);

/// Concurrence of the evolved fastest state from the eigenvector coefficients
/// alone: sqrt(2 (1 - 1/4 sum_n |c_{n,0} + c_{n,N} e^{i(phase - pi gamma/gamma_tilde)}|^4)).
double fast_concurrence_closed_form(const SpectralDecomposition& decomposition, double phase,
                                    double gamma);

/// Concurrence of the evolved fastest state at each gamma of the grid.
TraceSeries concurrence_fast_trace(const TwoModeParams& params, double phase,
                                   std::span<const double> gamma_grid);

struct ProfileShape {
  double gamma_tilde = 0.0;
  double center_value = 0.0;  // concurrence at gamma_tilde
  bool double_peaked = false;
  std::pair<double, double> peak_gammas{0.0, 0.0};  // best grid point in each half
  double peak_value = 0.0;
};

/// Samples the fastest-state concurrence on `points` (odd) grid points over
/// [0, 2 gamma_tilde]. Double-peaked when the grid maximum beats the value at
/// gamma_tilde by more than `threshold`.
ProfileShape classify_profile(const TwoModeParams& params, double phase, int points = 2001,
                              double threshold = 1e-9);

struct BifurcationScan {
  double ratio_min = 1e-2;
  double ratio_max = 1e2;
  int ratio_points = 81;  // log-spaced
  int gamma_points = 2001;
  double threshold = 1e-9;
  double bracket_width = 1e-4;
};

struct BifurcationReport {
  double critical_ratio = 0.0;  // G01/G1 where the single maximum splits
  double peak_gamma_below = 0.0;
  /// Peaks of the first scanned profile above the critical ratio.
  std::pair<double, double> peak_gammas_above{0.0, 0.0};
  double probe_ratio = 0.0;
  double probe_gamma_tilde = 0.0;
  double max_concurrence_at_critical = 0.0;
};

/// Locates the G01/G1 ratio (G0 = 0) where the concurrence profile of the
/// fastest state turns double-peaked. Throws NoBifurcationFound.
BifurcationReport find_bifurcation(int bosons, double phase = 0.0,
                                   const BifurcationScan& scan = {});

/// |<1,1|psi_fast(gamma_tilde)>| for two bosons with G0 = 0. Throws
/// UnsupportedN for other boson numbers.
double asymptotic_limit_fidelity(const TwoModeParams& params, double phase = 0.0);

}  // namespace qorth
