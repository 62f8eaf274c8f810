#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "qorth/state.hpp"

namespace qorth {

/// Survival probability below which a state counts as orthogonal.
inline constexpr double kOrthogonalityTolerance = 1e-10;

/// Margolus-Levitin and Mandelstam-Tamm lower bounds on the amount of
/// transformation needed to reach an orthogonal state.
struct BoundsReport {
  double ml_bound = 0.0;   // pi / (2 (<g> - g_1))
  double mt_bound = 0.0;   // pi / (2 sigma)
  double gamma_min = 0.0;  // max of the two
  bool saturated = false;  // both bounds coincide
};

/// Quantities of a comb that depend only on its number of terms.
struct CombRelations {
  double quotient = 0.0;           // sigma / (<g> - g_1)
  double g_ratio = 0.0;            // gamma_tilde / gamma_min
  double geometric_phase_s = 0.0;  // 2 sigma gamma_tilde
};

/// First orthogonality parameter of a comb, 2pi / (spacing * count): the
/// rotating vectors first form a regular polygon.
double gamma_tilde(const CombSpec& spec);

/// Throws ZeroDispersion for a single-term state.
BoundsReport bounds(const PureState& state);

/// Throws InvalidCount for count < 2.
CombRelations comb_relations(long long count);

struct OrthogonalitySearch {
  /// Scan step as a fraction of the Mandelstam-Tamm bound.
  int samples_per_bound = 50;
  double tolerance = kOrthogonalityTolerance;
};

/// Smallest gamma in (0, gamma_max] at which the survival probability drops
/// below the tolerance, or nullopt.
///
/// Scans survival on a uniform grid, then refines each grid-local minimum by
/// golden-section search and returns the first refined minimum that qualifies.
/// Throws ZeroDispersion for a single-term state and InvalidParams for a
/// non-positive range.
std::optional<double> first_orthogonality(const PureState& state, double gamma_max,
                                          const OrthogonalitySearch& options = {});

struct OrthonormalFamily {
  std::vector<PureState> states;  // comb evolved by m * gamma_tilde, m = 0..count-1
  Eigen::MatrixXcd gram;          // gram(n, m) = <psi_n|psi_m>
};

OrthonormalFamily orthonormal_family(const CombSpec& spec);

/// Recurrence period count * gamma_tilde = 2pi / spacing.
double period(const CombSpec& spec);

/// <a|b> for two states over the same eigenvalue list.
std::complex<double> inner_product(const PureState& a, const PureState& b);

}  // namespace qorth
