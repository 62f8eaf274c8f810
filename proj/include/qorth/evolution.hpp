#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qorth/state.hpp"

namespace qorth {

/// Applies exp(-i g gamma): phases become phi_k - g_k gamma (mod 2pi).
PureState evolve(const PureState& state, double gamma);

/// <psi_gamma|psi_0> = sum_k r_k exp(i g_k gamma).
///
/// Independent of the initial phases. Uses compensated summation for large
/// expansions.
std::complex<double> overlap(const PureState& state, double gamma);

struct Distinguishability {
  double survival = 1.0;          // |<psi_gamma|psi_0>|^2
  double relative_entropy = 0.0;  // 1 - survival
};

Distinguishability distinguishability(const PureState& state, double gamma);

/// Rotating-vector picture of the overlap: term k is a planar vector of length
/// r_k at angle g_k gamma, and the overlap is their resultant.
struct PhasorDiagram {
  Eigen::Matrix2Xd vectors;  // one column per term
  Eigen::Vector2d resultant = Eigen::Vector2d::Zero();
  double gamma = 0.0;
};

PhasorDiagram phasor_diagram(const PureState& state, double gamma);

enum class Quantity { Survival, RelativeEntropy, ResultantNorm, Concurrence };

std::string_view to_string(Quantity quantity);
/// Accepts "survival", "relative_entropy", "resultant_norm" and "concurrence".
Quantity parse_quantity(std::string_view name);

struct TraceSeries {
  std::vector<double> gammas;
  std::vector<double> values;
  Quantity quantity = Quantity::Survival;
};

/// Throws EmptyGrid or NonMonotoneGrid for a bad grid.
void check_grid(std::span<const double> grid);

/// Evaluates `quantity` at every grid point. Concurrence is not defined for a
/// bare generator-basis state and raises UnsupportedQuantity; see
/// concurrence_fast_trace for the two-mode case.
TraceSeries trace_series(const PureState& state, std::span<const double> gamma_grid,
                         Quantity quantity);

/// `points` evenly spaced values covering [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, int points);

}  // namespace qorth
