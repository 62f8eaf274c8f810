#include "qorth/evolution.hpp"

#include <cmath>
#include <string>

#include "qorth/error.hpp"

namespace qorth {

namespace {

constexpr Eigen::Index kCompensatedSumThreshold = 10000;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

PureState evolve(const PureState& state, double gamma) {
  Eigen::VectorXd phases = state.phases() - gamma * state.eigenvalues();
  return state.with_phases(phases);
}

std::complex<double> overlap(const PureState& state, double gamma) {
  const auto& g = state.eigenvalues();
  const auto& r = state.weights();
  if (state.size() <= kCompensatedSumThreshold) {
    double re = 0.0;
    double im = 0.0;
    for (Eigen::Index k = 0; k < state.size(); ++k) {
      const double theta = g(k) * gamma;
      re += r(k) * std::cos(theta);
      im += r(k) * std::sin(theta);
    }
    return {re, im};
  }
  KahanSum re;
  KahanSum im;
  for (Eigen::Index k = 0; k < state.size(); ++k) {
    const double theta = g(k) * gamma;
    re.add(r(k) * std::cos(theta));
    im.add(r(k) * std::sin(theta));
  }
  return {re.sum, im.sum};
}

Distinguishability distinguishability(const PureState& state, double gamma) {
  const double survival = std::norm(overlap(state, gamma));
  return {survival, 1.0 - survival};
}

PhasorDiagram phasor_diagram(const PureState& state, double gamma) {
  PhasorDiagram diagram;
  diagram.gamma = gamma;
  diagram.vectors.resize(2, state.size());
  for (Eigen::Index k = 0; k < state.size(); ++k) {
    const double theta = state.eigenvalues()(k) * gamma;
    diagram.vectors.col(k) = state.weights()(k) * Eigen::Vector2d(std::cos(theta), std::sin(theta));
  }
  diagram.resultant = diagram.vectors.rowwise().sum();
  return diagram;
}

std::string_view to_string(Quantity quantity) {
  switch (quantity) {
    case Quantity::Survival: return "survival";
    case Quantity::RelativeEntropy: return "relative_entropy";
    case Quantity::ResultantNorm: return "resultant_norm";
    case Quantity::Concurrence: return "concurrence";
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view name) {
  for (auto q : {Quantity::Survival, Quantity::RelativeEntropy, Quantity::ResultantNorm,
                 Quantity::Concurrence}) {
    if (name == to_string(q)) return q;
  }
  throw Error(ErrorCode::UnsupportedQuantity, "unknown quantity '" + std::string(name) + "'");
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "gamma grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      throw Error(ErrorCode::NonMonotoneGrid, "gamma grid contains a non-finite value");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::NonMonotoneGrid,
                  "gamma grid must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

TraceSeries trace_series(const PureState& state, std::span<const double> gamma_grid,
                         Quantity quantity) {
  check_grid(gamma_grid);
  if (quantity == Quantity::Concurrence) {
    throw Error(ErrorCode::UnsupportedQuantity,
                "concurrence needs a two-mode Fock representation");
  }
  TraceSeries series;
  series.quantity = quantity;
  series.gammas.assign(gamma_grid.begin(), gamma_grid.end());
  series.values.reserve(gamma_grid.size());
  for (double gamma : gamma_grid) {
    const auto z = overlap(state, gamma);
    switch (quantity) {
      case Quantity::Survival: series.values.push_back(std::norm(z)); break;
      case Quantity::RelativeEntropy: series.values.push_back(1.0 - std::norm(z)); break;
      case Quantity::ResultantNorm: series.values.push_back(std::abs(z)); break;
      case Quantity::Concurrence: break;
    }
  }
  return series;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out;
  if (points <= 0) return out;
  out.reserve(points);
  if (points == 1) {
    out.push_back(lo);
    return out;
  }
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out.push_back(lo + i * step);
  out.back() = hi;
  return out;
}

}  // namespace qorth
