#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qorth/entanglement.hpp"
#include "qorth/error.hpp"

using namespace qorth;
using std::numbers::pi;

namespace {

FockState random_fock(std::mt19937_64& rng, int bosons) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXcd v(bosons + 1);
  for (auto& z : v) z = {n(rng), n(rng)};
  v.normalize();
  return FockState(v);
}

// Reduced density matrix of mode 0 built from the full (N+1)^2 product space
// by an explicit partial trace. Test-only oracle for the diagonal shortcut.
Eigen::MatrixXcd partial_trace_mode0(const FockState& s) {
  const int n_max = s.bosons();
  const int dim = n_max + 1;
  // |psi> = sum_n b_n |N-n>_0 |n>_1 ; index (n0, n1) -> n0 * dim + n1
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim * dim);
  for (int n = 0; n <= n_max; ++n) psi((n_max - n) * dim + n) = s.amplitudes()(n);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int k = 0; k < dim; ++k) rho(a, b) += psi(a * dim + k) * std::conj(psi(b * dim + k));
  return rho;
}

}  // namespace

TEST_CASE("FockState validates normalization") {
  CHECK_NOTHROW(FockState(Eigen::Vector3cd(1, 0, 0)));
  CHECK_THROWS_AS(FockState(Eigen::Vector3cd(1, 1, 0)), Error);
  CHECK(FockState(Eigen::Vector3cd(0, 1, 0)).bosons() == 2);
}

TEST_CASE("reduced mode weights") {
  CHECK(reduced_mode_weights(FockState(Eigen::Vector3cd(1, 0, 0))) == Eigen::Vector3d(1, 0, 0));
  const double h = 1 / std::sqrt(2.0);
  const Eigen::VectorXd w = reduced_mode_weights(FockState(Eigen::Vector3cd(h, 0, h)));
  CHECK(w(0) == doctest::Approx(0.5));
  CHECK(w(1) == 0.0);
  CHECK(w(2) == doctest::Approx(0.5));
  const Eigen::VectorXd u = reduced_mode_weights(FockState(Eigen::VectorXcd::Constant(5, 1 / std::sqrt(5.0))));
  CHECK((u.array() - 0.2).abs().maxCoeff() < 1e-15);
}

TEST_CASE("reduced density matrix is diagonal within a fixed-N sector") {
  std::mt19937_64 rng(47);
  for (int n_max = 1; n_max <= 6; ++n_max) {
    for (int trial = 0; trial < 20; ++trial) {
      const FockState s = random_fock(rng, n_max);
      const Eigen::MatrixXcd rho = partial_trace_mode0(s);
      Eigen::MatrixXcd off = rho;
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() < 1e-15);
      // rho_0 diagonal is indexed by n0 = N - n
      const Eigen::VectorXd w = reduced_mode_weights(s);
      for (int n = 0; n <= n_max; ++n) CHECK(std::abs(rho(n_max - n, n_max - n).real() - w(n)) < 1e-15);
      const double purity = (rho * rho).trace().real();
      CHECK(std::abs(concurrence(s) - std::sqrt(2 * (1 - purity))) < 1e-12);
    }
  }
}

TEST_CASE("concurrence examples") {
  CHECK(concurrence(FockState(Eigen::Vector3cd(0, 1, 0))) == 0.0);
  const double h = 1 / std::sqrt(2.0);
  CHECK(concurrence(FockState(Eigen::Vector3cd(h, 0, h))) == doctest::Approx(1.0).epsilon(1e-15));
  const double t = 1 / std::sqrt(3.0);
  CHECK(concurrence(FockState(Eigen::Vector3cd(t, t, t))) == doctest::Approx(std::sqrt(4.0 / 3)).epsilon(1e-15));
  CHECK(std::sqrt(4.0 / 3) == doctest::Approx(1.1547).epsilon(1e-4));
}

TEST_CASE("concurrence respects its upper bound") {
  std::mt19937_64 rng(53);
  for (int n_max = 1; n_max <= 8; ++n_max) {
    const double bound = concurrence_bound(n_max);
    for (int trial = 0; trial < 2000; ++trial) {
      CHECK(concurrence(random_fock(rng, n_max)) <= bound + 1e-15);
    }
    // uniform amplitudes saturate it
    const FockState flat(Eigen::VectorXcd::Constant(n_max + 1, 1 / std::sqrt(n_max + 1.0)));
    CHECK(concurrence(flat) == doctest::Approx(bound).epsilon(1e-14));
  }
}

TEST_CASE("concurrence is invariant under global phase and free evolution") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const int n_max = 1 + trial % 8;
    const FockState s = random_fock(rng, n_max);
    const double c = concurrence(s);
    CHECK(std::abs(concurrence(FockState(s.amplitudes() * std::polar(1.0, 1.234))) - c) < 1e-14);

    // G01 = 0: eigenstates are Fock states, evolution only rephases amplitudes
    const TwoModeParams p{0.3, 1.7, 0.0, n_max};
    const SpectralDecomposition d = diagonalize(p);
    Eigen::VectorXcd evolved = s.amplitudes();
    for (int n = 0; n <= n_max; ++n) evolved(n) *= std::polar(1.0, -d.eigenvalues(n) * 2.71);
    CHECK(std::abs(concurrence(FockState(evolved)) - c) < 1e-14);
  }
}

TEST_CASE("comb concurrence formula") {
  CHECK(comb_concurrence_formula(2) == 1.0);
  CHECK(comb_concurrence_formula(3) == doctest::Approx(std::sqrt(4.0 / 3)));
  CHECK(std::abs(comb_concurrence_formula(100'000'000) - std::sqrt(2.0)) < 1e-7);
  CHECK_THROWS_AS(comb_concurrence_formula(1), Error);
  for (int n = 2; n < 50; ++n) CHECK(comb_concurrence_formula(n + 1) > comb_concurrence_formula(n));
}

TEST_CASE("no-tunneling comb concurrence matches the closed form") {
  for (int n_max = 1; n_max <= 12; ++n_max) {
    const TwoModeParams p{0.0, 1.0, 0.0, n_max};
    const SpectralDecomposition d = diagonalize(p);
    for (int m = 1; m <= n_max; ++m)
      for (int count = 2; m * (count - 1) <= n_max; ++count)
        for (int n1 = 0; n1 + m * (count - 1) <= n_max; ++n1) {
          const TwoModeComb c = comb_state({p, n1, m, count, {}}, d);
          CHECK(std::abs(concurrence(FockState(c.fock_amplitudes)) - comb_concurrence_formula(count)) < 1e-12);
        }
  }
}

TEST_CASE("gamma-concurrence relation") {
  const TwoModeParams p{0.0, 1.0, 0.0, 4};
  CHECK(gamma_concurrence_check({p, 0, 4, 2, {}}).agree);
  const GammaConcurrenceCheck five = gamma_concurrence_check({p, 0, 1, 5, {}});
  CHECK(five.agree);
  CHECK(five.gamma_tilde == doctest::Approx(2 * pi / 5));
  try {
    gamma_concurrence_check({{0.0, 1.0, 0.2, 4}, 0, 1, 2, {}});
    FAIL("expected TunnelingPresent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TunnelingPresent);
  }
}

TEST_CASE("fast concurrence trace") {
  for (int n_max : {1, 2, 5}) {
    const TwoModeParams p{0.0, 1.0, 0.0, n_max};
    const double gt = fast_gamma_tilde(diagonalize(p));
    const TraceSeries t = concurrence_fast_trace(p, 0.4, linspace(0.0, 2 * gt, 101));
    for (double v : t.values) CHECK(std::abs(v - 1.0) < 1e-14);
  }

  const TwoModeParams critical{0.0, 1.0, 0.3535, 2};
  const SpectralDecomposition d = diagonalize(critical);
  const double gt = fast_gamma_tilde(d);
  const std::vector<double> at{gt};
  CHECK(std::abs(concurrence_fast_trace(critical, 0.0, at).values[0] - 2 / std::sqrt(3.0)) < 1e-2);

  const TwoModeParams strong{0.0, 1.0, 1e3, 2};
  const std::vector<double> at_strong{fast_gamma_tilde(diagonalize(strong))};
  CHECK(concurrence_fast_trace(strong, 0.0, at_strong).values[0] < 0.05);
}

TEST_CASE("direct and closed-form fast concurrence agree") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const TwoModeParams p{u(rng), 1.0 + u(rng), 2.0 * u(rng), 1 + trial % 8};
    const double phase = 2 * pi * u(rng);
    const SpectralDecomposition d = diagonalize(p);
    const double gt = fast_gamma_tilde(d);
    for (double g : linspace(0.0, 2 * gt, 201)) {
      CHECK(std::abs(concurrence(fast_state(d, phase, g)) - fast_concurrence_closed_form(d, phase, g)) < 1e-10);
    }
  }
}

TEST_CASE("fast concurrence profile is symmetric about gamma_tilde for zero phase") {
  for (double ratio : {0.05, 0.3, 1.0, 7.0}) {
    const TwoModeParams p{0.0, 1.0, ratio, 3};
    const double gt = fast_gamma_tilde(diagonalize(p));
    const auto grid = linspace(0.0, 2 * gt, 401);
    const TraceSeries t = concurrence_fast_trace(p, 0.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(t.values[i] - t.values[grid.size() - 1 - i]) < 1e-10);
    }
  }
}

TEST_CASE("profile classification") {
  const ProfileShape weak = classify_profile({0.0, 1.0, 0.1, 2}, 0.0);
  CHECK_FALSE(weak.double_peaked);
  CHECK(weak.peak_gammas.first == doctest::Approx(weak.gamma_tilde));

  const ProfileShape strong = classify_profile({0.0, 1.0, 1.0, 2}, 0.0);
  CHECK(strong.double_peaked);
  CHECK(strong.peak_gammas.first < strong.gamma_tilde);
  CHECK(strong.peak_gammas.first + strong.peak_gammas.second == doctest::Approx(2 * strong.gamma_tilde).epsilon(1e-3));

  CHECK_THROWS_AS(classify_profile({0.0, 1.0, 1.0, 2}, 0.0, 100), Error);
}

TEST_CASE("bifurcation for two bosons") {
  const BifurcationReport r = find_bifurcation(2, 0.0);
  CHECK(std::abs(r.critical_ratio - 0.3535) < 0.01);
  CHECK(r.max_concurrence_at_critical == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-3));
  CHECK(r.peak_gammas_above.first < r.probe_gamma_tilde);
  CHECK(r.peak_gammas_above.first + r.peak_gammas_above.second ==
        doctest::Approx(2 * r.probe_gamma_tilde).epsilon(1e-3));

  CHECK_THROWS_AS(find_bifurcation(1), Error);
  BifurcationScan narrow;
  narrow.ratio_min = 1e-2;
  narrow.ratio_max = 1e-1;
  narrow.ratio_points = 5;
  try {
    find_bifurcation(2, 0.0, narrow);
    FAIL("expected NoBifurcationFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoBifurcationFound);
  }
}

TEST_CASE("asymptotic fidelity with |1>|1>") {
  CHECK(asymptotic_limit_fidelity({0.0, 1.0, 1e3, 2}) >= 0.999);
  CHECK(asymptotic_limit_fidelity({0.0, 1.0, 0.0, 2}) < 1e-15);
  const double f10 = asymptotic_limit_fidelity({0.0, 1.0, 10.0, 2});
  const double f100 = asymptotic_limit_fidelity({0.0, 1.0, 100.0, 2});
  const double f1000 = asymptotic_limit_fidelity({0.0, 1.0, 1000.0, 2});
  CHECK(f10 < f100);
  CHECK(f100 < f1000);
  CHECK_THROWS_AS(asymptotic_limit_fidelity({0.0, 1.0, 1.0, 3}), Error);
}
