#include <cmath>

#include "doctest.h"
#include "rectsurf/elliptic.hpp"
#include "rectsurf/modsolver.hpp"

using namespace rectsurf;

namespace {
constexpr double kPi = 3.14159265358979323846;

SolverConfig fast_cfg() {
  SolverConfig cfg;
  cfg.levels = 4;  // plenty for unit-test tolerances, keeps the suite quick
  return cfg;
}
}  // namespace

TEST_CASE("square quadrangles have module one") {
  for (int n : {3, 4, 6, 8}) {
    double L = std::sqrt(std::cos(kPi / n) + 1.0);
    auto r = tau_from_quadrangle(QuadrangleSpec(L, n), fast_cfg());
    CHECK(std::abs(r.im_tau - 1.0) < 1e-6);
    CHECK(std::abs(r.mu - 2.0) < 1e-5);
  }
  // zero-angle square case (cusp truncation needs the looser gate)
  SolverConfig zc = fast_cfg();
  zc.tol = 1e-4;
  auto r0 = tau_from_quadrangle(QuadrangleSpec(std::sqrt(2.0), 0), zc);
  CHECK(std::abs(r0.mu - 2.0) < 1e-3);
}

TEST_CASE("energies decrease with refinement") {
  auto r = tau_from_quadrangle(QuadrangleSpec(1.5, 4), fast_cfg());
  for (size_t k = 1; k < r.energies.size(); ++k)
    CHECK(r.energies[k] < r.energies[k - 1]);
}

TEST_CASE("extrapolation consistency across level windows") {
  SolverConfig c4 = fast_cfg();
  SolverConfig c5 = fast_cfg();
  c5.levels = 5;
  auto a = tau_from_quadrangle(QuadrangleSpec(1.37, 4), c4);
  auto b = tau_from_quadrangle(QuadrangleSpec(1.37, 4), c5);
  CHECK(std::abs(a.im_tau - b.im_tau) <
        10.0 * (a.error_estimate + b.error_estimate) + 1e-10);
}

TEST_CASE("module duality") {
  // Swapping the Dirichlet and Neumann pairs inverts the module; the swap
  // is the same computation on the reflected spec (L <-> L'), so the
  // product of the two computed modules is 1.
  QuadrangleSpec s(1.4, 4);
  QuadrangleSpec dual(l_prime(s), 4);
  CHECK(std::abs(l_prime(dual) - s.L) < 1e-12);
  auto a = tau_from_quadrangle(s, fast_cfg());
  auto b = tau_from_quadrangle(dual, fast_cfg());
  CHECK(std::abs(a.im_tau * b.im_tau - 1.0) < 2e-5);
}

TEST_CASE("spot table rows") {
  struct Row { int n; double L, mu; };
  for (Row r : {Row{4, std::sqrt(2.0), 4.0 / 3.0},
                Row{4, std::sqrt(6.0) / 2.0, 4.0},
                Row{6, (1.0 + std::sqrt(3.0)) / 2.0, 2.0}}) {
    auto s = tau_from_quadrangle(QuadrangleSpec(r.L, r.n), fast_cfg());
    CHECK(std::abs(s.mu - r.mu) < 1e-3);
  }
  SolverConfig zc = fast_cfg();
  zc.tol = 1e-4;
  auto z = tau_from_quadrangle(QuadrangleSpec(std::sqrt(3.0), 0), zc);
  CHECK(std::abs(z.mu - 9.0 / 8.0) < 1e-3);
}

TEST_CASE("solver guards") {
  CHECK_THROWS_AS(tau_from_quadrangle(QuadrangleSpec(1.4, 4, 0.3), {}),
                  UnsupportedCase);
  SolverConfig strict = fast_cfg();
  strict.levels = 2;
  strict.tol = 1e-12;
  CHECK_THROWS_AS(tau_from_quadrangle(QuadrangleSpec(1.4, 4), strict),
                  NotConverged);
}

TEST_CASE("table report plumbing") {
  SolverConfig cfg;  // default levels: the pi/5 rows need the full accuracy
  auto rep = reproduce_mu_table(5, cfg);  // the three-row angle pi/5 table
  CHECK(rep.rows.size() == 3);
  CHECK(rep.failures == 0);
  std::string csv = rep.csv();
  CHECK(csv.find("angle,L_expr,L,mu_table,mu_computed,abs_delta,status") == 0);
  CHECK(csv.find("pi/5") != std::string::npos);
  CHECK(reference_table_rows(-1).size() == 56);
}
