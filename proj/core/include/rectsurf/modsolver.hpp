#pragma once

// Numerical uniformization of an untwisted equiquadrangle: Im(tau) is the
// conformal module of the quarter domain (0, p1, q1, p2), computed by P1
// finite elements for the mixed Dirichlet/Neumann Laplace problem with
// Richardson extrapolation over mesh levels; mu then follows from the
// genus-1 layer.

#include <string>
#include <vector>

#include "rectsurf/quadrangle.hpp"

namespace rectsurf {

struct SolverConfig {
  int levels = 5;       // mesh level k uses base_n * 2^(k-1) cells per side
  int base_n = 8;
  double tol = 1e-5;    // acceptance threshold on Im tau
  double grading = 1.6; // node clustering exponent toward the q1 corner
  // Zero-angle case: starting arc fraction of the cusp truncation and the
  // number of deepening rounds; the geometric decay of the truncation
  // error over rounds is extrapolated away.
  double cusp_start = 0.90;
  int cusp_rounds = 4;
};

struct SolveResult {
  double im_tau = 0.0;
  double error_estimate = 0.0;
  std::vector<double> energies;  // Dirichlet energy per level
  double mu = 0.0;
};

/// spec.twist must be 0. Throws NotConverged when the level extrapolation
/// spread exceeds cfg.tol.
SolveResult tau_from_quadrangle(const QuadrangleSpec& spec,
                                const SolverConfig& cfg = {});

struct TableRow {
  int angle_n;  // 0 = zero angle
  std::string L_expr;
  double L;
  double mu_table;
  double mu_computed;
  double abs_delta;
  bool pass;
};

struct TableReport {
  std::vector<TableRow> rows;
  int failures = 0;
  std::string csv() const;
};

struct ReferenceRow {
  int angle_n;
  std::string L_expr;
  double L;
  double mu;
};

/// The zero-twist mu tables; angle_n = -1 selects every angle.
std::vector<ReferenceRow> reference_table_rows(int angle_n = -1);

/// Recomputes each table row through the solver; tolerance 1e-3 on |delta|.
TableReport reproduce_mu_table(int angle_n, const SolverConfig& cfg = {});

}  // namespace rectsurf
