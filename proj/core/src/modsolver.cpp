#include "rectsurf/modsolver.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "rectsurf/elliptic.hpp"

namespace rectsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Patch {
  // Coons patch of the quarter domain with corners 0, p1, q1, p2 and the
  // two circular-arc sides; the zero-angle case truncates the cusp and
  // closes it with a chord folded into the top curve.
  double r1, r2;             // p1, p2 radii
  double c1, R1;             // right edge circle (center c1 on R)
  double c2, R2;             // top edge circle (center i c2)
  double th_right_end;       // arc parameter of the right curve endpoint
  double th_top_end;
  Complex corner_q;          // q1 or the truncated corner
  bool truncated = false;
  Complex chord_from;        // top-arc truncation point (chord start)

  Complex bottom(double x) const { return {x * r1, 0.0}; }
  Complex left(double y) const { return {0.0, y * r2}; }
  Complex right(double y) const {
    if (!truncated) {
      double phi = kPi + y * (th_right_end - kPi);
      return Complex(c1, 0.0) + R1 * std::polar(1.0, phi);
    }
    // Arc for y in [0, 0.85], then the insulating chord that caps the cusp.
    const double split = 0.85;
    if (y <= split) {
      double phi = kPi + (y / split) * (th_right_end - kPi);
      return Complex(c1, 0.0) + R1 * std::polar(1.0, phi);
    }
    double s = (y - split) / (1.0 - split);
    return chord_from + s * (corner_q - chord_from);
  }
  Complex top(double x) const {
    double phi = -kPi / 2.0 + x * (th_top_end + kPi / 2.0);
    return Complex(0.0, c2) + R2 * std::polar(1.0, phi);
  }
  Complex map(double x, double y) const {
    Complex p = (1.0 - y) * bottom(x) + y * top(x) + (1.0 - x) * left(y) +
                x * right(y);
    Complex bilinear = (1.0 - x) * (1.0 - y) * Complex(0.0) +
                       x * (1.0 - y) * Complex(r1, 0.0) +
                       x * y * corner_q + (1.0 - x) * y * Complex(0.0, r2);
    return p - bilinear;
  }
};

Patch make_patch(const QuadrangleSpec& spec, double cusp_fraction) {
  Patch pa;
  pa.r1 = std::tanh(std::acosh(spec.L) / 2.0);
  pa.r2 = std::tanh(std::acosh(l_prime(spec)) / 2.0);
  pa.c1 = (pa.r1 * pa.r1 + 1.0) / (2.0 * pa.r1);
  pa.R1 = (1.0 - pa.r1 * pa.r1) / (2.0 * pa.r1);
  pa.c2 = (pa.r2 * pa.r2 + 1.0) / (2.0 * pa.r2);
  pa.R2 = (1.0 - pa.r2 * pa.r2) / (2.0 * pa.r2);
  QuadrangleGeometry geo = vertex_geometry(spec);
  Complex q1 = geo.q[0];
  double th_r = std::arg(q1 - Complex(pa.c1, 0.0));
  double th_t = std::arg(q1 - Complex(0.0, pa.c2));
  if (!spec.zero_angle()) {
    pa.th_right_end = th_r;
    pa.th_top_end = th_t;
    pa.corner_q = q1;
    return pa;
  }
  pa.truncated = true;
  pa.th_right_end = kPi + cusp_fraction * (th_r - kPi);
  pa.th_top_end = -kPi / 2.0 + cusp_fraction * (th_t + kPi / 2.0);
  // The cusp cap runs from the right-arc cut to the top-arc cut and is part
  // of the (Neumann) right side; the patch corner is the top-arc endpoint.
  pa.chord_from =
      Complex(pa.c1, 0.0) + pa.R1 * std::polar(1.0, pa.th_right_end);
  pa.corner_q = Complex(0.0, pa.c2) + pa.R2 * std::polar(1.0, pa.th_top_end);
  return pa;
}

// P1 assembly on the structured (N+1)x(N+1) transfinite grid; Dirichlet
// u = 0 on the bottom row, u = 1 on the top row, natural elsewhere.
double dirichlet_energy(const Patch& pa, int Nx, int Ny, double grading) {
  auto grade = [grading](double s) { return 1.0 - std::pow(1.0 - s, grading); };
  int nn = (Nx + 1) * (Ny + 1);
  std::vector<Complex> pos(nn);
  for (int j = 0; j <= Ny; ++j)
    for (int i = 0; i <= Nx; ++i) {
      double x = grade(static_cast<double>(i) / Nx);
      double y = grade(static_cast<double>(j) / Ny);
      pos[j * (Nx + 1) + i] = pa.map(x, y);
    }

  // Sparse rows: 9-point stencil neighbours at most.
  std::vector<std::array<int, 9>> cols(nn);
  std::vector<std::array<double, 9>> vals(nn);
  std::vector<int> ncols(nn, 0);
  auto add = [&](int r, int c, double v) {
    for (int k = 0; k < ncols[r]; ++k)
      if (cols[r][k] == c) {
        vals[r][k] += v;
        return;
      }
    cols[r][ncols[r]] = c;
    vals[r][ncols[r]] = v;
    ++ncols[r];
  };

  auto stamp = [&](int a, int b, int c) {
    Complex za = pos[a], zb = pos[b], zc = pos[c];
    double det = (zb.real() - za.real()) * (zc.imag() - za.imag()) -
                 (zc.real() - za.real()) * (zb.imag() - za.imag());
    if (std::abs(det) < 1e-18) throw MeshFailure("degenerate element");
    double area = det / 2.0;
    // gradients of the barycentric coordinates
    double gx[3] = {(zb.imag() - zc.imag()) / det,
                    (zc.imag() - za.imag()) / det,
                    (za.imag() - zb.imag()) / det};
    double gy[3] = {(zc.real() - zb.real()) / det,
                    (za.real() - zc.real()) / det,
                    (zb.real() - za.real()) / det};
    int ids[3] = {a, b, c};
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        add(ids[p], ids[q], (gx[p] * gx[q] + gy[p] * gy[q]) * std::abs(area));
  };
  for (int j = 0; j < Ny; ++j)
    for (int i = 0; i < Nx; ++i) {
      int a = j * (Nx + 1) + i, b = a + 1;
      int c = a + (Nx + 1), d = c + 1;
      stamp(a, b, d);
      stamp(a, d, c);
    }

  // Dirichlet data and reduced system.
  std::vector<double> u(nn, 0.0);
  std::vector<bool> fixed(nn, false);
  for (int i = 0; i <= Nx; ++i) {
    fixed[i] = true;                       // bottom: u = 0
    fixed[Ny * (Nx + 1) + i] = true;       // top: u = 1
    u[Ny * (Nx + 1) + i] = 1.0;
  }
  std::vector<double> rhs(nn, 0.0);
  for (int r = 0; r < nn; ++r) {
    if (fixed[r]) continue;
    for (int k = 0; k < ncols[r]; ++k)
      if (fixed[cols[r][k]]) rhs[r] -= vals[r][k] * u[cols[r][k]];
  }

  // Jacobi-preconditioned conjugate gradients on the free nodes.
  std::vector<double> diag(nn, 1.0);
  for (int r = 0; r < nn; ++r)
    if (!fixed[r])
      for (int k = 0; k < ncols[r]; ++k)
        if (cols[r][k] == r) diag[r] = vals[r][k];
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int r = 0; r < nn; ++r) {
      if (fixed[r]) {
        y[r] = 0.0;
        continue;
      }
      double s = 0.0;
      for (int k = 0; k < ncols[r]; ++k) {
        int c = cols[r][k];
        if (!fixed[c]) s += vals[r][k] * x[c];
      }
      y[r] = s;
    }
  };
  std::vector<double> x(nn, 0.0), r_(nn, 0.0), z(nn, 0.0), p(nn, 0.0),
      Ap(nn, 0.0);
  r_ = rhs;
  double rz = 0.0;
  for (int i = 0; i < nn; ++i)
    if (!fixed[i]) {
      z[i] = r_[i] / diag[i];
      rz += r_[i] * z[i];
    }
  p = z;
  double rhs_norm = std::sqrt(std::max(rz, 1e-300));
  for (int it = 0; it < 20 * nn; ++it) {
    apply(p, Ap);
    double pAp = 0.0;
    for (int i = 0; i < nn; ++i)
      if (!fixed[i]) pAp += p[i] * Ap[i];
    if (pAp <= 0.0) break;
    double alpha = rz / pAp;
    double rz_new = 0.0;
    for (int i = 0; i < nn; ++i)
      if (!fixed[i]) {
        x[i] += alpha * p[i];
        r_[i] -= alpha * Ap[i];
        z[i] = r_[i] / diag[i];
        rz_new += r_[i] * z[i];
      }
    if (std::sqrt(std::abs(rz_new)) < 1e-13 * rhs_norm + 1e-16) {
      rz = rz_new;
      break;
    }
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < nn; ++i)
      if (!fixed[i]) p[i] = z[i] + beta * p[i];
  }
  for (int i = 0; i < nn; ++i)
    if (!fixed[i]) u[i] = x[i];

  // Energy u^T K u over all nodes.
  double energy = 0.0;
  for (int r = 0; r < nn; ++r)
    for (int k = 0; k < ncols[r]; ++k)
      energy += u[r] * vals[r][k] * u[cols[r][k]];
  return energy;
}

struct Extrapolation {
  double value;
  double spread;
};

Extrapolation extrapolate(const std::vector<double>& e) {
  // Romberg tableau over the level-doubled meshes: the P1 energy error
  // expands in even powers of h, so successive columns cancel h^2, h^4, ...
  size_t n = e.size();
  if (n < 2) return {e.back(), 1.0};
  std::vector<std::vector<double>> t(n);
  for (size_t k = 0; k < n; ++k) {
    t[k].resize(k + 1);
    t[k][0] = e[k];
    double p4 = 4.0;
    for (size_t j = 1; j <= k; ++j) {
      t[k][j] = t[k][j - 1] + (t[k][j - 1] - t[k - 1][j - 1]) / (p4 - 1.0);
      p4 *= 4.0;
    }
  }
  double value = t[n - 1][n - 1];
  double spread = std::abs(value - t[n - 2][n - 2]);
  return {value, spread};
}

Extrapolation module_for(const QuadrangleSpec& spec, const SolverConfig& cfg,
                         double cusp_fraction, double aspect,
                         std::vector<double>* energies_out) {
  Patch pa = make_patch(spec, cusp_fraction);
  std::vector<double> energies;
  for (int level = 1; level <= cfg.levels; ++level) {
    int N = cfg.base_n << (level - 1);
    int Ny = std::max(N, static_cast<int>(std::lround(N * aspect)));
    energies.push_back(dirichlet_energy(pa, N, Ny, cfg.grading));
  }
  if (energies_out) *energies_out = energies;
  auto ex = extrapolate(energies);
  return {1.0 / ex.value, ex.spread / (ex.value * ex.value)};
}

// Cheap square-mesh estimate of the module, used to pick the mesh aspect.
double rough_module(const QuadrangleSpec& spec, const SolverConfig& cfg,
                    double cusp_fraction) {
  Patch pa = make_patch(spec, cusp_fraction);
  return 1.0 / dirichlet_energy(pa, 2 * cfg.base_n, 2 * cfg.base_n,
                                cfg.grading);
}

}  // namespace

SolveResult tau_from_quadrangle(const QuadrangleSpec& spec,
                                const SolverConfig& cfg) {
  if (spec.twist != 0.0)
    throw UnsupportedCase("uniformization implemented for zero twist");
  SolveResult out;
  if (!spec.zero_angle()) {
    double aspect = rough_module(spec, cfg, 0.0);
    auto ex = module_for(spec, cfg, 0.0, aspect, &out.energies);
    out.im_tau = ex.value;
    out.error_estimate = ex.spread;
    if (out.error_estimate > cfg.tol)
      throw NotConverged("module extrapolation spread " +
                         std::to_string(out.error_estimate));
  } else {
    // Deepen the cusp truncation; its error decays geometrically with the
    // depth, so an Aitken step over the rounds removes the leading term.
    double frac = cfg.cusp_start;
    std::vector<double> rounds;
    double mesh_est = 0.0;
    double aspect = rough_module(spec, cfg, frac);
    for (int round = 0; round < cfg.cusp_rounds; ++round) {
      auto ex = module_for(spec, cfg, frac, aspect, &out.energies);
      rounds.push_back(ex.value);
      mesh_est = ex.spread;
      if (round >= 2 &&
          std::abs(rounds[round] - rounds[round - 1]) < cfg.tol / 100.0)
        break;
      frac = 1.0 - (1.0 - frac) / 2.5;
    }
    size_t k = rounds.size();
    double trunc_est = cfg.tol;
    out.im_tau = rounds.back();
    if (k >= 3) {
      double d1 = rounds[k - 2] - rounds[k - 3];
      double d2 = rounds[k - 1] - rounds[k - 2];
      if (std::abs(d1 - d2) > 1e-300)
        out.im_tau = rounds[k - 1] - d2 * d2 / (d1 - d2);
      trunc_est = std::abs(out.im_tau - rounds[k - 1]) / 4.0;
    } else if (k == 2) {
      trunc_est = std::abs(rounds[1] - rounds[0]);
    }
    out.error_estimate = std::max(mesh_est, trunc_est);
    if (out.error_estimate > cfg.tol)
      throw NotConverged("cusp truncation estimate " +
                         std::to_string(out.error_estimate));
  }
  out.mu = mu_imaginary_axis(out.im_tau).real();
  return out;
}

namespace {

struct RawRow {
  int n;
  const char* expr;
  double L;
  double mu;
};

const double S2 = std::sqrt(2.0), S3 = std::sqrt(3.0), S5 = std::sqrt(5.0),
             S6 = std::sqrt(6.0), S7 = std::sqrt(7.0), S10 = std::sqrt(10.0),
             S11 = std::sqrt(11.0), S17 = std::sqrt(17.0),
             S33 = std::sqrt(33.0);

std::vector<RawRow> all_rows() {
  return {
      // angle pi/3
      {3, "sqrt(2+sqrt(2))", std::sqrt(2.0 + S2), (837.0 + 1107.0 * S2) / 2401.0},
      {3, "sqrt(7+sqrt(17))/2", std::sqrt(7.0 + S17) / 2.0, (23.0 + S17) / 27.0},
      {3, "sqrt(6+2sqrt(3))/2", std::sqrt(6.0 + 2.0 * S3) / 2.0, 27.0 - 15.0 * S3},
      {3, "sqrt(2)", S2, 27.0 / 25.0},
      {3, "sqrt(5+sqrt(5))/2", std::sqrt(5.0 + S5) / 2.0, 32.0 / 27.0},
      {3, "sqrt(4+2sqrt(2))/2", std::sqrt(4.0 + 2.0 * S2) / 2.0,
       (1564.0 + 1107.0 * S2) / 2401.0},
      {3, "(1+sqrt(17))/4", (1.0 + S17) / 4.0, (621.0 + 27.0 * S17) / 512.0},
      {3, "sqrt(6)/2", S6 / 2.0, 2.0},
      {3, "sqrt(14+2sqrt(17))/4", std::sqrt(14.0 + 2.0 * S17) / 4.0,
       -108.0 + 27.0 * S17},
      {3, "sqrt(4+sqrt(2))/2", std::sqrt(4.0 + S2) / 2.0, (58.0 + 41.0 * S2) / 27.0},
      {3, "(sqrt(2)+sqrt(10))/4", (S2 + S10) / 4.0, 32.0 / 5.0},
      {3, "sqrt(5)/2", S5 / 2.0, 27.0 / 2.0},
      {3, "sqrt(3+sqrt(3))/2", std::sqrt(3.0 + S3) / 2.0, 27.0 + 15.0 * S3},
      {3, "sqrt(10+2sqrt(17))/4", std::sqrt(10.0 + 2.0 * S17) / 4.0,
       109.0 + 27.0 * S17},
      {3, "sqrt(3+sqrt(2))/2", std::sqrt(3.0 + S2) / 2.0,
       (1566.0 + 1107.0 * S2) / 2.0},
      // angle pi/4
      {4, "sqrt(10+2sqrt(17))/2", std::sqrt(10.0 + 2.0 * S17) / 2.0,
       (1151.0 - 217.0 * S17) / 256.0},
      {4, "(sqrt(2)+sqrt(6))/2", (S2 + S6) / 2.0, (12.0 + 7.0 * S3) / 24.0},
      {4, "sqrt(3)", S3, 128.0 / 125.0},
      {4, "(1+sqrt(5))/2", (1.0 + S5) / 2.0, (2.0 + S5) / 4.0},
      {4, "sqrt(5+sqrt(17))/2", std::sqrt(5.0 + S17) / 2.0,
       (897.0 - 217.0 * S17) / 2.0},
      {4, "sqrt(2)", S2, 4.0 / 3.0},
      {4, "sqrt(18+2sqrt(33))/4", std::sqrt(18.0 + 2.0 * S33) / 4.0,
       (283.0 + 21.0 * S33) / 256.0},
      {4, "sqrt(4+2sqrt(2))/2", std::sqrt(4.0 + 2.0 * S2) / 2.0, 2.0},
      {4, "(sqrt(3)+sqrt(11))/4", (S3 + S11) / 4.0, (9.0 + 7.0 * S33) / 18.0},
      {4, "sqrt(6)/2", S6 / 2.0, 4.0},
      {4, "sqrt(14+2sqrt(17))/4", std::sqrt(14.0 + 2.0 * S17) / 4.0,
       (1151.0 + 217.0 * S17) / 256.0},
      {4, "(sqrt(2)+sqrt(10))/4", (S2 + S10) / 4.0, 9.0 + 4.0 * S5},
      {4, "sqrt(5)/2", S5 / 2.0, 128.0 / 3.0},
      {4, "sqrt(3+sqrt(3))/2", std::sqrt(3.0 + S3) / 2.0, 97.0 + 56.0 * S3},
      {4, "sqrt(10+2sqrt(17))/4", std::sqrt(10.0 + 2.0 * S17) / 4.0,
       (897.0 + 217.0 * S17) / 2.0},
      // angle pi/5
      {5, "sqrt(8+2sqrt(5))/2", std::sqrt(8.0 + 2.0 * S5) / 2.0,
       (65.0 + 29.0 * S5) / 125.0},
      {5, "(sqrt(2)+sqrt(10))/4", (S2 + S10) / 4.0, (1621.0 + 725.0 * S5) / 121.0},
      {5, "sqrt(5+sqrt(5))/2", std::sqrt(5.0 + S5) / 2.0, 2.0},
      // angle pi/6
      {6, "(sqrt(3)+sqrt(7))/2", (S3 + S7) / 2.0, 128.0 - 48.0 * S7},
      {6, "2", 2.0, 81.0 / 80.0},
      {6, "(3sqrt(2)+sqrt(10))/4", (3.0 * S2 + S10) / 4.0,
       (4096.0 - 1216.0 * S10) / 243.0},
      {6, "sqrt(6+2sqrt(7))/2", std::sqrt(6.0 + 2.0 * S7) / 2.0,
       (512.0 - 160.0 * S7) / 81.0},
      {6, "sqrt(10)/2", S10 / 2.0, 32.0 / 27.0},
      {6, "sqrt(2)", S2, 81.0 / 49.0},
      {6, "(1+sqrt(3))/2", (1.0 + S3) / 2.0, 2.0},
      {6, "sqrt(7)/2", S7 / 2.0, 81.0 / 32.0},
      {6, "sqrt(6)/2", S6 / 2.0, 32.0 / 5.0},
      {6, "sqrt(3+sqrt(7))/2", std::sqrt(3.0 + S7) / 2.0,
       (512.0 + 160.0 * S7) / 81.0},
      {6, "(sqrt(2)+sqrt(10))/4", (S2 + S10) / 4.0,
       (4096.0 + 1216.0 * S10) / 243.0},
      {6, "sqrt(5)/2", S5 / 2.0, 81.0},
      {6, "(sqrt(3)+sqrt(7))/4", (S3 + S7) / 4.0, 128.0 + 48.0 * S7},
      // angle pi/8
      {8, "sqrt(2+sqrt(2))", std::sqrt(2.0 + S2), (-4.0 + 8.0 * S2) / 7.0},
      {8, "sqrt(6+2sqrt(2))/2", std::sqrt(6.0 + 2.0 * S2) / 2.0,
       (3.0 + 2.0 * S2) / 4.0},
      {8, "sqrt(cos(pi/8)+1)", std::sqrt(std::cos(kPi / 8.0) + 1.0), 2.0},
      {8, "sqrt(4+2sqrt(2))/2", std::sqrt(4.0 + 2.0 * S2) / 2.0,
       (11.0 + 8.0 * S2) / 7.0},
      {8, "sqrt(4+sqrt(2))/2", std::sqrt(4.0 + S2) / 2.0, 12.0 + 8.0 * S2},
      // zero angle
      {0, "sqrt(5)", S5, (125.0 - 55.0 * S5) / 2.0},
      {0, "sqrt(3)", S3, 9.0 / 8.0},
      {0, "sqrt(2)", S2, 2.0},
      {0, "sqrt(6)/2", S6 / 2.0, 9.0},
      {0, "sqrt(5)/2", S5 / 2.0, (125.0 + 55.0 * S5) / 2.0},
  };
}

}  // namespace

std::vector<ReferenceRow> reference_table_rows(int angle_n) {
  std::vector<ReferenceRow> out;
  for (const auto& r : all_rows())
    if (angle_n < 0 || r.n == angle_n)
      out.push_back({r.n, r.expr, r.L, r.mu});
  return out;
}

TableReport reproduce_mu_table(int angle_n, const SolverConfig& cfg) {
  TableReport rep;
  for (const auto& row : reference_table_rows(angle_n)) {
    TableRow tr;
    tr.angle_n = row.angle_n;
    tr.L_expr = row.L_expr;
    tr.L = row.L;
    tr.mu_table = row.mu;
    try {
      SolverConfig row_cfg = cfg;
      if (row.angle_n == 0) row_cfg.tol = std::max(cfg.tol, 1e-4);
      SolveResult sr =
          tau_from_quadrangle(QuadrangleSpec(row.L, row.angle_n), row_cfg);
      tr.mu_computed = sr.mu;
    } catch (const Error&) {
      tr.mu_computed = std::nan("");
    }
    tr.abs_delta = std::abs(tr.mu_computed - tr.mu_table);
    tr.pass = std::isfinite(tr.abs_delta) && tr.abs_delta < 1e-3;
    if (!tr.pass) ++rep.failures;
    rep.rows.push_back(tr);
  }
  return rep;
}

std::string TableReport::csv() const {
  std::ostringstream os;
  os << "angle,L_expr,L,mu_table,mu_computed,abs_delta,status\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    os << (r.angle_n == 0 ? std::string("0")
                          : "pi/" + std::to_string(r.angle_n))
       << ',' << r.L_expr << ',' << fmt(r.L) << ',' << fmt(r.mu_table) << ','
       << fmt(r.mu_computed) << ',' << fmt(r.abs_delta) << ','
       << (r.pass ? "ok" : "FINDING") << '\n';
  }
  return os.str();
}

}  // namespace rectsurf
