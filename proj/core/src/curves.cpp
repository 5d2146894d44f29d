#include "rectsurf/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace rectsurf {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex mu_to_a(Complex mu) { return (2.0 * mu - 4.0) / mu; }

}  // namespace

Complex Poly::eval(Complex x) const {
  Complex v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

Poly Poly::derivative() const {
  Poly d;
  for (size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * double(k));
  return d;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  r.c.assign(c.size() + o.c.size() - 1, 0.0);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  return r;
}

Poly Poly::from_roots(const std::vector<Complex>& roots) {
  Poly p;
  p.c = {1.0};
  for (Complex r : roots) p = p * Poly{{-r, 1.0}};
  return p;
}

std::vector<Complex> Poly::roots() const {
  int n = degree();
  while (n > 0 && std::abs(c[n]) < 1e-300) --n;
  if (n < 1) return {};
  std::vector<Complex> a(c.begin(), c.begin() + n + 1);
  for (auto& x : a) x /= a[n];
  double radius = 1.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(a[k]), 1.0 / (n - k)));
  radius *= 2.0;
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = radius * std::polar(1.0, 2.0 * M_PI * k / n + 0.4);
  for (int iter = 0; iter < 500; ++iter) {
    double move = 0.0;
    for (int k = 0; k < n; ++k) {
      Complex num = 0.0, xp = 1.0;
      for (int j = 0; j <= n; ++j) {
        num += a[j] * xp;
        xp *= z[k];
      }
      Complex den = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != k) den *= (z[k] - z[j]);
      Complex step = num / den;
      z[k] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-14) break;
  }
  return z;
}

double Poly::min_root_gap() const {
  auto z = roots();
  double gap = 1e300;
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j)
      gap = std::min(gap, std::abs(z[i] - z[j]));
  return gap;
}

// ---------------------------------------------------------------------------

HyperellipticCurve family_equation(Family f, int g, Complex mu) {
  Complex a = mu_to_a(mu);
  if (std::abs(a - 2.0) < 1e-12 || std::abs(a + 2.0) < 1e-12)
    throw DegenerateParameter("a = +/-2 is degenerate");
  HyperellipticCurve out;
  out.family = family_name(f);
  out.genus = g;
  out.mu = mu;
  out.a = a;
  auto check_parity = [g](bool want_even) {
    if ((g % 2 == 0) != want_even) throw BadParity();
  };
  std::ostringstream diff;
  switch (f) {
    case Family::Esc1:
    case Family::Escb1: {
      check_parity(f == Family::Escb1);
      out.p.c.assign(2 * g + 3, 0.0);
      out.p.c[0] = 1.0;
      out.p.c[g + 1] = a;
      out.p.c[2 * g + 2] = 1.0;
      break;
    }
    case Family::Esc2:
    case Family::Escb2: {
      check_parity(f == Family::Escb2);
      Poly inner;
      inner.c.assign(2 * g + 1, 0.0);
      inner.c[0] = 1.0;
      inner.c[g] = a;
      inner.c[2 * g] = 1.0;
      out.p = inner * Poly{{0.0, 1.0}};
      break;
    }
    case Family::St1:
    case Family::St2: {
      // Representatives of the reciprocal root pairs of z^2 + a z + 1,
      // taken through x^d = z with d = 2g (St1) or 2g - 1 (St2).
      int d = (f == Family::St1) ? 2 * g : 2 * g - 1;
      Complex zp = (-a + std::sqrt(a * a - 4.0)) / 2.0;
      std::vector<Complex> tsq;
      for (int k = 0; k < d; ++k) {
        Complex xk = std::pow(zp, 1.0 / d) *
                     std::polar(1.0, 2.0 * M_PI * k / d);
        Complex t = kI * (1.0 + xk) / (1.0 - xk);
        tsq.push_back(t * t);
      }
      Poly prod = Poly::from_roots(tsq);
      Poly front = (f == Family::St1) ? Poly{{0.0, 1.0}}
                                      : Poly{{0.0, 1.0}} * Poly{{1.0, 1.0}};
      out.p = front * prod;
      break;
    }
  }
  switch (f) {
    case Family::Esc1:
    case Family::Esc2:
      diff << "x^((g-1)/2) dx / y";
      break;
    case Family::Escb1:
    case Family::Escb2:
      diff << "x^(g-1) dx^2 / y^2";
      break;
    case Family::St1:
    case Family::St2:
      diff << "(x+1)^(g-1) dx / y";
      break;
  }
  out.differential = diff.str();
  return out;
}

std::string curve_to_json(const HyperellipticCurve& c) {
  nlohmann::json j;
  j["family"] = c.family;
  j["genus"] = c.genus;
  j["parameters"]["mu"] = {c.mu.real(), c.mu.imag()};
  j["parameters"]["a"] = {c.a.real(), c.a.imag()};
  j["coefficients"] = nlohmann::json::array();
  for (Complex x : c.p.c) j["coefficients"].push_back({x.real(), x.imag()});
  j["differential"] = c.differential;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Case A

CaseAData caseA_from_a(Complex a) {
  if (std::abs(a) < 1e-12 || std::abs(a - 1.0) < 1e-12 ||
      std::abs(a + 1.0) < 1e-12)
    throw DegenerateParameter("case A needs a outside {0, +/-1}");
  CaseAData d;
  d.a = a;
  d.nu = a * a + 1.0 / (a * a);
  Complex a2 = a * a;
  d.mu = (a2 + 1.0) * (a2 + 1.0) / ((a2 - 1.0) * (a2 - 1.0));
  d.curve = Poly{{-a2, 0.0, 1.0}} * Poly{{-1.0, 0.0, 1.0}} *
            Poly{{-a2 - 1.0, 0.0, 1.0}};
  d.genus1_target = Poly{{0.0, 1.0}} * Poly{{-1.0, 1.0}} * Poly{{-d.mu, 1.0}};
  return d;
}

CaseAData caseA_from_nu(Complex nu) {
  // a^2 + 1/a^2 = nu
  Complex a2 = (nu + std::sqrt(nu * nu - 4.0)) / 2.0;
  return caseA_from_a(std::sqrt(a2));
}

Complex CaseAData::map_x(Complex x) const {
  Complex a2 = a * a;
  Complex u = 2.0 * x * x - a2 - 1.0;
  return u * u / ((a2 - 1.0) * (a2 - 1.0));
}

Complex CaseAData::map_y(Complex x, Complex y) const {
  Complex a2 = a * a;
  Complex d = (a2 - 1.0);
  return y * 4.0 * x * (2.0 * x * x - a2 - 1.0) / (d * d * d);
}

std::vector<Complex> CaseAData::orbit_nu() const {
  Complex n = nu;
  return {n,
          -n,
          2.0 * (6.0 - n) / (2.0 + n),
          2.0 * (n + 6.0) / (n - 2.0),
          2.0 * (n - 6.0) / (n + 2.0),
          2.0 * (6.0 + n) / (2.0 - n)};
}

// ---------------------------------------------------------------------------
// Case B

CaseBData caseB_data(Complex mu) {
  CaseBData d;
  d.mu = mu;
  d.a = mu_to_a(mu);
  Poly inner{{1.0, 0.0, d.a, 0.0, 1.0}};
  d.curve = inner * Poly{{0.0, 1.0}};
  return d;
}

std::vector<Complex> CaseBData::orbit_a() const {
  // Images of a under the order-3 modular rotation; the sign convention is
  // fixed so that the triple satisfies the cubic x^3 - a x^2 - 36 x + 4 a.
  return {a, 2.0 * (a - 6.0) / (a + 2.0), 2.0 * (a + 6.0) / (2.0 - a)};
}

// ---------------------------------------------------------------------------
// Case C

CaseCData caseC_data(Complex t) {
  if (std::abs(t) < 1e-12 || std::abs(t + 1.0) < 1e-12 ||
      std::abs(t + 2.0) < 1e-12 || std::abs(t * t + 2.0 * t + 2.0) < 1e-12)
    throw DegenerateParameter("case C parameter t is degenerate");
  CaseCData d;
  d.t = t;
  Complex t2 = t * t;
  Complex s = t2 + 2.0 * t + 2.0;
  d.a = -(3.0 * t2 + 4.0 * t + 2.0) * (t + 2.0) / (t * s);
  d.c = -(t2 + 4.0 * t + 6.0) * (t + 1.0) / s;
  d.b = -(t2 + 3.0 * t + 2.0) / t;
  Complex num = (t2 - 2.0) * (t2 - 2.0);
  Complex c3 = (3.0 * t2 + 4.0 * t + 2.0);
  Complex c6 = (t2 + 4.0 * t + 6.0);
  d.lambda = -num * c3 * c3 * c3 * c6 * c6 * c6 /
             (1024.0 * t * t * t * s * s * (t + 2.0) * (t + 2.0) * (t + 2.0) *
              (t + 1.0) * (t + 1.0) * (t + 1.0));
  d.mu = d.lambda / (d.lambda - 1.0);
  Complex root = kI * std::sqrt(2.0) * (t2 + 4.0 * t + 2.0);
  d.d1 = ((t2 - 2.0) + root) * (t2 - 2.0) / (4.0 * t * s);
  d.d2 = ((t2 - 2.0) - root) * (t2 - 2.0) / (4.0 * t * s);
  d.p = -(t2 + 4.0 * t + 6.0) * (3.0 * t2 + 4.0 * t + 2.0) / (4.0 * t * s);
  d.q = -2.0 * (t2 + 3.0 * t + 2.0) / s;
  d.quartic = caseC_quartic(d.mu);
  return d;
}

Poly caseC_quartic(Complex mu) {
  return Poly{{mu - 1.0, -(2.0 + 6.0 * mu), 12.0 * mu, 2.0 - 8.0 * mu, 1.0}};
}

std::vector<Complex> CaseCData::companions() const {
  return {t, 2.0 / t, -(t + 2.0) / (t + 1.0), -2.0 * (t + 1.0) / (t + 2.0)};
}

Complex CaseCData::f(Complex x) const {
  return x * x * (x - a) * (x - c) / ((1.0 - a) * (1.0 - c));
}

std::vector<CaseCCandidate> caseC_from_mu(Complex mu) {
  std::vector<CaseCCandidate> out;
  bool real_case = std::abs(mu.imag()) < 1e-9 && mu.real() > 1.0;
  for (Complex w : caseC_quartic(mu).roots()) {
    CaseCClass cls = CaseCClass::MirrorPair;
    if (real_case && std::abs(w.imag()) < 1e-7) {
      if (w.real() > 2.0) cls = CaseCClass::C1;
      else if (w.real() > 0.0 && w.real() < 0.5) cls = CaseCClass::C4;
    }
    // u from ((u^2+1)/(u^2-1))^2 = w, then t; all branch choices tried and
    // verified against mu.
    for (Complex sw : {std::sqrt(w), -std::sqrt(w)}) {
      Complex u2 = (sw + 1.0) / (sw - 1.0);
      for (Complex u : {std::sqrt(u2), -std::sqrt(u2)}) {
        Complex t = std::sqrt(2.0) * (u + 1.0 + std::sqrt(2.0)) /
                    (u - 1.0 - std::sqrt(2.0));
        bool degenerate = std::abs(t) < 1e-9 || std::abs(t + 1.0) < 1e-9 ||
                          std::abs(t + 2.0) < 1e-9 ||
                          std::abs(t * t + 2.0 * t + 2.0) < 1e-9;
        if (degenerate) continue;
        double res = std::abs(caseC_data(t).mu - mu);
        if (res < 1e-6) out.push_back({w, t, cls, res});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Case D

CaseDData caseD_data(Complex mu) {
  bool real_case = std::abs(mu.imag()) < 1e-12;
  if (real_case && mu.real() <= 1.0)
    throw DomainError("branch classification needs mu > 1");
  CaseDData d;
  d.mu = mu;
  d.lambda = 1.0 - mu;
  Complex rad = std::sqrt(mu * mu - mu);
  Complex a1sq = 2.0 * mu - 2.0 + 2.0 * rad;
  Complex a3sq = 2.0 * mu - 2.0 - 2.0 * rad;
  d.a1 = std::sqrt(a1sq);
  d.a3 = std::sqrt(a3sq);
  d.b = kI / std::sqrt(d.a1 * d.a1 + 2.0);
  auto sextic = [&](Complex sign) {
    Complex m1 = 2.0 * (mu - 1.0 + sign * rad);
    Complex m2 = (mu - sign * rad) / (2.0 * mu);
    return Poly{{1.0, 0.0, 1.0}} * Poly{{-m1, 0.0, 1.0}} *
           Poly{{m2, 0.0, 1.0}};
  };
  d.curve1 = sextic(1.0);
  d.curve3 = sextic(-1.0);
  return d;
}

// ---------------------------------------------------------------------------
// Orbit polynomials

OrbitPolynomial orbit_polynomial(OrbitCase oc, Complex parameter) {
  OrbitPolynomial out;
  switch (oc) {
    case OrbitCase::A: {
      auto d = caseA_from_nu(parameter);
      out.values = d.orbit_nu();
      // x^6 - (alpha+72) x^4 + (8 alpha + 1296) x^2 - 16 alpha with alpha
      // fitted from the squares of the three +/- pairs.
      Complex e1 = 0.0;
      for (int i : {0, 2, 3}) e1 += out.values[i] * out.values[i];
      Complex alpha = e1 - 72.0;
      out.poly = Poly{{-16.0 * alpha, 0.0, 8.0 * alpha + 1296.0, 0.0,
                       -(alpha + 72.0), 0.0, 1.0}};
      break;
    }
    case OrbitCase::B: {
      Complex a = parameter;
      out.values = {a, 2.0 * (a - 6.0) / (a + 2.0),
                    2.0 * (a + 6.0) / (2.0 - a)};
      Complex alpha = out.values[0] + out.values[1] + out.values[2];
      out.poly = Poly{{4.0 * alpha, -36.0, -alpha, 1.0}};
      break;
    }
    case OrbitCase::C: {
      out.poly = caseC_quartic(parameter);
      out.values = out.poly.roots();
      break;
    }
  }
  double res = 0.0;
  for (Complex v : out.values) {
    // scaled backward-error style residual
    double scale = 0.0;
    Complex xp = 1.0;
    for (Complex ck : out.poly.c) {
      scale += std::abs(ck) * std::abs(xp);
      xp *= v;
    }
    res = std::max(res, std::abs(out.poly.eval(v)) / std::max(scale, 1.0));
  }
  out.residual = res;
  return out;
}

}  // namespace rectsurf
