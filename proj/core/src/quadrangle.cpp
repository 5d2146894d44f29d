#include "rectsurf/quadrangle.hpp"

#include <cmath>

namespace rectsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

Moebius axis_translation_real(double cosh_half) {
  double s = std::sqrt(cosh_half * cosh_half - 1.0);
  return {Complex(cosh_half), Complex(s), Complex(s), Complex(cosh_half)};
}

Moebius axis_translation_imag(double cosh_half) {
  double s = std::sqrt(cosh_half * cosh_half - 1.0);
  return {Complex(cosh_half), Complex(0, s), Complex(0, -s),
          Complex(cosh_half)};
}

Moebius minus_z() { return {Complex(0, 1), 0.0, 0.0, Complex(0, -1)}; }

}  // namespace

QuadrangleSpec::QuadrangleSpec(double L_, int n_, double twist_)
    : L(L_), n(n_), twist(twist_) {
  if (L <= 1.0) throw ImaginaryLPrime("L must exceed 1");
  if (n != 0 && n < 3) throw UnsupportedCase("angle denominator must be >= 3");
}

double QuadrangleSpec::angle() const { return n == 0 ? 0.0 : kPi / n; }

double l_prime(const QuadrangleSpec& spec) {
  double L2 = spec.L * spec.L;
  if (spec.zero_angle()) return spec.L / std::sqrt(L2 - 1.0);
  double c = std::cos(kPi / spec.n);
  double num = c * c + L2 - 1.0;
  if (num <= 0.0 || L2 <= 1.0) throw ImaginaryLPrime();
  return std::sqrt(num / (L2 - 1.0));
}

double twist_cosh(const QuadrangleSpec& spec) {
  return std::cosh(spec.twist * std::acosh(spec.L));
}

GeneratorPair build_generators(const QuadrangleSpec& spec) {
  GeneratorPair g;
  g.A = axis_translation_real(spec.L);
  g.B = axis_translation_imag(l_prime(spec));
  double tw = twist_cosh(spec);
  if (spec.twist != 0.0) g.T = axis_translation_real(tw);
  // Center involution: conjugate of z -> -z by the half-twist translation.
  Moebius s = axis_translation_real(std::sqrt((tw + 1.0) / 2.0));
  g.e1 = s * minus_z() * s.inverse();
  return g;
}

GeneratorPair special_generators(SpecialCase c, int n) {
  switch (c) {
    case SpecialCase::Square: {
      double L = (n == 0) ? std::sqrt(2.0) : std::sqrt(std::cos(kPi / n) + 1.0);
      return build_generators(QuadrangleSpec(L, n));
    }
    case SpecialCase::Hexagonal: {
      double c3 = (n == 0) ? 1.0 : std::cos(2.0 * kPi / (3.0 * n));
      double L = 0.5 + c3;
      double theta = std::acos((2.0 * c3 + 1.0) / (2.0 * c3 + 3.0));
      Moebius T{std::polar(1.0, theta / 2.0), 0.0, 0.0,
                std::polar(1.0, -theta / 2.0)};
      GeneratorPair g;
      g.A = axis_translation_real(L);
      g.B = T * g.A * T.inverse();
      g.e1 = minus_z();
      return g;
    }
    case SpecialCase::Half: {
      if (n < 3) throw UnsupportedCase("half case needs n >= 3");
      double L = std::sqrt(std::cos(kPi / n) + 1.0);
      double beta = std::asin(1.0 / std::sqrt(L * L + 1.0));
      double sA = std::sqrt(L * L * L * L - 1.0);
      double sB = std::sqrt(L * L - 1.0);
      GeneratorPair g;
      g.A = {Complex(L * L), Complex(sA), Complex(sA), Complex(L * L)};
      g.B = Moebius::su11(Complex(L), std::polar(sB, beta));
      g.e1 = minus_z();
      return g;
    }
  }
  throw UnsupportedCase();
}

namespace {

// Geodesic orthogonal to the real axis at the point r in (0,1).
Geodesic perp_at_real(double r) {
  Geodesic g;
  g.kind = Geodesic::Kind::Circular;
  g.center = Complex((r * r + 1.0) / (2.0 * r), 0.0);
  g.radius = (1.0 - r * r) / (2.0 * r);
  return g;
}

}  // namespace

QuadrangleGeometry vertex_geometry(const QuadrangleSpec& spec) {
  QuadrangleGeometry geo;
  double Lp = l_prime(spec);
  double r1 = std::tanh(std::acosh(spec.L) / 2.0);
  double r2 = std::tanh(std::acosh(Lp) / 2.0);
  geo.p = {Complex(r1), Complex(0, r2), Complex(-r1), Complex(0, -r2)};

  // Right edge: orthogonal to R at p1. Top edge: orthogonal to iR at p2.
  Geodesic right = perp_at_real(r1);
  Geodesic top = perp_at_real(r2);
  double c1 = right.center.real();
  double c2 = top.center.real();
  top.center = Complex(0, c2);

  // Intersection in the (closed) disk: both circles are orthogonal to the
  // unit circle, so their radical line passes through 0: y = (c1/c2) x.
  double k = 1.0 + (c1 / c2) * (c1 / c2);
  double disc = c1 * c1 - k;  // quadratic k x^2 - 2 c1 x + 1 = 0
  if (disc < -1e-9) throw NoIntersection();
  if (disc < 0.0) disc = 0.0;
  double x = (c1 - std::sqrt(disc)) / k;
  Complex q1(x, (c1 / c2) * x);
  geo.ideal_vertices = spec.zero_angle();
  if (geo.ideal_vertices) q1 /= std::abs(q1);
  geo.q = {q1, Complex(-std::conj(q1)), -q1, std::conj(q1)};

  right.e1 = geo.q[3];
  right.e2 = geo.q[0];
  top.e1 = geo.q[0];
  top.e2 = geo.q[1];
  Geodesic left = right;
  left.center = -right.center;
  left.e1 = geo.q[1];
  left.e2 = geo.q[2];
  Geodesic bottom = top;
  bottom.center = -top.center;
  bottom.e1 = geo.q[2];
  bottom.e2 = geo.q[3];
  geo.edges = {right, top, left, bottom};

  if (spec.twist != 0.0) {
    Moebius T = *build_generators(spec).T;
    geo.q1p = T(geo.q[0]);
    geo.q2p = T(geo.q[1]);
    geo.p2p = T(geo.p[1]);
  } else {
    geo.q1p = geo.q[0];
    geo.q2p = geo.q[1];
    geo.p2p = geo.p[1];
  }
  return geo;
}

LambertLengths lambert_lengths(const QuadrangleSpec& spec) {
  if (spec.n != 4) throw WrongAngle("length relations hold for angle pi/4");
  LambertLengths r;
  double L2 = spec.L * spec.L;
  r.L1 = 2.0 * L2 - 1.0;
  r.L2 = (r.L1 + 1.0) / (r.L1 - 1.0);
  r.L3 = 2.0 * r.L1 + 1.0;
  r.L4 = 2.0 * r.L2 + 1.0;
  double tw = twist_cosh(spec);
  r.L2t = tw * tw * 2.0 * r.L1 / (r.L1 - 1.0) - 1.0;
  r.L4t = 2.0 * r.L2t + 1.0;
  return r;
}

double side_arc_length(const QuadrangleSpec& spec) {
  if (spec.zero_angle()) throw DomainError("zero-angle quadrangle");
  double v = spec.L * std::sin(kPi / spec.n);
  if (v < 1.0 - 1e-12) throw DomainError("L sin(pi/n) < 1");
  return std::acosh(std::max(v, 1.0));
}

}  // namespace rectsurf
