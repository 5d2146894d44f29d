#include "rectsurf/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace rectsurf {

namespace {

double sq(double x) { return x * x; }

}  // namespace

DiskPoint::DiskPoint(Complex w) : z(w) {
  if (std::norm(w) >= 1.0)
    throw PointOnBoundary("point not strictly inside the unit disk");
}

BoundaryPoint::BoundaryPoint(Complex w) : z(w) {
  if (std::abs(std::abs(w) - 1.0) > kBoundaryTol)
    throw DegenerateInput("not a boundary point");
}

Moebius Moebius::su11(Complex a_, Complex b_) {
  return {a_, b_, std::conj(b_), std::conj(a_)};
}

Complex Moebius::trace_normalized() const {
  Complex t = trace();
  return t.real() < 0.0 ? -t : t;
}

bool Moebius::is_su11(double tol) const {
  return std::abs(c - std::conj(b)) <= tol && std::abs(d - std::conj(a)) <= tol &&
         std::abs(det() - 1.0) <= tol;
}

void Moebius::require_unit_det(double tol) const {
  if (std::abs(det() - 1.0) > tol) throw NonUnitDeterminant();
}

bool approx_equal_up_to_sign(const Moebius& g, const Moebius& h, double tol) {
  auto close = [tol](const Moebius& x, const Moebius& y) {
    return std::abs(x.a - y.a) <= tol && std::abs(x.b - y.b) <= tol &&
           std::abs(x.c - y.c) <= tol && std::abs(x.d - y.d) <= tol;
  };
  Moebius neg{-h.a, -h.b, -h.c, -h.d};
  return close(g, h) || close(g, neg);
}

AntiMoebius AntiMoebius::operator*(const Moebius& g) const {
  // z -> inner(conj(g z))
  Moebius cg{std::conj(g.a), std::conj(g.b), std::conj(g.c), std::conj(g.d)};
  return {inner * cg};
}

AntiMoebius operator*(const Moebius& g, const AntiMoebius& s) {
  return {g * s.inner};
}

Moebius AntiMoebius::operator*(const AntiMoebius& o) const {
  Moebius co{std::conj(o.inner.a), std::conj(o.inner.b), std::conj(o.inner.c),
             std::conj(o.inner.d)};
  return inner * co;
}

bool AntiMoebius::is_involution(double tol) const {
  Moebius sq = (*this) * (*this);
  return approx_equal_up_to_sign(sq, Moebius::identity(), tol);
}

MapClass classify_map(const Moebius& g) {
  g.require_unit_det();
  double t = std::abs(g.trace_normalized());
  if (std::abs(t - 2.0) < kMatrixTol) return MapClass::Parabolic;
  return t > 2.0 ? MapClass::Hyperbolic : MapClass::Elliptic;
}

double translation_length(const Moebius& g) {
  if (classify_map(g) != MapClass::Hyperbolic) throw NotHyperbolic();
  return 2.0 * std::acosh(std::abs(g.trace_normalized()) / 2.0);
}

double disk_distance(const DiskPoint& z, const DiskPoint& w) {
  double num = 2.0 * std::norm(z.z - w.z);
  double den = (1.0 - std::norm(z.z)) * (1.0 - std::norm(w.z));
  return std::acosh(1.0 + num / den);
}

bool Geodesic::contains(Complex z, double tol) const {
  if (kind == Kind::Diameter) {
    // z collinear with the diameter direction e2 - e1
    Complex dir = e2 - e1;
    return std::abs(std::imag(std::conj(dir) * (z - e1))) <= tol * std::abs(dir);
  }
  return std::abs(std::abs(z - center) - radius) <= tol;
}

Geodesic geodesic_through(Complex z, Complex w) {
  if (std::abs(z - w) < 1e-14) throw DegenerateInput("coincident points");
  // The orthocircle center degenerates exactly when 0, z, w are collinear;
  // that case is a diameter.
  double cross = std::imag(std::conj(z) * w);
  double scale = std::max(std::abs(z) * std::abs(w), 1e-12);
  if (std::abs(cross) <= 1e-12 * scale) {
    Geodesic g;
    g.kind = Geodesic::Kind::Diameter;
    g.e1 = z;
    g.e2 = w;
    return g;
  }
  // Center c of the orthocircle solves 2 Re(conj(z) c) = |z|^2 + 1 and the
  // same for w.
  double a1 = z.real(), b1 = z.imag(), r1 = std::norm(z) + 1.0;
  double a2 = w.real(), b2 = w.imag(), r2 = std::norm(w) + 1.0;
  double det = 2.0 * (a1 * b2 - a2 * b1);
  double cx = (r1 * b2 - r2 * b1) / det;
  double cy = (a1 * r2 - a2 * r1) / det;
  Geodesic g;
  g.kind = Geodesic::Kind::Circular;
  g.center = {cx, cy};
  g.radius = std::sqrt(sq(cx) + sq(cy) - 1.0);
  g.e1 = z;
  g.e2 = w;
  return g;
}

Geodesic axis_of(const Moebius& g) {
  if (classify_map(g) != MapClass::Hyperbolic) throw NotHyperbolic();
  // Fixed points: c z^2 + (d - a) z - b = 0.
  Complex A = g.c, B = g.d - g.a, C = -g.b;
  if (std::abs(A) < 1e-14)
    throw DegenerateInput("hyperbolic disk map with c = 0");
  Complex disc = std::sqrt(B * B - 4.0 * A * C);
  Complex z1 = (-B + disc) / (2.0 * A);
  Complex z2 = (-B - disc) / (2.0 * A);
  z1 /= std::abs(z1);  // snap to the ideal boundary
  z2 /= std::abs(z2);
  return geodesic_through(z1, z2);
}

Moebius translation_to(const DiskPoint& p) {
  double s = 1.0 / std::sqrt(1.0 - std::norm(p.z));
  return Moebius::su11(Complex(s, 0.0), p.z * s);
}

DiskPoint point_towards(const DiskPoint& z, const DiskPoint& w, double s) {
  Moebius to0 = translation_to(z).inverse();
  Complex w0 = to0(w.z);
  double r = std::abs(w0);
  if (r < 1e-15) throw DegenerateInput("coincident points");
  double rt = std::tanh(s / 2.0);
  Complex p0 = w0 / r * rt;
  return DiskPoint(translation_to(z)(p0));
}

DiskPoint midpoint(const DiskPoint& z, const DiskPoint& w) {
  return point_towards(z, w, disk_distance(z, w) / 2.0);
}

Geodesic map_geodesic(const Moebius& g, const Geodesic& arc) {
  return geodesic_through(g(arc.e1), g(arc.e2));
}

namespace {

// Unit tangent of the arc at p pointing towards its far endpoint.
Complex tangent_at(Complex p, const Geodesic& g) {
  Complex far = (std::abs(g.e1 - p) > std::abs(g.e2 - p)) ? g.e1 : g.e2;
  Complex t;
  if (g.kind == Geodesic::Kind::Diameter) {
    t = far - p;
  } else {
    Complex radial = p - g.center;
    t = Complex(0, 1) * radial;  // tangent to the circle
    if (std::real(std::conj(t) * (far - p)) < 0) t = -t;
  }
  return t / std::abs(t);
}

}  // namespace

double angle_between(Complex p, const Geodesic& g1, const Geodesic& g2) {
  Complex t1 = tangent_at(p, g1);
  Complex t2 = tangent_at(p, g2);
  double c = std::clamp(std::real(std::conj(t1) * t2), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace rectsurf
