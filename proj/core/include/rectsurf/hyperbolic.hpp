#pragma once

// Exact-as-possible arithmetic for Moebius and anti-Moebius maps of the unit
// disk: points, geodesics, distances and midpoints in the Poincare model.

#include <complex>
#include <optional>

#include "rectsurf/errors.hpp"

namespace rectsurf {

using Complex = std::complex<double>;

inline constexpr double kBoundaryTol = 1e-12;  // ideal points on |z| = 1
inline constexpr double kMatrixTol = 1e-10;

/// Point strictly inside the unit disk.
struct DiskPoint {
  Complex z;

  DiskPoint() : z(0.0) {}
  explicit DiskPoint(Complex w);
  DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}

  double re() const { return z.real(); }
  double im() const { return z.imag(); }
};

/// Ideal point, |z| = 1 within kBoundaryTol.
struct BoundaryPoint {
  Complex z;

  explicit BoundaryPoint(Complex w);
};

/// Unit-determinant 2x2 complex matrix acting on the disk as
/// z -> (a z + b) / (c z + d).
struct Moebius {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  Moebius() = default;
  Moebius(Complex a_, Complex b_, Complex c_, Complex d_)
      : a(a_), b(b_), c(c_), d(d_) {}

  static Moebius identity() { return {}; }
  /// SU(1,1) element [[a, b], [conj(b), conj(a)]] with |a|^2 - |b|^2 = 1.
  static Moebius su11(Complex a_, Complex b_);

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  /// Trace normalized to real part >= 0 (PSL sign convention).
  Complex trace_normalized() const;

  Moebius operator*(const Moebius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Moebius inverse() const { return {d, -b, -c, a}; }

  Complex operator()(Complex z) const { return (a * z + b) / (c * z + d); }
  DiskPoint operator()(DiskPoint p) const { return DiskPoint((*this)(p.z)); }

  bool is_su11(double tol = kMatrixTol) const;
  void require_unit_det(double tol = kMatrixTol) const;
};

/// Entrywise comparison up to the PSL sign ambiguity.
bool approx_equal_up_to_sign(const Moebius& g, const Moebius& h,
                             double tol = kMatrixTol);

/// Orientation-reversing map z -> inner(conj(z)).
struct AntiMoebius {
  Moebius inner;

  static AntiMoebius conjugation() { return {Moebius::identity()}; }

  Complex operator()(Complex z) const { return inner(std::conj(z)); }

  AntiMoebius operator*(const Moebius& g) const;   // this after g
  friend AntiMoebius operator*(const Moebius& g, const AntiMoebius& s);
  Moebius operator*(const AntiMoebius& o) const;   // this after o

  bool is_involution(double tol = kMatrixTol) const;
};

enum class MapClass { Hyperbolic, Parabolic, Elliptic };

/// Standard trace trichotomy; identity and trace-2 cases count as parabolic.
MapClass classify_map(const Moebius& g);

/// 2 arccosh(|trace|/2) for a hyperbolic element.
double translation_length(const Moebius& g);

/// Poincare distance, cosh d = 1 + 2|z-w|^2 / ((1-|z|^2)(1-|w|^2)).
double disk_distance(const DiskPoint& z, const DiskPoint& w);

/// Geodesic in the disk: a diameter, or an arc of a circle orthogonal to the
/// unit circle (|center|^2 = radius^2 + 1). Endpoints may be ideal.
struct Geodesic {
  enum class Kind { Diameter, Circular };
  Kind kind = Kind::Diameter;
  Complex center{0.0};  // circular case only
  double radius = 0.0;
  Complex e1{0.0}, e2{0.0};

  bool contains(Complex z, double tol = 1e-9) const;
};

/// Geodesic through two distinct points of the closed disk.
Geodesic geodesic_through(Complex z, Complex w);
inline Geodesic geodesic_through(const DiskPoint& z, const DiskPoint& w) {
  return geodesic_through(z.z, w.z);
}

/// Axis of a hyperbolic element: the geodesic joining its boundary fixed
/// points.
Geodesic axis_of(const Moebius& g);

/// Hyperbolic midpoint of z and w.
DiskPoint midpoint(const DiskPoint& z, const DiskPoint& w);

/// Point at hyperbolic distance s from z towards w along their geodesic.
DiskPoint point_towards(const DiskPoint& z, const DiskPoint& w, double s);

/// Image of a geodesic (arc endpoints mapped, circle data rebuilt).
Geodesic map_geodesic(const Moebius& g, const Geodesic& arc);

/// Interior angle at p between the arcs (p, q1) and (p, q2), measured along
/// the geodesics through the given endpoint pairs. Returns a value in [0, pi].
double angle_between(Complex p, const Geodesic& g1, const Geodesic& g2);

/// SU(1,1) translation taking 0 to p (axis through 0 and p).
Moebius translation_to(const DiskPoint& p);

}  // namespace rectsurf
