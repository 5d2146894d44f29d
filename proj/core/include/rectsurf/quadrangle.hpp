#pragma once

// Equiquadrangle generators: the side-pairing matrices of a hyperbolic
// quadrangle with four equal interior angles pi/n (or zero), the twist
// matrix, the center involution, the vertex geometry and the Lambert
// quadrilateral length relations.

#include <array>
#include <optional>

#include "rectsurf/hyperbolic.hpp"

namespace rectsurf {

/// (L, angle pi/n or zero, fractional twist t along the axis of A).
/// L = cosh(ell/2) where ell is the hyperbolic length of the horizontal
/// median of the quadrangle.
struct QuadrangleSpec {
  double L = 2.0;
  int n = 4;  // 0 encodes the zero-angle (ideal vertex) case
  double twist = 0.0;

  QuadrangleSpec() = default;
  QuadrangleSpec(double L_, int n_, double twist_ = 0.0);

  bool zero_angle() const { return n == 0; }
  /// Interior angle of the quadrangle at each vertex (0 for the ideal case).
  double angle() const;
};

/// L' such that the A/B pair closes up with equal angles pi/n.
double l_prime(const QuadrangleSpec& spec);

struct GeneratorPair {
  Moebius A;
  Moebius B;               // untwisted vertical side pairing
  std::optional<Moebius> T;  // twist matrix, present when twist != 0
  Moebius e1;              // order-2 elliptic at the center of symmetry

  /// Effective vertical pairing T*B (equals B when untwisted).
  Moebius B_eff() const { return T ? (*T * B) : B; }
};

GeneratorPair build_generators(const QuadrangleSpec& spec);

/// Special families with known period parallelograms.
enum class SpecialCase { Square, Hexagonal, Half };

/// Square: L = sqrt(cos(pi/n)+1); hexagonal: tau = (1+i sqrt3)/2; half:
/// tau = 1/2 + i/2. n = 0 selects the zero-angle member where defined.
GeneratorPair special_generators(SpecialCase c, int n);

struct QuadrangleGeometry {
  // p[i], q[i] are 0-indexed versions of the labels p1..p4, q1..q4:
  // p[0] on R+, p[1] on iR+, q[0] in the first quadrant, counterclockwise.
  std::array<Complex, 4> p;
  std::array<Complex, 4> q;
  std::array<Geodesic, 4> edges;  // right, top, left, bottom
  bool ideal_vertices = false;

  // Twisted domain data (images under T), valid when built with twist != 0.
  Complex q1p{0.0}, q2p{0.0}, p2p{0.0};
};

QuadrangleGeometry vertex_geometry(const QuadrangleSpec& spec);

/// cosh-distances between the marked points of the angle-pi/4 quadrangle.
struct LambertLengths {
  double L1, L2, L3, L4;
  double L2t, L4t;  // twisted counterparts, functions of Tw
};

/// Only defined for n = 4 (throws WrongAngle otherwise).
LambertLengths lambert_lengths(const QuadrangleSpec& spec);

/// arccosh(L sin(pi/n)); throws DomainError when the argument is < 1.
double side_arc_length(const QuadrangleSpec& spec);

/// cosh(t * arccosh(L)) of the twist matrix.
double twist_cosh(const QuadrangleSpec& spec);

}  // namespace rectsurf
