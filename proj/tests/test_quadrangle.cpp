#include <cmath>

#include "doctest.h"
#include "rectsurf/quadrangle.hpp"

using namespace rectsurf;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("generator matrices and L'") {
  SUBCASE("square symmetry forces L' = L") {
    double L = std::sqrt(std::cos(kPi / 4.0) + 1.0);
    CHECK(l_prime(QuadrangleSpec(L, 4)) == doctest::Approx(L).epsilon(1e-12));
  }
  SUBCASE("zero angle") {
    CHECK(l_prime(QuadrangleSpec(std::sqrt(2.0), 0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("n = 3, L = 3/2") {
    QuadrangleSpec s(1.5, 3);
    GeneratorPair g = build_generators(s);
    CHECK(g.A.trace().real() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(l_prime(s) * l_prime(s) == doctest::Approx(1.2).epsilon(1e-12));
  }
  SUBCASE("axes of A and B") {
    GeneratorPair g = build_generators(QuadrangleSpec(1.4, 4));
    Geodesic ax = axis_of(g.A);
    CHECK(std::abs(ax.e1.imag()) < 1e-10);
    Geodesic bx = axis_of(g.B);
    CHECK(std::abs(bx.e1.real()) < 1e-10);
  }
  CHECK_THROWS_AS(QuadrangleSpec(0.9, 4), ImaginaryLPrime);
}

TEST_CASE("special generator families") {
  SUBCASE("hexagonal zero angle matches the closed form") {
    GeneratorPair g = special_generators(SpecialCase::Hexagonal, 0);
    CHECK(g.A.a.real() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(g.A.b.real() ==
          doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-14));
    CHECK(g.B.b.real() ==
          doctest::Approx(3.0 * std::sqrt(5.0) / 10.0).epsilon(1e-13));
    CHECK(g.B.b.imag() ==
          doctest::Approx(4.0 * std::sqrt(5.0) / 10.0).epsilon(1e-13));
    CHECK(g.B.a.real() == doctest::Approx(1.5).epsilon(1e-13));
  }
  SUBCASE("square case trace") {
    GeneratorPair g = special_generators(SpecialCase::Square, 0);
    CHECK(g.A.trace().real() ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  }
  SUBCASE("half case traces") {
    int n = 4;
    double L = std::sqrt(std::cos(kPi / n) + 1.0);
    GeneratorPair g = special_generators(SpecialCase::Half, n);
    CHECK(g.A.trace().real() == doctest::Approx(2.0 * L * L).epsilon(1e-13));
    CHECK(g.B.trace().real() == doctest::Approx(2.0 * L).epsilon(1e-13));
  }
  CHECK_THROWS_AS(special_generators(SpecialCase::Half, 2), UnsupportedCase);
}

TEST_CASE("commutator signature") {
  // angle pi/n quadrangles close into signature (1; n/2); the commutator is
  // elliptic with |trace| = 2 cos(2 pi / n), parabolic in the zero limit.
  for (int n : {4, 6, 8}) {
    GeneratorPair g = build_generators(QuadrangleSpec(1.3, n));
    Moebius k = g.A * g.B * g.A.inverse() * g.B.inverse();
    CHECK(std::abs(k.trace_normalized()) ==
          doctest::Approx(2.0 * std::cos(2.0 * kPi / n)).epsilon(1e-9));
  }
  GeneratorPair g = build_generators(QuadrangleSpec(1.7, 0));
  Moebius k = g.A * g.B * g.A.inverse() * g.B.inverse();
  CHECK(std::abs(k.trace_normalized()) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("vertex geometry") {
  QuadrangleSpec s(std::sqrt(2.0), 4);
  QuadrangleGeometry geo = vertex_geometry(s);
  CHECK(geo.p[0].real() ==
        doctest::Approx(std::tanh(std::acosh(s.L) / 2.0)).epsilon(1e-13));
  // interior angle at q1 equals the quadrangle angle pi/n for every L
  double ang = angle_between(geo.q[0], geo.edges[0], geo.edges[1]);
  CHECK(ang == doctest::Approx(kPi / 4.0).epsilon(1e-9));
  // reflection symmetries at zero twist
  CHECK(std::abs(geo.q[3] - std::conj(geo.q[0])) < 1e-12);
  CHECK(std::abs(geo.q[1] + std::conj(geo.q[0])) < 1e-12);
  // translation length of A between opposite edge midpoints
  CHECK(disk_distance(DiskPoint(geo.p[0]), DiskPoint(geo.p[2])) ==
        doctest::Approx(2.0 * std::acosh(s.L)).epsilon(1e-11));

  SUBCASE("other angles") {
    for (int n : {3, 6, 8}) {
      QuadrangleGeometry g2 = vertex_geometry(QuadrangleSpec(1.25, n));
      CHECK(angle_between(g2.q[0], g2.edges[0], g2.edges[1]) ==
            doctest::Approx(kPi / n).epsilon(1e-8));
    }
  }
  SUBCASE("zero angle puts vertices on the boundary") {
    QuadrangleGeometry g0 = vertex_geometry(QuadrangleSpec(1.5, 0));
    CHECK(std::abs(g0.q[0]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g0.ideal_vertices);
  }
}

TEST_CASE("Lambert quadrilateral length relations") {
  SUBCASE("integral chain L1 = 2") {
    // L1 = 2 needs 2L^2 - 1 = 2
    QuadrangleSpec s(std::sqrt(1.5), 4);
    LambertLengths ll = lambert_lengths(s);
    CHECK(ll.L1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ll.L2 == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(ll.L3 == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(ll.L4 == doctest::Approx(7.0).epsilon(1e-12));
  }
  SUBCASE("no twist reduces the twisted lengths") {
    QuadrangleSpec s(1.4, 4);
    LambertLengths ll = lambert_lengths(s);
    CHECK(ll.L2t == doctest::Approx(ll.L2).epsilon(1e-12));
    CHECK(ll.L4t == doctest::Approx(ll.L4).epsilon(1e-12));
  }
  SUBCASE("formulas match measured distances over a grid") {
    for (double L : {1.2, 1.4, 2.0}) {
      for (double tw : {0.0, 0.25, 0.6}) {
        QuadrangleSpec s(L, 4, tw);
        QuadrangleGeometry geo = vertex_geometry(s);
        LambertLengths ll = lambert_lengths(s);
        auto C = [](Complex a, Complex b) {
          return std::cosh(disk_distance(DiskPoint(a), DiskPoint(b)));
        };
        CHECK(C(geo.p[0], geo.p[2]) == doctest::Approx(ll.L1).epsilon(1e-9));
        CHECK(C(geo.p[1], geo.p[3]) == doctest::Approx(ll.L2).epsilon(1e-9));
        CHECK(C(geo.q[0], geo.q[1]) == doctest::Approx(ll.L3).epsilon(1e-9));
        CHECK(C(geo.q[0], geo.q[3]) == doctest::Approx(ll.L4).epsilon(1e-9));
        CHECK(C(geo.p[3], geo.p2p) == doctest::Approx(ll.L2t).epsilon(1e-9));
        CHECK(C(geo.q[3], geo.q1p) == doctest::Approx(ll.L4t).epsilon(1e-9));
      }
    }
  }
  SUBCASE("q1' is the image of q4 under T B") {
    QuadrangleSpec s(1.4, 4, 0.37);
    QuadrangleGeometry geo = vertex_geometry(s);
    GeneratorPair g = build_generators(s);
    CHECK(std::abs(g.B_eff()(geo.q[3]) - geo.q1p) < 1e-12);
  }
  CHECK_THROWS_AS(lambert_lengths(QuadrangleSpec(1.4, 6)), WrongAngle);
}

TEST_CASE("side arc length formula") {
  // boundary case: the formula argument reaches exactly 1
  CHECK(side_arc_length(QuadrangleSpec(std::sqrt(2.0), 4)) ==
        doctest::Approx(0.0).epsilon(1e-7));
  CHECK(side_arc_length(QuadrangleSpec(2.0, 4)) ==
        doctest::Approx(std::acosh(std::sqrt(2.0))).epsilon(1e-12));
  CHECK_THROWS_AS(side_arc_length(QuadrangleSpec(std::sqrt(2.0), 8)),
                  DomainError);
}

TEST_CASE("center involution") {
  QuadrangleSpec s(1.5, 4, 0.4);
  GeneratorPair g = build_generators(s);
  CHECK(approx_equal_up_to_sign(g.e1 * g.e1, Moebius::identity(), 1e-10));
  // e1 conjugates A and the untwisted B to their inverses at zero twist
  GeneratorPair g0 = build_generators(QuadrangleSpec(1.5, 4));
  CHECK(approx_equal_up_to_sign(g0.e1 * g0.A * g0.e1.inverse(),
                                g0.A.inverse(), 1e-10));
  CHECK(approx_equal_up_to_sign(g0.e1 * g0.B * g0.e1.inverse(),
                                g0.B.inverse(), 1e-10));
}
