#include <cmath>

#include "doctest.h"
#include "rectsurf/fenchel_nielsen.hpp"

using namespace rectsurf;

TEST_CASE("family coordinate charts") {
  double ell = 1.8, tw = 0.2;
  auto A = fn_for_family(OrbitFamily::A, ell, tw);
  auto B = fn_for_family(OrbitFamily::B, ell, tw);
  auto C = fn_for_family(OrbitFamily::C, ell, tw);
  auto D = fn_for_family(OrbitFamily::D, ell, tw);
  REQUIRE(A.entries.size() == 3);
  double ellp = 2.0 * std::acosh(2.0 * std::cosh(ell / 2.0) + 1.0);
  CHECK(A.entries[2].length == doctest::Approx(ellp).epsilon(1e-13));
  CHECK(A.entries[0].twist == doctest::Approx(tw));
  CHECK(A.entries[2].twist == doctest::Approx(0.0));
  CHECK(B.entries[2].twist == doctest::Approx(0.5));
  CHECK(C.entries[0].twist == doctest::Approx(tw + 0.5));
  CHECK(C.entries[2].twist == doctest::Approx(0.0));
  // D differs from A by a half twist in the first and third entries
  CHECK(D.entries[0].twist - A.entries[0].twist == doctest::Approx(0.5));
  CHECK(D.entries[1].twist - A.entries[1].twist == doctest::Approx(0.0));
  CHECK(D.entries[2].twist - A.entries[2].twist == doctest::Approx(0.5));

  SUBCASE("length chain through the Lambert relations") {
    // width-2 cylinders: cosh(ell/2) = 2 L^2 - 1, then the third curve has
    // cosh(ell'/2) = 2 cosh(ell/2) + 1
    double L = std::sqrt(2.0);
    double ell2 = 2.0 * std::acosh(2.0 * L * L - 1.0);
    auto fn = fn_for_family(OrbitFamily::A, ell2, 0.0);
    CHECK(std::cosh(fn.entries[2].length / 2.0) ==
          doctest::Approx(7.0).epsilon(1e-12));
  }
}

TEST_CASE("orbit chart from a tiling") {
  SUBCASE("case C cylinders have lengths 3 ell and ell") {
    // class C representative: half twist along gamma2 from the stairs
    RectTiling c =
        half_twist_tiling(family_tiling(Family::St1, 2), TwistCurve::Gamma2);
    QuadrangleSpec spec(1.3, 4, 0.37);
    auto fn = fn_for_orbit(c, spec, {});
    REQUIRE(fn.entries.size() == 2);
    double ell = 2.0 * std::acosh(spec.L);
    double l0 = fn.entries[0].length, l1 = fn.entries[1].length;
    CHECK(std::max(l0, l1) == doctest::Approx(3.0 * ell).epsilon(1e-12));
    CHECK(std::min(l0, l1) == doctest::Approx(ell).epsilon(1e-12));
    // twist increments under t = 1 equal 1 / n_i
    for (const auto& e : fn.entries)
      CHECK(e.twist ==
            doctest::Approx(spec.twist / e.cylinder_width).epsilon(1e-13));
  }
  SUBCASE("extra curves get word lengths") {
    RectTiling t = family_tiling(Family::St1, 2);
    QuadrangleSpec spec(1.3, 4);
    auto fn = fn_for_orbit(t, spec, {parse_word("h v")});
    REQUIRE(fn.entries.size() == 3);
    CHECK(fn.entries[2].cylinder_width == 0);
    CHECK(fn.entries[2].length ==
          doctest::Approx(word_geodesic_length(parse_word("h v"), spec)));
    CHECK_FALSE(fn.entries[2].twist_known);
  }
  SUBCASE("torus has no pants curves") {
    RectTiling t;
    t.count = 1;
    t.arrangement = {{0, 0}};
    t.pairings = {{{0, Side::Top}, {0, Side::Bottom}, PairKind::Translation},
                  {{0, Side::Left}, {0, Side::Right}, PairKind::Translation}};
    CHECK(fn_for_orbit(t, QuadrangleSpec(1.3, 4), {}).entries.empty());
  }
  SUBCASE("unbalanced tilings are rejected") {
    // four squares in a row with one 2 pi vertex class and one of higher
    // order: gluing the first two columns straight up is the forbidden
    // pattern that leaves a regular vertex
    RectTiling t;
    t.count = 4;
    t.arrangement = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    t.pairings = {{{3, Side::Right}, {0, Side::Left}, PairKind::Translation},
                  {{0, Side::Top}, {0, Side::Bottom}, PairKind::Translation},
                  {{1, Side::Top}, {1, Side::Bottom}, PairKind::Translation},
                  {{2, Side::Top}, {3, Side::Bottom}, PairKind::Translation},
                  {{3, Side::Top}, {2, Side::Bottom}, PairKind::Translation}};
    REQUIRE(validate_tiling(t).ok);
    REQUIRE_FALSE(vertex_analysis(t).balanced);
    CHECK_THROWS_AS(fn_for_orbit(t, QuadrangleSpec(1.3, 4), {}), NotBalanced);
  }
}

TEST_CASE("fractional twists") {
  auto fn = fn_for_family(OrbitFamily::A, 2.0, 0.0);
  auto once = fractional_twist(fn, Direction::Horizontal);
  CHECK(once.entries[0].twist == doctest::Approx(0.5));
  CHECK(once.entries[1].twist == doctest::Approx(0.5));
  CHECK(once.entries[2].twist == doctest::Approx(0.0));

  SUBCASE("inverse composes to the identity") {
    auto back = fractional_twist(once, Direction::Horizontal, -1);
    for (size_t i = 0; i < fn.entries.size(); ++i)
      CHECK(back.entries[i].twist ==
            doctest::Approx(fn.entries[i].twist).epsilon(1e-14));
  }
  SUBCASE("n_i * lcm applications give integer twists") {
    auto cur = fn;
    for (int k = 0; k < 2 * 2; ++k)  // widths are 2, lcm covered by 4
      cur = fractional_twist(cur, Direction::Horizontal);
    for (const auto& e : cur.entries)
      if (e.cylinder_width > 0)
        CHECK(std::abs(e.twist - std::lround(e.twist)) < 1e-12);
  }
  SUBCASE("wrong chart direction throws") {
    CHECK_THROWS_AS(fractional_twist(fn, Direction::Vertical),
                    MissingMarkers);
  }
}

TEST_CASE("half twist regluings") {
  RectTiling A = canonical_tiling(family_tiling(Family::St1, 2));
  RectTiling B = canonical_tiling(family_tiling(Family::Escb2, 2));

  SUBCASE("gamma swaps the staircase patterns") {
    RectTiling img = half_twist_tiling(A, TwistCurve::Gamma);
    CHECK(is_isomorphic(img, B));
    RectTiling back = half_twist_tiling(img, TwistCurve::Gamma);
    CHECK(is_isomorphic(back, A));  // involution
    // stratum jumps across the twist
    CHECK(vertex_analysis(A).stratum.name() == "H(1,1)");
    CHECK(vertex_analysis(img).stratum.name() == "Q(2,2)");
  }
  SUBCASE("gamma at higher genus") {
    RectTiling s3 = family_tiling(Family::St1, 3);
    RectTiling img = half_twist_tiling(s3, TwistCurve::Gamma);
    CHECK(is_isomorphic(img, family_tiling(Family::Esc2, 3)));
    CHECK(is_isomorphic(half_twist_tiling(img, TwistCurve::Gamma), s3));
  }
  SUBCASE("gamma3 swaps A with B and C with D exactly") {
    CHECK(canonical_encoding(to_complex(half_twist_tiling(
              A, TwistCurve::Gamma3))) == canonical_encoding(to_complex(B)));
    RectTiling C = half_twist_tiling(A, TwistCurve::Gamma2);
    RectTiling D = half_twist_tiling(B, TwistCurve::Gamma2);
    CHECK(canonical_encoding(to_complex(half_twist_tiling(
              C, TwistCurve::Gamma3))) == canonical_encoding(to_complex(D)));
    CHECK(canonical_encoding(to_complex(half_twist_tiling(
              D, TwistCurve::Gamma3))) == canonical_encoding(to_complex(C)));
  }
  SUBCASE("gamma2 is an involution up to isomorphism") {
    RectTiling C = half_twist_tiling(A, TwistCurve::Gamma2);
    CHECK(vertex_analysis(C).stratum.name() == "H(1,1)");
    CHECK(is_isomorphic(half_twist_tiling(C, TwistCurve::Gamma2), A));
  }
  SUBCASE("inapplicable inputs throw") {
    CHECK_THROWS_AS(
        half_twist_tiling(family_tiling(Family::St2, 2), TwistCurve::Gamma),
        NotApplicable);
  }
}

TEST_CASE("trace triples") {
  SUBCASE("zero twist closed form") {
    for (double L : {1.2, 1.5, 2.0}) {
      for (int n : {3, 4, 6}) {
        QuadrangleSpec spec(L, n);
        double Lp = l_prime(spec);
        TraceTriple tt = trace_triple(spec);
        CHECK(tt.x2 == doctest::Approx(4.0 * L * L).epsilon(1e-12));
        CHECK(tt.y2 == doctest::Approx(4.0 * Lp * Lp).epsilon(1e-12));
        CHECK(tt.z2 ==
              doctest::Approx(4.0 * L * L * Lp * Lp).epsilon(1e-12));
      }
    }
    TraceTriple tt = trace_triple(QuadrangleSpec(1.5, 3));
    CHECK(tt.x2 == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(tt.y2 == doctest::Approx(4.8).epsilon(1e-12));
    CHECK(tt.z2 == doctest::Approx(10.8).epsilon(1e-12));
  }
  SUBCASE("twisted reference triples solve back") {
    double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0),
           s6 = std::sqrt(6.0), s7 = std::sqrt(7.0);
    struct Row { double x2, y2, z2; int n; };
    double rho9 = std::cos(2.0 * M_PI / 9.0);
    double rho18 = 1.0 + 2.0 * std::cos(M_PI / 9.0);
    std::vector<Row> rows = {
        {9.0, 6.0, 6.0, 3},
        {3.0 + s7, 4.0 + s7, 5.0 + s7, 3},
        {3.0 + 2.0 * s2, 4.0 + 2.0 * s2, 4.0 + 2.0 * s2, 3},
        {1.0 + 4.0 * rho9 + 4.0 * rho9 * rho9,
         1.0 + 4.0 * rho9 + 4.0 * rho9 * rho9,
         1.0 + 4.0 * rho9 + 4.0 * rho9 * rho9, 3},
        {9.0, 7.0, 7.0, 4},
        {4.0 + 2.0 * s3, 4.0 + 2.0 * s3, 4.0 + 2.0 * s3, 4},
        {3.0 + s6, 5.0 + 2.0 * s6, 6.0 + 2.0 * s6, 4},
        {9.0, 8.0, 8.0, 6},
        {3.5 + 1.5 * s5, 5.0 + 2.0 * s5, 5.0 + 2.0 * s5, 6},
        {3.0 + 2.0 * s2, 6.0 + 4.0 * s2, 6.0 + 4.0 * s2, 6},
        {7.0 + 4.0 * s3, 4.0 + 2.0 * s3, 4.0 + 2.0 * s3, 6},
        {rho18 * rho18, rho18 * rho18, rho18 * rho18, 6},
    };
    for (const Row& r : rows) {
      CAPTURE(r.n);
      CAPTURE(r.x2);
      TripleSolution sol = solve_triple(r.x2, r.y2, r.z2, r.n);
      CHECK(sol.residual < 1e-6);
      CHECK(sol.t >= 0.0);
    }
  }
  SUBCASE("unreachable targets") {
    CHECK_THROWS_AS(solve_triple(3.0, 8.0, 8.0, 4), NoSolution);
    // y below the untwisted minimum 4 L'^2
    CHECK_THROWS_AS(solve_triple(9.0, 4.0, 8.0, 3), NoSolution);
  }
}

TEST_CASE("family chart consistency with measured word lengths") {
  // In the stairs group at angle pi/4 the three pants curves of the family
  // chart are the two cylinder medians (h h around each cylinder) and the
  // curve through the two horizontal end edges (words v and the conjugated
  // v at the top square); cosh(ell'/2) = 2 cosh(ell/2) + 1.
  double L = 1.3;
  QuadrangleSpec spec(L, 4);
  double ell = 2.0 * std::acosh(2.0 * L * L - 1.0);  // width-2 median
  CHECK(word_geodesic_length(parse_word("h h"), spec) ==
        doctest::Approx(ell).epsilon(1e-10));
  double expect = 2.0 * std::acosh(2.0 * std::cosh(ell / 2.0) + 1.0);
  // gamma_3 holonomy: cross the bottom edge of the first square, then the
  // bottom edge of the last one (words v and (hv) h v h^-1 (hv)^-1)
  GeneratorPair gen = build_generators(spec);
  // gamma_3 is freely homotopic to the product of the two cylinder-median
  // classes (the three pants curves bound a pair of pants): h^2 against the
  // conjugated h^2 of the upper cylinder.
  Moebius m = evaluate_word(parse_word("h h h v h^-1 h^-1 v^-1 h^-1"), gen);
  CHECK(std::abs(translation_length(m) - expect) < 1e-8);
}

TEST_CASE("triples CSV") {
  std::string csv =
      triples_csv({QuadrangleSpec(1.5, 3), QuadrangleSpec(1.5, 3, 0.5)});
  CHECK(csv.find("L,n,t,x2,y2,z2") == 0);
  CHECK(csv.find("\n1.5,3,0,9,4.8,10.8\n") != std::string::npos);
  CHECK(csv.find("1.5,3,0.5,9,6,6\n") != std::string::npos);
}
