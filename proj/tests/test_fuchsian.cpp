#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "rectsurf/fuchsian.hpp"

using namespace rectsurf;

namespace {

RectTiling l_shape_cover() {
  RectTiling t;
  t.count = 3;
  t.arrangement = {{0, 0}, {1, 0}, {0, 1}};
  t.pairings = {
      {{1, Side::Right}, {0, Side::Left}, PairKind::Translation},
      {{2, Side::Right}, {2, Side::Left}, PairKind::Translation},
      {{2, Side::Top}, {0, Side::Bottom}, PairKind::Translation},
      {{1, Side::Top}, {1, Side::Bottom}, PairKind::Translation},
  };
  return t;
}

RectTiling one_square_torus() {
  RectTiling t;
  t.count = 1;
  t.arrangement = {{0, 0}};
  t.pairings = {{{0, Side::Top}, {0, Side::Bottom}, PairKind::Translation},
                {{0, Side::Left}, {0, Side::Right}, PairKind::Translation}};
  return t;
}

bool same_up_to_inverse(const PairingWord& w, const std::string& text) {
  PairingWord e = parse_word(text);
  return w == e || w == invert_word(e);
}

}  // namespace

TEST_CASE("pairing words from tilings") {
  SUBCASE("torus") {
    auto words = derive_pairing_words(one_square_torus());
    REQUIRE(words.size() == 2);
    CHECK(same_up_to_inverse(words[0], "v"));
    CHECK(same_up_to_inverse(words[1], "h"));
  }
  SUBCASE("three-square L cover") {
    auto words = derive_pairing_words(l_shape_cover());
    REQUIRE(words.size() == 4);
    std::set<std::string> got;
    for (const auto& w : words) got.insert(word_text(w));
    // h^2, v^2, h v h^-1, v h v^-1 up to inversion
    std::set<std::string> expect = {"h h", "v v", "h v h^-1", "v h v^-1"};
    for (const auto& e : expect) {
      bool found = false;
      for (const auto& w : words)
        if (same_up_to_inverse(w, e)) found = true;
      CHECK_MESSAGE(found, e);
    }
  }
  SUBCASE("generator counts match the family word lists") {
    struct Row { Family f; int g; size_t count; };
    for (Row r : {Row{Family::St1, 2, 5}, Row{Family::St2, 2, 4},
                  Row{Family::Esc1, 3, 9}, Row{Family::Esc2, 3, 7},
                  Row{Family::Escb1, 2, 7}, Row{Family::Escb2, 2, 5}}) {
      CHECK(derive_pairing_words(family_tiling(r.f, r.g)).size() == r.count);
      CHECK(family_words(r.f, r.g).size() == r.count);
    }
  }
}

TEST_CASE("word utilities") {
  PairingWord w = parse_word("h v v^-1 r r h^-1 h");
  CHECK(word_text(reduce_word(w)) == "h");  // cascading cancellations
  CHECK(word_text(invert_word(parse_word("h v r"))) == "r v^-1 h^-1");
}

TEST_CASE("instantiation and the angle condition") {
  auto t = family_tiling(Family::St1, 2);
  auto va = vertex_analysis(t);
  CHECK(va.m == 4);
  auto words = derive_pairing_words(t);
  CHECK_NOTHROW(instantiate(words, QuadrangleSpec(1.3, 4), va.stratum.flavor,
                            va.m));
  CHECK_NOTHROW(instantiate(words, QuadrangleSpec(1.3, 8), va.stratum.flavor,
                            va.m));
  CHECK_THROWS_AS(instantiate(words, QuadrangleSpec(1.3, 3),
                              va.stratum.flavor, va.m),
                  AngleConditionViolated);
  // zero angle always satisfies the condition
  CHECK_NOTHROW(instantiate(words, QuadrangleSpec(1.3, 0), va.stratum.flavor,
                            va.m));
}

TEST_CASE("Poincare verification across the families") {
  struct Row { Family f; int g; int n; };
  for (Row r : {Row{Family::St1, 2, 4}, Row{Family::St2, 2, 6},
                Row{Family::Esc1, 3, 4}, Row{Family::Esc2, 3, 6},
                Row{Family::Escb1, 2, 3}, Row{Family::Escb2, 2, 4}}) {
    CAPTURE(family_name(r.f));
    RectTiling t = family_tiling(r.f, r.g);
    TilingGroup tg = build_group(t, QuadrangleSpec(1.3, r.n));
    auto rep = verify_poincare(tg.presentation, tg.layout, t, true);
    CHECK(rep.clean);
    CHECK(rep.max_edge_error < 1e-8);
    CHECK(rep.max_vertex_deviation < 1e-8);
    for (int p : rep.vertex_orders) CHECK(p == 1);  // smooth at n = m

    // the family word lists give a clean report on the same domain
    auto fw = family_words(r.f, r.g);
    auto pres = instantiate(fw, tg.presentation.spec,
                            tg.presentation.flavor, vertex_analysis(t).m);
    auto rep2 = verify_poincare(pres, tg.layout, t, false);
    CHECK(rep2.clean);
  }
}

TEST_CASE("negative control: corrupted word fails edge matching") {
  RectTiling t = family_tiling(Family::St1, 2);
  auto va = vertex_analysis(t);
  auto words = derive_pairing_words(t);
  words[0] = invert_word(words[0]);
  words[0].push_back(Letter::H);  // now matches no pairing
  auto pres = instantiate(words, QuadrangleSpec(1.3, 4), va.stratum.flavor,
                          va.m);
  auto lay = layout_fundamental_domain(t, QuadrangleSpec(1.3, 4));
  auto rep = verify_poincare(pres, lay, t, true);
  CHECK_FALSE(rep.clean);
  CHECK(rep.max_edge_error > 1e-4);
}

TEST_CASE("orbifold points when n is a proper multiple of m") {
  RectTiling t = family_tiling(Family::St1, 2);
  TilingGroup tg = build_group(t, QuadrangleSpec(1.3, 8));
  auto rep = verify_poincare(tg.presentation, tg.layout, t, true);
  CHECK(rep.clean);
  for (int p : rep.vertex_orders) CHECK(p == 2);  // angle sums 2 pi / 2
}

TEST_CASE("word geodesic lengths") {
  QuadrangleSpec spec(std::sqrt(2.0), 4);
  CHECK(word_geodesic_length(parse_word("h"), spec) ==
        doctest::Approx(2.0 * std::acosh(spec.L)).epsilon(1e-12));
  GeneratorPair gen = build_generators(spec);
  double tr = std::abs((gen.A * gen.B).trace_normalized());
  CHECK(word_geodesic_length(parse_word("h v"), spec) ==
        doctest::Approx(2.0 * std::acosh(tr / 2.0)).epsilon(1e-12));
  // a vertex cycle word is elliptic
  CHECK_THROWS_AS(word_geodesic_length(
                      parse_word("h v h^-1 v^-1"),
                      QuadrangleSpec(1.3, 4)),
                  NotHyperbolic);
}

TEST_CASE("generator traces are reproducible functions of L") {
  // Regression values frozen from the matrix arithmetic at two L values:
  // the first generator's trace and the sum over all generators.
  auto trace0 = [](Family f, int g, double L, int n) {
    auto t = family_tiling(f, g);
    auto tg = build_group(t, QuadrangleSpec(L, n));
    return std::abs(tg.presentation.matrices[0].trace_normalized());
  };
  CHECK(trace0(Family::St1, 2, 1.3, 4) ==
        doctest::Approx(2.626509228).epsilon(1e-8));
  CHECK(trace0(Family::St1, 2, 1.7, 4) ==
        doctest::Approx(2.249044477).epsilon(1e-8));
  CHECK(trace0(Family::Escb2, 2, 1.3, 4) ==
        doctest::Approx(4.828778463).epsilon(1e-8));
  CHECK(trace0(Family::Escb2, 2, 1.7, 4) ==
        doctest::Approx(5.407069642).epsilon(1e-8));

  struct Frozen { Family f; int g, n; double L, sum; };
  for (Frozen r : {Frozen{Family::St1, 2, 4, 1.3, 19.671569181},
                   Frozen{Family::St1, 2, 4, 1.7, 26.676290012},
                   Frozen{Family::St2, 2, 6, 1.3, 16.597086561},
                   Frozen{Family::St2, 2, 6, 1.7, 18.911048948},
                   Frozen{Family::Esc1, 3, 4, 1.3, 185.416506448},
                   Frozen{Family::Esc1, 3, 4, 1.7, 347.441804294},
                   Frozen{Family::Esc2, 3, 6, 1.3, 94.087896945},
                   Frozen{Family::Esc2, 3, 6, 1.7, 135.137695352},
                   Frozen{Family::Escb1, 2, 3, 1.3, 37.597101449},
                   Frozen{Family::Escb1, 2, 3, 1.7, 57.916402116},
                   Frozen{Family::Escb2, 2, 4, 1.3, 24.076107652},
                   Frozen{Family::Escb2, 2, 4, 1.7, 32.992340343}}) {
    auto tg = build_group(family_tiling(r.f, r.g), QuadrangleSpec(r.L, r.n));
    double sum = 0.0;
    for (const auto& m : tg.presentation.matrices)
      sum += std::abs(m.trace_normalized());
    CHECK(sum == doctest::Approx(r.sum).epsilon(1e-9));
  }
}

TEST_CASE("SVG emission") {
  RectTiling t = family_tiling(Family::St1, 2);
  TilingGroup tg = build_group(t, QuadrangleSpec(1.3, 4));
  std::string svg = layout_svg(tg.layout, t);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("viewBox=\"-1.05 -1.05 2.1 2.1\"") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
  // deterministic
  CHECK(svg == layout_svg(tg.layout, t));
}
