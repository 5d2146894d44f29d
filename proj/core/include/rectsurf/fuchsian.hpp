#pragma once

// Side-pairing words over {h, v, r} derived from a tiling, their matrix
// instantiation over the equiquadrangle generators, the laid-out fundamental
// domain, and the numerical Poincare conditions.

#include <string>
#include <vector>

#include "rectsurf/quadrangle.hpp"
#include "rectsurf/tiling.hpp"

namespace rectsurf {

enum class Letter : int8_t { H, Hi, V, Vi, R };

using PairingWord = std::vector<Letter>;

PairingWord reduce_word(PairingWord w);
PairingWord invert_word(const PairingWord& w);
std::string word_text(const PairingWord& w);
PairingWord parse_word(const std::string& text);

/// Word for each exterior pairing of the tiling, in pairing order: spanning
/// tree path to the edge's square, the elementary crossing, and the inverse
/// path of the partner square.
std::vector<PairingWord> derive_pairing_words(const RectTiling& t);

/// Side-pairing word lists of the staircase families.
std::vector<PairingWord> family_words(Family f, int g);

struct FuchsianPresentation {
  std::vector<PairingWord> words;
  std::vector<Moebius> matrices;
  QuadrangleSpec spec;
  Stratum::Flavor flavor = Stratum::Flavor::Abelian;
  std::string convention;
};

/// Word evaluation: h -> A, v -> T*B (or B untwisted), r -> e1.
Moebius evaluate_word(const PairingWord& w, const GeneratorPair& gen);

/// Checks the angle condition n = 0 mod m before instantiating.
FuchsianPresentation instantiate(const std::vector<PairingWord>& words,
                                 const QuadrangleSpec& spec,
                                 Stratum::Flavor flavor, int m);

/// Copies of the base quadrangle placed by the spanning-tree development.
struct DomainLayout {
  QuadrangleGeometry base;
  QuadrangleSpec spec;
  std::vector<Moebius> placement;  // per square
  std::vector<PairingWord> tree_words;

  Complex corner(int square, int corner_index) const;  // 0..3 = NE,NW,SW,SE
  Geodesic edge(int square, Side side) const;
};

DomainLayout layout_fundamental_domain(const RectTiling& t,
                                       const QuadrangleSpec& spec);

/// Words + matrices + layout for a tiling in one step.
struct TilingGroup {
  FuchsianPresentation presentation;
  DomainLayout layout;
  RectTiling tiling;
};
TilingGroup build_group(const RectTiling& t, const QuadrangleSpec& spec);

struct PoincareReport {
  bool clean = false;
  std::vector<double> edge_errors;   // per generator
  std::vector<int> matched_pairing;  // pairing index each generator maps
  double max_edge_error = 0.0;
  std::vector<double> vertex_angle_sums;
  std::vector<int> vertex_orders;  // p with angle sum = 2 pi / p
  double max_vertex_deviation = 0.0;
  bool interiors_disjoint = true;
  std::vector<std::string> failures;
};

/// aligned = generators indexed like t.pairings (derive_pairing_words
/// output); otherwise each generator searches the layout for the edge pair
/// it carries.
PoincareReport verify_poincare(const FuchsianPresentation& p,
                               const DomainLayout& layout, const RectTiling& t,
                               bool aligned = true, double edge_tol = 1e-8,
                               double vertex_tol = 1e-8);

double word_geodesic_length(const PairingWord& w, const QuadrangleSpec& spec,
                            Stratum::Flavor flavor = Stratum::Flavor::Abelian);

/// SVG rendering of the fundamental domain; paired edges share a color.
std::string layout_svg(const DomainLayout& layout, const RectTiling& t);

}  // namespace rectsurf
