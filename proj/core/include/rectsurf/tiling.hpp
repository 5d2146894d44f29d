#pragma once

// Combinatorial model of surfaces obtained from unit squares glued along
// edges by translations and half-turns: admissibility diagnostics, cone
// points and strata, cylinder decompositions, genus, enumeration of the
// balanced four-square surfaces, and the T / S shear-rotation action with
// orbit partitioning.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rectsurf/errors.hpp"

namespace rectsurf {

enum class Side : uint8_t { Top, Bottom, Left, Right };
enum class PairKind : uint8_t { Translation, HalfTurn };

Side opposite(Side s);
const char* side_name(Side s);

struct EdgeRef {
  int square;
  Side side;
  bool operator==(const EdgeRef&) const = default;
};

struct Pairing {
  EdgeRef a, b;
  PairKind kind;
};

/// Squares on an integer grid plus pairings of the exterior edges. Interior
/// shared edges are implicit identity gluings.
struct RectTiling {
  int count = 0;
  std::vector<std::array<int, 2>> arrangement;  // grid cell per square
  std::vector<Pairing> pairings;
};

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks (a) the arrangement is an edge-connected, simply connected
/// polyomino, (b) it stays simply connected with the lattice vertices
/// removed (no corner-only contact, no four squares around a vertex),
/// (c) the pairing rules.
Diagnostics validate_tiling(const RectTiling& t);

/// Abstract gluing data: every edge slot of every square matched. The
/// planar arrangement is forgotten; this is what isomorphism, canonical
/// forms and the T/S action operate on.
struct SurfaceComplex {
  struct Half {
    int square = -1;
    Side side = Side::Top;
    PairKind kind = PairKind::Translation;
  };
  int count = 0;
  // match[s][side index] = glued half-edge
  std::vector<std::array<Half, 4>> match;

  Half at(int s, Side sd) const { return match[s][static_cast<int>(sd)]; }
  void set(int s, Side sd, Half h) { match[s][static_cast<int>(sd)] = h; }
};

SurfaceComplex to_complex(const RectTiling& t);

/// Deterministic admissible planar presentation of a complex.
RectTiling replanarize(const SurfaceComplex& c);

/// Lexicographically least relabeling encoding over all base squares.
std::vector<int> canonical_encoding(const SurfaceComplex& c);
bool is_isomorphic(const RectTiling& a, const RectTiling& b);
RectTiling canonical_tiling(const RectTiling& t);

struct Stratum {
  enum class Flavor { Abelian, Quadratic };
  Flavor flavor = Flavor::Abelian;
  std::vector<int> zero_orders;  // descending, order-0 points dropped

  bool operator==(const Stratum&) const = default;
  std::string name() const;  // "H(1,1)", "Q(2,2)", "H()" for the torus
};

struct VertexAnalysis {
  // One entry per vertex class: number of quarter-turn corners around it.
  std::vector<int> corner_counts;
  // total cone angle of class i is corner_counts[i] * pi/2
  Stratum stratum;
  int m = 2;  // lcm of the half corner counts: angle condition modulus
  bool balanced = false;
  // corner cycles as (square, corner) pairs; corner 0..3 = NE,NW,SW,SE
  std::vector<std::vector<std::pair<int, int>>> cycles;
};

VertexAnalysis vertex_analysis(const RectTiling& t);

enum class Direction { Horizontal, Vertical };

struct CylinderDecomposition {
  Direction direction;
  std::vector<int> widths;
  // traversal per cylinder: (square, flipped relative to cylinder frame)
  std::vector<std::vector<std::pair<int, bool>>> cells;
};

CylinderDecomposition cylinder_decomposition(const RectTiling& t,
                                             Direction dir);
int genus(const RectTiling& t);

/// All balanced surfaces from `squares` unit squares whose vertices form
/// exactly two classes of angle 4 pi, up to isomorphism, sorted by
/// canonical encoding.
std::vector<RectTiling> enumerate_balanced(int squares);
std::vector<RectTiling> enumerate_balanced_four();

/// Horizontal unit shear (cylinder-wise re-cut) and 90-degree rotation;
/// both return canonical presentations.
RectTiling act_T(const RectTiling& t, int power = 1);
RectTiling act_S(const RectTiling& t);

/// Partition of the list into orbits under {T, T^-1, S}.
std::vector<std::vector<int>> orbit_partition(
    const std::vector<RectTiling>& list);

/// Staircase families.
enum class Family { St1, St2, Esc1, Esc2, Escb1, Escb2 };
Family family_from_name(const std::string& name);
const char* family_name(Family f);

/// Number of squares and parity rules per family; throws BadParity.
RectTiling family_tiling(Family f, int g);

/// JSON encoding per the fixed schema.
std::string tiling_to_json(const RectTiling& t);
RectTiling tiling_from_json(const std::string& text);

}  // namespace rectsurf
