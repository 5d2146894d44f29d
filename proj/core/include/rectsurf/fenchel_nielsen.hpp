#pragma once

// Fenchel-Nielsen data of rectangle-tiled orbits: the four-square family
// charts, the general cylinder chart, fractional Dehn twists, the half-twist
// correspondence between tilings, and generator trace triples.

#include "rectsurf/fuchsian.hpp"
#include "rectsurf/quadrangle.hpp"
#include "rectsurf/tiling.hpp"

namespace rectsurf {

struct FNEntry {
  double length = 0.0;
  double twist = 0.0;
  bool twist_known = true;  // false marks symbolic/uncomputed twists
  int cylinder_width = 0;   // 0 for non-cylinder pants curves
};

struct FNCoordinates {
  Direction chart = Direction::Horizontal;
  std::vector<FNEntry> entries;
};

enum class OrbitFamily { A, B, C, D };
OrbitFamily orbit_family_from_name(const std::string& name);

/// The four-square family chart: three (length, twist) pairs with
/// cosh(ell'/2) = 2 cosh(ell/2) + 1.
FNCoordinates fn_for_family(OrbitFamily f, double ell, double tw);

/// Cylinder entries (n_i * ell, t / n_i) with the base twists unknown, plus
/// caller-chosen extra curves measured through word lengths (their twists
/// stay uncomputed).
FNCoordinates fn_for_orbit(const RectTiling& t, const QuadrangleSpec& spec,
                           const std::vector<PairingWord>& extra_curves);

/// Adds sign / n_i to every cylinder twist of the chart (the generator of
/// the parabolic direction of the modular action).
FNCoordinates fractional_twist(const FNCoordinates& fn, Direction which,
                               int sign = 1);

enum class TwistCurve { Gamma, Gamma2, Gamma3 };

/// Regluing along the named multi-geodesic: Gamma swaps the staircase
/// patterns (Esc2/Escb2 <-> St1 at any genus), Gamma2 swaps the four-square
/// classes A <-> C and B <-> D, Gamma3 swaps A <-> B and C <-> D. Returns
/// the canonical tiling of the image class.
RectTiling half_twist_tiling(const RectTiling& t, TwistCurve along);

struct TraceTriple {
  double x2, y2, z2;  // squares of trace(A), trace(T B), trace(A (T B)^-1)
};

TraceTriple trace_triple(const QuadrangleSpec& spec);

struct TripleSolution {
  double L, t;
  double z2;
  double residual;
};

/// Recovers (L, t) from x^2 and y^2 at angle pi/n and reports the achieved
/// z^2 against the target.
TripleSolution solve_triple(double x2, double y2, double z2_target, int n);

std::string fn_to_json(const FNCoordinates& fn);

/// CSV rows "L,n,t,x2,y2,z2" for a batch of specs.
std::string triples_csv(const std::vector<QuadrangleSpec>& specs);

}  // namespace rectsurf
