#include "rectsurf/tiling.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rectsurf {

namespace {

using json = nlohmann::json;

constexpr int kSides = 4;

int idx(Side s) { return static_cast<int>(s); }
Side side_of(int i) { return static_cast<Side>(i); }

bool horizontal_side(Side s) { return s == Side::Top || s == Side::Bottom; }

std::array<int, 2> neighbor_cell(std::array<int, 2> c, Side s) {
  switch (s) {
    case Side::Top: return {c[0], c[1] + 1};
    case Side::Bottom: return {c[0], c[1] - 1};
    case Side::Left: return {c[0] - 1, c[1]};
    case Side::Right: return {c[0] + 1, c[1]};
  }
  return c;
}

}  // namespace

Side opposite(Side s) {
  switch (s) {
    case Side::Top: return Side::Bottom;
    case Side::Bottom: return Side::Top;
    case Side::Left: return Side::Right;
    case Side::Right: return Side::Left;
  }
  return s;
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Top: return "top";
    case Side::Bottom: return "bottom";
    case Side::Left: return "left";
    case Side::Right: return "right";
  }
  return "?";
}

namespace {

Side side_from_name(const std::string& n) {
  if (n == "top") return Side::Top;
  if (n == "bottom") return Side::Bottom;
  if (n == "left") return Side::Left;
  if (n == "right") return Side::Right;
  throw InvalidTiling("bad side name: " + n);
}

// Legal pairing combinations and their kinds.
bool legal_pair(Side a, Side b, PairKind k) {
  if (k == PairKind::Translation)
    return (a == Side::Top && b == Side::Bottom) ||
           (a == Side::Bottom && b == Side::Top) ||
           (a == Side::Left && b == Side::Right) ||
           (a == Side::Right && b == Side::Left);
  return a == b;
}

std::map<std::array<int, 2>, int> cell_index(const RectTiling& t) {
  std::map<std::array<int, 2>, int> m;
  for (int i = 0; i < t.count; ++i) m[t.arrangement[i]] = i;
  return m;
}

}  // namespace

Diagnostics validate_tiling(const RectTiling& t) {
  Diagnostics d;
  auto fail = [&d](const std::string& msg) {
    d.ok = false;
    d.violations.push_back(msg);
  };
  if (t.count <= 0 || static_cast<int>(t.arrangement.size()) != t.count) {
    fail("square count does not match arrangement");
    return d;
  }
  auto cells = cell_index(t);
  if (static_cast<int>(cells.size()) != t.count) {
    fail("overlapping squares in arrangement");
    return d;
  }

  // (a) edge-connected and simply connected.
  std::vector<int> comp(t.count, -1);
  std::vector<int> stack{0};
  comp[0] = 0;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int k = 0; k < kSides; ++k) {
      auto it = cells.find(neighbor_cell(t.arrangement[s], side_of(k)));
      if (it != cells.end() && comp[it->second] < 0) {
        comp[it->second] = 0;
        stack.push_back(it->second);
      }
    }
  }
  if (std::count(comp.begin(), comp.end(), 0) != t.count)
    fail("rule (a): arrangement is not edge-connected");

  // Euler characteristic of the polyomino: 1 iff simply connected.
  std::set<std::array<int, 2>> verts;
  std::set<std::array<int, 4>> edges;
  for (auto c : t.arrangement) {
    for (int dx = 0; dx <= 1; ++dx)
      for (int dy = 0; dy <= 1; ++dy)
        verts.insert({c[0] + dx, c[1] + dy});
    edges.insert({c[0], c[1], c[0] + 1, c[1]});
    edges.insert({c[0], c[1] + 1, c[0] + 1, c[1] + 1});
    edges.insert({c[0], c[1], c[0], c[1] + 1});
    edges.insert({c[0] + 1, c[1], c[0] + 1, c[1] + 1});
  }
  long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) +
             t.count;
  if (chi != 1) fail("rule (a): arrangement has a hole");

  // (b) still simply connected with vertices removed: around each lattice
  // vertex the incident squares must form a contiguous fan of at most 3.
  for (auto v : verts) {
    // quadrants NE, NW, SW, SE of the vertex
    std::array<bool, 4> occ{};
    occ[0] = cells.count({v[0], v[1]});
    occ[1] = cells.count({v[0] - 1, v[1]});
    occ[2] = cells.count({v[0] - 1, v[1] - 1});
    occ[3] = cells.count({v[0], v[1] - 1});
    int n = occ[0] + occ[1] + occ[2] + occ[3];
    if (n == 4) {
      fail("rule (b): four squares around an interior vertex");
      continue;
    }
    if (n == 2) {
      if ((occ[0] && occ[2] && !occ[1] && !occ[3]) ||
          (occ[1] && occ[3] && !occ[0] && !occ[2]))
        fail("rule (b): squares meeting only at a corner");
    }
  }

  // (c) pairing rules: a fixed-point-free involution on exterior edges.
  std::set<std::pair<int, int>> seen;
  for (const auto& p : t.pairings) {
    for (EdgeRef e : {p.a, p.b}) {
      if (e.square < 0 || e.square >= t.count) {
        fail("rule (c): pairing references a missing square");
        continue;
      }
      if (cells.count(neighbor_cell(t.arrangement[e.square], e.side)))
        fail("rule (c): pairing on an interior edge");
      if (!seen.insert({e.square, idx(e.side)}).second)
        fail("rule (c): edge paired twice");
    }
    if (p.a == p.b) fail("rule (c): edge paired with itself");
    if (!legal_pair(p.a.side, p.b.side, p.kind))
      fail("rule (c): orientation-incompatible pairing");
  }
  for (int s = 0; s < t.count; ++s)
    for (int k = 0; k < kSides; ++k) {
      bool interior = cells.count(neighbor_cell(t.arrangement[s], side_of(k)));
      if (!interior && !seen.count({s, k}))
        fail("rule (c): unpaired exterior edge");
    }
  return d;
}

SurfaceComplex to_complex(const RectTiling& t) {
  auto diag = validate_tiling(t);
  if (!diag.ok) throw InvalidTiling(diag.violations.front());
  SurfaceComplex c;
  c.count = t.count;
  c.match.resize(t.count);
  auto cells = cell_index(t);
  for (int s = 0; s < t.count; ++s)
    for (int k = 0; k < kSides; ++k) {
      auto it = cells.find(neighbor_cell(t.arrangement[s], side_of(k)));
      if (it != cells.end())
        c.match[s][k] = {it->second, opposite(side_of(k)),
                         PairKind::Translation};
    }
  for (const auto& p : t.pairings) {
    c.set(p.a.square, p.a.side, {p.b.square, p.b.side, p.kind});
    c.set(p.b.square, p.b.side, {p.a.square, p.a.side, p.kind});
  }
  return c;
}

namespace {

// Re-choose the chart of the flagged squares by a half-turn: their slots
// swap top/bottom and left/right, and every pairing with exactly one
// flipped endpoint toggles its kind.
SurfaceComplex apply_flips(const SurfaceComplex& c,
                           const std::vector<bool>& flip) {
  SurfaceComplex out;
  out.count = c.count;
  out.match.resize(c.count);
  for (int s = 0; s < c.count; ++s)
    for (int k = 0; k < kSides; ++k) {
      auto h = c.match[s][k];
      Side ns = flip[s] ? opposite(side_of(k)) : side_of(k);
      Side ps = flip[h.square] ? opposite(h.side) : h.side;
      bool ht = (h.kind == PairKind::HalfTurn) ^ flip[s] ^ flip[h.square];
      out.set(s, ns,
              {h.square, ps, ht ? PairKind::HalfTurn : PairKind::Translation});
    }
  return out;
}

std::vector<int> encoding_over_bases(const SurfaceComplex& c) {
  std::vector<int> best;
  for (int base = 0; base < c.count; ++base) {
    std::vector<int> label(c.count, -1);
    std::vector<int> order;
    label[base] = 0;
    order.push_back(base);
    for (size_t q = 0; q < order.size(); ++q) {
      int s = order[q];
      for (int k = 0; k < kSides; ++k) {
        int p = c.match[s][k].square;
        if (label[p] < 0) {
          label[p] = static_cast<int>(order.size());
          order.push_back(p);
        }
      }
    }
    if (static_cast<int>(order.size()) != c.count)
      throw InvalidTiling("disconnected surface");
    std::vector<int> enc;
    enc.reserve(c.count * 12);
    for (int s : order)
      for (int k = 0; k < kSides; ++k) {
        const auto& h = c.match[s][k];
        enc.push_back(label[h.square]);
        enc.push_back(idx(h.side));
        enc.push_back(h.kind == PairKind::HalfTurn ? 1 : 0);
      }
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

}  // namespace

std::vector<int> canonical_encoding(const SurfaceComplex& c) {
  // Least relabeling encoding over all base squares and all per-square
  // chart flips (the flat structure does not distinguish z from -z + c).
  std::vector<int> best;
  std::vector<bool> flip(c.count, false);
  for (uint32_t mask = 0; mask < (1u << c.count); ++mask) {
    for (int s = 0; s < c.count; ++s) flip[s] = (mask >> s) & 1u;
    std::vector<int> enc = encoding_over_bases(apply_flips(c, flip));
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

bool is_isomorphic(const RectTiling& a, const RectTiling& b) {
  return canonical_encoding(to_complex(a)) == canonical_encoding(to_complex(b));
}

namespace {

// Rebuild a complex from a canonical encoding.
SurfaceComplex complex_from_encoding(const std::vector<int>& enc) {
  SurfaceComplex c;
  c.count = static_cast<int>(enc.size()) / 12;
  c.match.resize(c.count);
  for (int s = 0; s < c.count; ++s)
    for (int k = 0; k < kSides; ++k) {
      int off = (s * 4 + k) * 3;
      c.match[s][k] = {enc[off], side_of(enc[off + 1]),
                       enc[off + 2] ? PairKind::HalfTurn
                                    : PairKind::Translation};
    }
  return c;
}

}  // namespace

RectTiling canonical_tiling(const RectTiling& t) {
  return replanarize(complex_from_encoding(canonical_encoding(to_complex(t))));
}

// ---------------------------------------------------------------------------
// Cone points

namespace {

// Corners 0..3 = NE, NW, SW, SE. Walking counterclockwise around the vertex
// at the given corner exits through:
Side exit_side(int corner) {
  switch (corner) {
    case 0: return Side::Right;
    case 1: return Side::Top;
    case 2: return Side::Left;
    default: return Side::Bottom;
  }
}

// Corner of the partner square entered after crossing (side, kind).
int entry_corner(Side crossed, PairKind k) {
  bool ht = (k == PairKind::HalfTurn);
  switch (crossed) {
    case Side::Right: return ht ? 3 : 1;   // SE : NW
    case Side::Top: return ht ? 0 : 2;     // NE : SW
    case Side::Left: return ht ? 1 : 3;    // NW : SE
    case Side::Bottom: return ht ? 2 : 0;  // SW : NE
  }
  return 0;
}

}  // namespace

VertexAnalysis vertex_analysis(const RectTiling& t) {
  SurfaceComplex c = to_complex(t);
  VertexAnalysis va;

  bool abelian = true;
  for (const auto& row : c.match)
    for (const auto& h : row)
      if (h.kind == PairKind::HalfTurn) abelian = false;

  std::vector<bool> used(t.count * 4, false);
  for (int s = 0; s < t.count; ++s)
    for (int corner = 0; corner < 4; ++corner) {
      if (used[s * 4 + corner]) continue;
      std::vector<std::pair<int, int>> cycle;
      int cs = s, cc = corner;
      do {
        used[cs * 4 + cc] = true;
        cycle.push_back({cs, cc});
        Side ex = exit_side(cc);
        auto h = c.at(cs, ex);
        cc = entry_corner(ex, h.kind);
        cs = h.square;
      } while (!(cs == s && cc == corner));
      va.cycles.push_back(cycle);
      va.corner_counts.push_back(static_cast<int>(cycle.size()));
    }

  va.stratum.flavor =
      abelian ? Stratum::Flavor::Abelian : Stratum::Flavor::Quadratic;
  int m = 1;
  bool all_same = true;
  for (size_t i = 0; i < va.corner_counts.size(); ++i) {
    int len = va.corner_counts[i];
    if (len % 2 != 0) throw InvalidTiling("odd corner cycle");
    int dq = len / 2 - 2;  // quadratic-differential zero order
    m = std::lcm(m, dq + 2);
    if (len != va.corner_counts[0]) all_same = false;
    if (abelian) {
      if (len % 4 != 0) throw InvalidTiling("non-integral abelian cone angle");
      int k = len / 4 - 1;
      if (k > 0) va.stratum.zero_orders.push_back(k);
    } else if (dq != 0) {
      va.stratum.zero_orders.push_back(dq);
    }
  }
  std::sort(va.stratum.zero_orders.rbegin(), va.stratum.zero_orders.rend());
  va.m = m;
  va.balanced = all_same;
  return va;
}

std::string Stratum::name() const {
  std::ostringstream os;
  os << (flavor == Flavor::Abelian ? "H(" : "Q(");
  for (size_t i = 0; i < zero_orders.size(); ++i)
    os << (i ? "," : "") << zero_orders[i];
  os << ")";
  return os.str();
}

CylinderDecomposition cylinder_decomposition(const RectTiling& t,
                                             Direction dir) {
  SurfaceComplex c = to_complex(t);
  CylinderDecomposition cd;
  cd.direction = dir;
  // Moving "forward" in the cylinder frame exits through:
  Side fwd = (dir == Direction::Horizontal) ? Side::Right : Side::Top;
  Side bwd = opposite(fwd);
  std::vector<bool> seen(t.count, false);
  for (int s = 0; s < t.count; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, bool>> cyl;
    int cs = s;
    bool flip = false;
    do {
      seen[cs] = true;
      cyl.push_back({cs, flip});
      auto h = c.at(cs, flip ? bwd : fwd);
      flip = flip ^ (h.kind == PairKind::HalfTurn);
      cs = h.square;
    } while (cs != s || flip);
    cd.cells.push_back(cyl);
    cd.widths.push_back(static_cast<int>(cyl.size()));
  }
  return cd;
}

int genus(const RectTiling& t) {
  auto va = vertex_analysis(t);
  long V = static_cast<long>(va.corner_counts.size());
  long chi = V - 2L * t.count + t.count;  // E = 2n, F = n
  return static_cast<int>((2 - chi) / 2);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// All fixed polyominoes with n cells, translation-normalized.
std::vector<std::vector<std::array<int, 2>>> fixed_polyominoes(int n) {
  std::set<std::vector<std::array<int, 2>>> out;
  std::vector<std::array<int, 2>> cells{{0, 0}};
  std::function<void()> grow = [&]() {
    if (static_cast<int>(cells.size()) == n) {
      auto norm = cells;
      int mx = norm[0][0], my = norm[0][1];
      for (auto c : norm) {
        mx = std::min(mx, c[0]);
        my = std::min(my, c[1]);
      }
      for (auto& c : norm) c = {c[0] - mx, c[1] - my};
      std::sort(norm.begin(), norm.end());
      out.insert(norm);
      return;
    }
    std::set<std::array<int, 2>> cand;
    for (auto c : cells)
      for (int k = 0; k < kSides; ++k) {
        auto nb = neighbor_cell(c, side_of(k));
        if (std::find(cells.begin(), cells.end(), nb) == cells.end())
          cand.insert(nb);
      }
    for (auto nb : cand) {
      cells.push_back(nb);
      grow();
      cells.pop_back();
    }
  };
  grow();
  return {out.begin(), out.end()};
}

void enumerate_matchings(const RectTiling& base,
                         std::vector<EdgeRef>& exterior, size_t pos,
                         std::vector<Pairing>& acc,
                         std::vector<bool>& taken,
                         const std::function<void(const RectTiling&)>& emit) {
  while (pos < exterior.size() && taken[pos]) ++pos;
  if (pos == exterior.size()) {
    RectTiling t = base;
    t.pairings = acc;
    emit(t);
    return;
  }
  taken[pos] = true;
  EdgeRef e = exterior[pos];
  for (size_t j = pos + 1; j < exterior.size(); ++j) {
    if (taken[j]) continue;
    EdgeRef f = exterior[j];
    if (horizontal_side(e.side) != horizontal_side(f.side)) continue;
    PairKind k = (e.side == f.side) ? PairKind::HalfTurn
                                    : PairKind::Translation;
    if (!legal_pair(e.side, f.side, k)) continue;
    taken[j] = true;
    acc.push_back({e, f, k});
    enumerate_matchings(base, exterior, pos + 1, acc, taken, emit);
    acc.pop_back();
    taken[j] = false;
  }
  taken[pos] = false;
}

}  // namespace

std::vector<RectTiling> enumerate_balanced(int squares) {
  std::map<std::vector<int>, RectTiling> found;
  for (const auto& cells : fixed_polyominoes(squares)) {
    RectTiling base;
    base.count = squares;
    base.arrangement = cells;
    {
      RectTiling probe = base;  // admissibility of the bare arrangement
      Diagnostics d = validate_tiling(probe);
      bool arrangement_ok = true;
      for (const auto& v : d.violations)
        if (v.find("rule (a)") != std::string::npos ||
            v.find("rule (b)") != std::string::npos)
          arrangement_ok = false;
      if (!arrangement_ok) continue;
    }
    auto cmap = cell_index(base);
    std::vector<EdgeRef> exterior;
    for (int s = 0; s < squares; ++s)
      for (int k = 0; k < kSides; ++k)
        if (!cmap.count(neighbor_cell(base.arrangement[s], side_of(k))))
          exterior.push_back({s, side_of(k)});
    std::vector<Pairing> acc;
    std::vector<bool> taken(exterior.size(), false);
    enumerate_matchings(base, exterior, 0, acc, taken,
                        [&](const RectTiling& t) {
                          if (!validate_tiling(t).ok) return;
                          auto va = vertex_analysis(t);
                          if (va.corner_counts.size() != 2) return;
                          if (va.corner_counts[0] != 8 ||
                              va.corner_counts[1] != 8)
                            return;
                          auto enc = canonical_encoding(to_complex(t));
                          found.emplace(enc, t);
                        });
  }
  std::vector<RectTiling> out;
  out.reserve(found.size());
  for (auto& [enc, t] : found) out.push_back(t);
  return out;
}

std::vector<RectTiling> enumerate_balanced_four() {
  return enumerate_balanced(4);
}

// ---------------------------------------------------------------------------
// Normal form and the T / S action

namespace {

struct NormalForm {
  SurfaceComplex complex;  // rows of upright squares, rows = cylinders
  std::vector<int> row_of, pos_of;  // per new square id
  std::vector<int> widths;
  std::vector<std::vector<int>> row_squares;  // new ids by row, in order
};

// Rewrite the complex so that every horizontal cylinder becomes a row of
// upright squares closed by translations; all half-turn data moves to the
// top/bottom pairings.
NormalForm normalize(const SurfaceComplex& c) {
  // Horizontal cylinders with per-square flip state.
  std::vector<std::vector<std::pair<int, bool>>> cyls;
  std::vector<bool> seen(c.count, false);
  for (int s = 0; s < c.count; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, bool>> cyl;
    int cs = s;
    bool flip = false;
    do {
      seen[cs] = true;
      cyl.push_back({cs, flip});
      auto h = c.at(cs, flip ? Side::Left : Side::Right);
      flip = flip ^ (h.kind == PairKind::HalfTurn);
      cs = h.square;
    } while (cs != s || flip);
    cyls.push_back(cyl);
  }

  NormalForm nf;
  nf.complex.count = c.count;
  nf.complex.match.resize(c.count);
  nf.row_of.resize(c.count);
  nf.pos_of.resize(c.count);

  // New ids row-major; remember where each old square landed.
  std::vector<int> new_id(c.count, -1);
  std::vector<bool> flipped(c.count, false);
  int next = 0;
  for (size_t r = 0; r < cyls.size(); ++r) {
    nf.widths.push_back(static_cast<int>(cyls[r].size()));
    nf.row_squares.push_back({});
    for (size_t j = 0; j < cyls[r].size(); ++j) {
      auto [sq, fl] = cyls[r][j];
      new_id[sq] = next;
      flipped[sq] = fl;
      nf.row_of[next] = static_cast<int>(r);
      nf.pos_of[next] = static_cast<int>(j);
      nf.row_squares[r].push_back(next);
      ++next;
    }
  }

  // Vertical structure: plain cyclic translations within each row.
  for (size_t r = 0; r < cyls.size(); ++r) {
    int w = nf.widths[r];
    for (int j = 0; j < w; ++j) {
      int a = nf.row_squares[r][j];
      int b = nf.row_squares[r][(j + 1) % w];
      nf.complex.set(a, Side::Right, {b, Side::Left, PairKind::Translation});
      nf.complex.set(b, Side::Left, {a, Side::Right, PairKind::Translation});
    }
  }

  // Horizontal pairings carried over with flips pushed into the kind.
  for (int s = 0; s < c.count; ++s)
    for (Side sd : {Side::Top, Side::Bottom}) {
      auto h = c.at(s, sd);
      // New identity of this slot: flipping a square swaps top and bottom.
      Side ns = flipped[s] ? opposite(sd) : sd;
      Side ps = flipped[h.square] ? opposite(h.side) : h.side;
      bool flip_total =
          (h.kind == PairKind::HalfTurn) ^ flipped[s] ^ flipped[h.square];
      PairKind nk = flip_total ? PairKind::HalfTurn : PairKind::Translation;
      if (!legal_pair(ns, ps, nk))
        throw InvalidTiling("normal form produced an illegal pairing");
      nf.complex.set(new_id[s], ns, {new_id[h.square], ps, nk});
    }
  return nf;
}

SurfaceComplex shear(const SurfaceComplex& c, int shift) {
  NormalForm nf = normalize(c);
  SurfaceComplex out = nf.complex;
  // Re-attach every top slot one step along its own cylinder.
  auto shifted = [&](int s) {
    int r = nf.row_of[s], j = nf.pos_of[s], w = nf.widths[r];
    return nf.row_squares[r][((j + shift) % w + w) % w];
  };
  for (int s = 0; s < out.count; ++s) {
    auto h = nf.complex.at(s, Side::Top);
    int ns = shifted(s);
    int np = (h.side == Side::Top) ? shifted(h.square) : h.square;
    out.set(ns, Side::Top, {np, h.side, h.kind});
    if (h.side == Side::Top)
      out.set(np, Side::Top, {ns, Side::Top, h.kind});
    else
      out.set(h.square, h.side, {ns, Side::Top, h.kind});
  }
  return out;
}

SurfaceComplex rotate90(const SurfaceComplex& c) {
  // Right -> Top -> Left -> Bottom -> Right (counterclockwise rotation).
  auto rot = [](Side s) {
    switch (s) {
      case Side::Right: return Side::Top;
      case Side::Top: return Side::Left;
      case Side::Left: return Side::Bottom;
      case Side::Bottom: return Side::Right;
    }
    return s;
  };
  SurfaceComplex out;
  out.count = c.count;
  out.match.resize(c.count);
  for (int s = 0; s < c.count; ++s)
    for (int k = 0; k < kSides; ++k) {
      auto h = c.match[s][k];
      out.set(s, rot(side_of(k)), {h.square, rot(h.side), h.kind});
    }
  return out;
}

}  // namespace

RectTiling act_T(const RectTiling& t, int power) {
  SurfaceComplex c = to_complex(t);
  int step = power >= 0 ? 1 : -1;
  for (int i = 0; i != power; i += step) c = shear(c, step);
  return replanarize(complex_from_encoding(canonical_encoding(c)));
}

RectTiling act_S(const RectTiling& t) {
  SurfaceComplex c = rotate90(to_complex(t));
  return replanarize(complex_from_encoding(canonical_encoding(c)));
}

std::vector<std::vector<int>> orbit_partition(
    const std::vector<RectTiling>& list) {
  std::map<std::vector<int>, int> index;
  std::vector<SurfaceComplex> cx;
  for (size_t i = 0; i < list.size(); ++i) {
    cx.push_back(to_complex(list[i]));
    index[canonical_encoding(cx.back())] = static_cast<int>(i);
  }
  std::vector<int> owner(list.size(), -1);
  std::vector<std::vector<int>> orbits;
  for (size_t i = 0; i < list.size(); ++i) {
    if (owner[i] >= 0) continue;
    std::vector<int> orbit;
    std::vector<int> queue{static_cast<int>(i)};
    owner[i] = static_cast<int>(orbits.size());
    while (!queue.empty()) {
      int cur = queue.back();
      queue.pop_back();
      orbit.push_back(cur);
      for (const SurfaceComplex& img :
           {shear(cx[cur], 1), shear(cx[cur], -1), rotate90(cx[cur])}) {
        auto it = index.find(canonical_encoding(img));
        if (it == index.end()) continue;  // left the list
        if (owner[it->second] < 0) {
          owner[it->second] = owner[i];
          queue.push_back(it->second);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(orbit);
  }
  return orbits;
}

// ---------------------------------------------------------------------------
// Planar presentation of an abstract complex

namespace {

// Places the squares on the grid, re-choosing each square's chart by a
// half-turn where needed so that every grid adjacency is a plain
// translation gluing. Any pairing can serve as a placement move: flipping
// the partner's chart turns a half-turn gluing into a translation.
struct Placer {
  const SurfaceComplex& c;
  std::map<std::array<int, 2>, int> grid;
  std::vector<std::array<int, 2>> pos;
  std::vector<bool> placed, flip;
  int placed_count = 0;

  explicit Placer(const SurfaceComplex& cx)
      : c(cx), pos(cx.count), placed(cx.count, false), flip(cx.count, false) {}

  // Chart slot of square s facing the plane direction d.
  Side chart_side(int s, Side d) const { return flip[s] ? opposite(d) : d; }

  bool adjacency_ok(int s, std::array<int, 2> cell, bool fl) const {
    for (int k = 0; k < kSides; ++k) {
      Side d = side_of(k);
      auto it = grid.find(neighbor_cell(cell, d));
      if (it == grid.end()) continue;
      int p = it->second;
      auto h = c.at(s, fl ? opposite(d) : d);
      bool eff_translation =
          (h.kind == PairKind::Translation) ^ fl ^ flip[p];
      if (!eff_translation || h.square != p) return false;
      Side partner_plane =
          flip[p] ? opposite(h.side) : h.side;
      if (partner_plane != opposite(d)) return false;
    }
    return true;
  }

  bool search() {
    if (placed_count == c.count) return finish_check();
    for (int s = 0; s < c.count; ++s) {
      if (placed[s]) continue;
      for (int k = 0; k < kSides; ++k) {
        auto h = c.match[s][k];
        if (!placed[h.square]) continue;
        // Flip state that turns this gluing into a plane translation.
        bool fl = (h.kind == PairKind::HalfTurn) ^ flip[h.square];
        Side my_plane = fl ? opposite(side_of(k)) : side_of(k);
        Side partner_plane =
            flip[h.square] ? opposite(h.side) : h.side;
        if (partner_plane != opposite(my_plane)) continue;
        auto cell = neighbor_cell(pos[h.square], partner_plane);
        if (grid.count(cell) || !adjacency_ok(s, cell, fl)) continue;
        grid[cell] = s;
        pos[s] = cell;
        placed[s] = true;
        flip[s] = fl;
        ++placed_count;
        if (search()) return true;
        grid.erase(cell);
        placed[s] = false;
        --placed_count;
      }
    }
    return false;
  }

  bool finish_check() {
    RectTiling t = build();
    return validate_tiling(t).ok;
  }

  RectTiling build() const {
    SurfaceComplex eff = apply_flips(c, flip);
    RectTiling t;
    t.count = c.count;
    int mx = pos[0][0], my = pos[0][1];
    for (int s = 0; s < c.count; ++s) {
      mx = std::min(mx, pos[s][0]);
      my = std::min(my, pos[s][1]);
    }
    t.arrangement.resize(c.count);
    for (int s = 0; s < c.count; ++s)
      t.arrangement[s] = {pos[s][0] - mx, pos[s][1] - my};
    std::map<std::array<int, 2>, int> cmap;
    for (int s = 0; s < c.count; ++s) cmap[t.arrangement[s]] = s;
    for (int s = 0; s < c.count; ++s)
      for (int k = 0; k < kSides; ++k) {
        if (cmap.count(neighbor_cell(t.arrangement[s], side_of(k))))
          continue;  // interior
        auto h = eff.match[s][k];
        bool first = h.square > s || (h.square == s && idx(h.side) > k);
        if (first)
          t.pairings.push_back({{s, side_of(k)}, {h.square, h.side}, h.kind});
      }
    return t;
  }
};

}  // namespace

RectTiling replanarize(const SurfaceComplex& c) {
  Placer pl(c);
  pl.grid[{0, 0}] = 0;
  pl.pos[0] = {0, 0};
  pl.placed[0] = true;
  pl.placed_count = 1;
  if (!pl.search()) throw InvalidTiling("no admissible planar presentation");
  return pl.build();
}

// ---------------------------------------------------------------------------
// Families

Family family_from_name(const std::string& name) {
  std::string n;
  for (char ch : name) n.push_back(static_cast<char>(std::tolower(ch)));
  if (n == "st1") return Family::St1;
  if (n == "st2") return Family::St2;
  if (n == "esc1") return Family::Esc1;
  if (n == "esc2") return Family::Esc2;
  if (n == "escb1") return Family::Escb1;
  if (n == "escb2") return Family::Escb2;
  throw UnsupportedCase("unknown family: " + name);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::St1: return "st1";
    case Family::St2: return "st2";
    case Family::Esc1: return "esc1";
    case Family::Esc2: return "esc2";
    case Family::Escb1: return "escb1";
    case Family::Escb2: return "escb2";
  }
  return "?";
}

namespace {

// Staircase with `pairs` two-square steps, optionally one extra square on
// top. Squares numbered from the lower left, odd ids to the right.
RectTiling staircase(int squares) {
  RectTiling t;
  t.count = squares;
  for (int s = 0; s < squares; ++s) {
    int i = s / 2;
    t.arrangement.push_back({(s % 2) ? i + 1 : i, i});
  }
  return t;
}

}  // namespace

RectTiling family_tiling(Family f, int g) {
  if (g < 1) throw BadParity("genus must be positive");
  auto needs = [g](bool even) {
    if ((g % 2 == 0) != even) throw BadParity("family/genus parity mismatch");
  };
  int k = 0;
  switch (f) {
    case Family::St1: k = g; break;
    case Family::St2: k = g; break;
    case Family::Esc1: needs(false); k = g + 1; break;
    case Family::Esc2: needs(false); k = g; break;
    case Family::Escb1: needs(true); k = g + 1; break;
    case Family::Escb2: needs(true); k = g; break;
  }
  int squares = (f == Family::St2) ? 2 * g - 1 : 2 * k;
  RectTiling t = staircase(squares);
  auto tr = [&t](int s1, Side a, int s2, Side b) {
    t.pairings.push_back({{s1, a}, {s2, b}, PairKind::Translation});
  };
  auto ht = [&t](int s1, Side a, int s2, Side b) {
    t.pairings.push_back({{s1, a}, {s2, b}, PairKind::HalfTurn});
  };
  int last = squares - 1;
  switch (f) {
    case Family::St1:
      tr(0, Side::Top, 0, Side::Bottom);
      tr(last, Side::Top, last, Side::Bottom);
      break;
    case Family::St2:
      tr(0, Side::Top, 0, Side::Bottom);
      tr(last, Side::Right, last, Side::Left);
      break;
    case Family::Esc1:
    case Family::Esc2:
      tr(last, Side::Top, 0, Side::Bottom);
      tr(last, Side::Bottom, 0, Side::Top);
      break;
    case Family::Escb1:
    case Family::Escb2:
      ht(last, Side::Top, 0, Side::Top);
      ht(last, Side::Bottom, 0, Side::Bottom);
      break;
  }
  // Row closures and the step top-bottom identifications.
  for (int j = 0; 2 * j + 1 <= last; ++j)
    tr(2 * j + 1, Side::Right, 2 * j, Side::Left);
  for (int j = 0; 2 * j + 2 <= last; ++j)
    tr(2 * j + 2, Side::Top, 2 * j + 1, Side::Bottom);
  auto d = validate_tiling(t);
  if (!d.ok) throw InvalidTiling("family tiling invalid: " + d.violations[0]);
  return t;
}

// ---------------------------------------------------------------------------
// JSON

std::string tiling_to_json(const RectTiling& t) {
  json j;
  j["squares"] = t.count;
  j["arrangement"] = json::array();
  for (auto c : t.arrangement) j["arrangement"].push_back({c[0], c[1]});
  j["pairings"] = json::array();
  for (const auto& p : t.pairings) {
    json e;
    e["edge"] = {p.a.square, side_name(p.a.side)};
    e["partner"] = {p.b.square, side_name(p.b.side)};
    e["kind"] = p.kind == PairKind::HalfTurn ? "half_turn" : "translation";
    j["pairings"].push_back(e);
  }
  return j.dump(2);
}

RectTiling tiling_from_json(const std::string& text) {
  json j = json::parse(text);
  RectTiling t;
  t.count = j.at("squares").get<int>();
  for (const auto& c : j.at("arrangement"))
    t.arrangement.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  for (const auto& e : j.at("pairings")) {
    Pairing p;
    p.a = {e.at("edge").at(0).get<int>(),
           side_from_name(e.at("edge").at(1).get<std::string>())};
    p.b = {e.at("partner").at(0).get<int>(),
           side_from_name(e.at("partner").at(1).get<std::string>())};
    std::string k = e.at("kind").get<std::string>();
    p.kind = (k == "half_turn") ? PairKind::HalfTurn : PairKind::Translation;
    t.pairings.push_back(p);
  }
  return t;
}

}  // namespace rectsurf
