#include "rectsurf/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace rectsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

Letter inverse_letter(Letter l) {
  switch (l) {
    case Letter::H: return Letter::Hi;
    case Letter::Hi: return Letter::H;
    case Letter::V: return Letter::Vi;
    case Letter::Vi: return Letter::V;
    case Letter::R: return Letter::R;
  }
  return l;
}

}  // namespace

PairingWord reduce_word(PairingWord w) {
  PairingWord out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == inverse_letter(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

PairingWord invert_word(const PairingWord& w) {
  PairingWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(inverse_letter(*it));
  return out;
}

std::string word_text(const PairingWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += ' ';
    switch (l) {
      case Letter::H: s += "h"; break;
      case Letter::Hi: s += "h^-1"; break;
      case Letter::V: s += "v"; break;
      case Letter::Vi: s += "v^-1"; break;
      case Letter::R: s += "r"; break;
    }
  }
  return s;
}

PairingWord parse_word(const std::string& text) {
  PairingWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok == "h") w.push_back(Letter::H);
    else if (tok == "h^-1") w.push_back(Letter::Hi);
    else if (tok == "v") w.push_back(Letter::V);
    else if (tok == "v^-1") w.push_back(Letter::Vi);
    else if (tok == "r") w.push_back(Letter::R);
    else throw DegenerateInput("bad word token: " + tok);
  }
  return w;
}

namespace {

Letter crossing_letter(Side s) {
  switch (s) {
    case Side::Right: return Letter::H;
    case Side::Left: return Letter::Hi;
    case Side::Top: return Letter::V;
    case Side::Bottom: return Letter::Vi;
  }
  return Letter::H;
}

PairingWord elementary_crossing(Side s, PairKind k) {
  PairingWord w{crossing_letter(s)};
  if (k == PairKind::HalfTurn) w.push_back(Letter::R);
  return w;
}

std::vector<PairingWord> tree_words(const RectTiling& t) {
  std::map<std::array<int, 2>, int> cells;
  for (int i = 0; i < t.count; ++i) cells[t.arrangement[i]] = i;
  std::vector<PairingWord> words(t.count);
  std::vector<bool> seen(t.count, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int s = queue[qi];
    for (Side sd : {Side::Right, Side::Top, Side::Left, Side::Bottom}) {
      auto c = t.arrangement[s];
      switch (sd) {
        case Side::Right: c[0]++; break;
        case Side::Left: c[0]--; break;
        case Side::Top: c[1]++; break;
        case Side::Bottom: c[1]--; break;
      }
      auto it = cells.find(c);
      if (it == cells.end() || seen[it->second]) continue;
      seen[it->second] = true;
      words[it->second] = words[s];
      words[it->second].push_back(crossing_letter(sd));
      queue.push_back(it->second);
    }
  }
  return words;
}

}  // namespace

std::vector<PairingWord> derive_pairing_words(const RectTiling& t) {
  auto diag = validate_tiling(t);
  if (!diag.ok) throw InvalidTiling(diag.violations.front());
  auto tw = tree_words(t);
  std::vector<PairingWord> out;
  for (const auto& p : t.pairings) {
    PairingWord w = tw[p.a.square];
    for (Letter l : elementary_crossing(p.a.side, p.kind)) w.push_back(l);
    for (Letter l : invert_word(tw[p.b.square])) w.push_back(l);
    out.push_back(reduce_word(w));
  }
  return out;
}

namespace {

void append_power(PairingWord& w, const PairingWord& unit, int count) {
  for (int i = 0; i < count; ++i)
    for (Letter l : unit) w.push_back(l);
}

PairingWord conjugated(const PairingWord& conj, const PairingWord& core) {
  PairingWord w = conj;
  for (Letter l : core) w.push_back(l);
  for (Letter l : invert_word(conj)) w.push_back(l);
  return reduce_word(w);
}

PairingWord hv_power(int j) {
  PairingWord w;
  append_power(w, {Letter::H, Letter::V}, j);
  return w;
}

}  // namespace

std::vector<PairingWord> family_words(Family f, int g) {
  if (g < 1) throw BadParity("genus must be positive");
  std::vector<PairingWord> out;
  auto hv = [](int j) { return hv_power(j); };
  const PairingWord h2{Letter::H, Letter::H};
  const PairingWord hv2h{Letter::H, Letter::V, Letter::V, Letter::Hi};
  switch (f) {
    case Family::St1: {
      out.push_back({Letter::V});
      PairingWord w = hv(g - 1);
      for (Letter l : {Letter::H, Letter::V, Letter::Hi}) w.push_back(l);
      for (Letter l : invert_word(hv(g - 1))) w.push_back(l);
      out.push_back(reduce_word(w));
      for (int j = 0; j <= g - 1; ++j) out.push_back(conjugated(hv(j), h2));
      for (int i = 0; i <= g - 2; ++i) out.push_back(conjugated(hv(i), hv2h));
      break;
    }
    case Family::St2: {
      out.push_back({Letter::V});
      PairingWord w = hv(g - 1);
      w.push_back(Letter::H);
      for (Letter l : invert_word(hv(g - 1))) w.push_back(l);
      out.push_back(reduce_word(w));
      for (int j = 0; j <= g - 2; ++j) out.push_back(conjugated(hv(j), h2));
      for (int j = 0; j <= g - 2; ++j) out.push_back(conjugated(hv(j), hv2h));
      break;
    }
    case Family::Esc1:
    case Family::Esc2: {
      if (g % 2 == 0) throw BadParity("escalator families need odd genus");
      int k = (f == Family::Esc1) ? g + 1 : g;
      out.push_back(hv(k));
      PairingWord w = hv(k - 1);
      w.push_back(Letter::H);
      w.push_back(Letter::Vi);
      out.push_back(reduce_word(w));
      for (int j = 0; j <= k - 1; ++j) out.push_back(conjugated(hv(j), h2));
      for (int i = 0; i <= k - 2; ++i) out.push_back(conjugated(hv(i), hv2h));
      break;
    }
    case Family::Escb1:
    case Family::Escb2: {
      if (g % 2 != 0) throw BadParity("half-turn escalators need even genus");
      int k = (f == Family::Escb1) ? g + 1 : g;
      PairingWord w1 = hv(k);
      w1.push_back(Letter::R);
      out.push_back(w1);
      PairingWord w2 = hv(k - 1);
      w2.push_back(Letter::H);
      w2.push_back(Letter::Vi);
      w2.push_back(Letter::R);
      out.push_back(w2);
      for (int j = 0; j <= k - 1; ++j) out.push_back(conjugated(hv(j), h2));
      for (int i = 0; i <= k - 2; ++i) out.push_back(conjugated(hv(i), hv2h));
      break;
    }
  }
  return out;
}

Moebius evaluate_word(const PairingWord& w, const GeneratorPair& gen) {
  Moebius m = Moebius::identity();
  Moebius B = gen.B_eff();
  for (Letter l : w) {
    switch (l) {
      case Letter::H: m = m * gen.A; break;
      case Letter::Hi: m = m * gen.A.inverse(); break;
      case Letter::V: m = m * B; break;
      case Letter::Vi: m = m * B.inverse(); break;
      case Letter::R: m = m * gen.e1; break;
    }
  }
  return m;
}

FuchsianPresentation instantiate(const std::vector<PairingWord>& words,
                                 const QuadrangleSpec& spec,
                                 Stratum::Flavor flavor, int m) {
  if (!spec.zero_angle() && spec.n % m != 0)
    throw AngleConditionViolated("n = " + std::to_string(spec.n) +
                                 " is not a multiple of m = " +
                                 std::to_string(m));
  FuchsianPresentation p;
  p.words = words;
  p.spec = spec;
  p.flavor = flavor;
  p.convention =
      "letters act left to right; crossing right/up = h/v; half-turn "
      "crossings append r (pi-rotation about the crossed edge midpoint: "
      "top-top = v r, bottom-bottom = v^-1 r, right-right = h r, "
      "left-left = h^-1 r); v instantiates as T*B when twisted";
  GeneratorPair gen = build_generators(spec);
  for (const auto& w : words) p.matrices.push_back(evaluate_word(w, gen));
  return p;
}

Complex DomainLayout::corner(int square, int corner_index) const {
  // 0..3 = NE, NW, SW, SE; the twisted domain replaces the top corners by
  // their images under T.
  Complex c;
  switch (corner_index) {
    case 0: c = base.q1p; break;
    case 1: c = base.q2p; break;
    case 2: c = base.q[2]; break;
    default: c = base.q[3]; break;
  }
  return placement[square](c);
}

Geodesic DomainLayout::edge(int square, Side side) const {
  Complex ne = base.q1p, nw = base.q2p, sw = base.q[2], se = base.q[3];
  Complex a, b;
  switch (side) {
    case Side::Right: a = se, b = ne; break;
    case Side::Top: a = ne, b = nw; break;
    case Side::Left: a = nw, b = sw; break;
    case Side::Bottom: a = sw, b = se; break;
  }
  const Moebius& g = placement[square];
  return geodesic_through(g(a), g(b));
}

DomainLayout layout_fundamental_domain(const RectTiling& t,
                                       const QuadrangleSpec& spec) {
  DomainLayout lay;
  lay.base = vertex_geometry(spec);
  lay.spec = spec;
  lay.tree_words = tree_words(t);
  GeneratorPair gen = build_generators(spec);
  for (const auto& w : lay.tree_words)
    lay.placement.push_back(evaluate_word(w, gen));
  return lay;
}

TilingGroup build_group(const RectTiling& t, const QuadrangleSpec& spec) {
  TilingGroup tg;
  tg.tiling = t;
  auto va = vertex_analysis(t);
  tg.presentation =
      instantiate(derive_pairing_words(t), spec, va.stratum.flavor, va.m);
  tg.layout = layout_fundamental_domain(t, spec);
  return tg;
}

namespace {

double edge_map_error(const Moebius& g, const Geodesic& from,
                      const Geodesic& onto) {
  Complex a = g(from.e1), b = g(from.e2);
  double direct = std::max(std::abs(a - onto.e1), std::abs(b - onto.e2));
  double swapped = std::max(std::abs(a - onto.e2), std::abs(b - onto.e1));
  return std::min(direct, swapped);
}

// Interior test: z on the same side of all four edges as the copy center.
bool point_in_copy(const DomainLayout& lay, int square, Complex z) {
  Complex center = lay.placement[square](Complex(0.0));
  for (Side sd : {Side::Right, Side::Top, Side::Left, Side::Bottom}) {
    Geodesic e = lay.edge(square, sd);
    double sz, sc;
    if (e.kind == Geodesic::Kind::Diameter) {
      Complex dir = e.e2 - e.e1;
      sz = std::imag(std::conj(dir) * (z - e.e1));
      sc = std::imag(std::conj(dir) * (center - e.e1));
    } else {
      sz = std::abs(z - e.center) - e.radius;
      sc = std::abs(center - e.center) - e.radius;
    }
    if (sz * sc < 0.0) return false;
  }
  return true;
}

}  // namespace

PoincareReport verify_poincare(const FuchsianPresentation& p,
                               const DomainLayout& lay, const RectTiling& t,
                               bool aligned, double edge_tol,
                               double vertex_tol) {
  PoincareReport rep;
  const size_t ng = p.matrices.size();
  rep.edge_errors.assign(ng, 1e9);
  rep.matched_pairing.assign(ng, -1);

  // (a) every pairing matrix maps its edge onto the partner edge.
  if (aligned && ng == t.pairings.size()) {
    for (size_t i = 0; i < ng; ++i) {
      const auto& pr = t.pairings[i];
      Geodesic from = lay.edge(pr.b.square, pr.b.side);
      Geodesic onto = lay.edge(pr.a.square, pr.a.side);
      rep.edge_errors[i] = edge_map_error(p.matrices[i], from, onto);
      rep.matched_pairing[i] = static_cast<int>(i);
      if (rep.edge_errors[i] > edge_tol) {
        std::ostringstream os;
        os << "generator " << i << " (" << word_text(p.words[i])
           << ") does not pair its edge, error " << rep.edge_errors[i];
        rep.failures.push_back(os.str());
      }
    }
  } else {
    // Search which exterior edge pair each generator carries.
    for (size_t i = 0; i < ng; ++i) {
      for (size_t j = 0; j < t.pairings.size(); ++j) {
        const auto& pr = t.pairings[j];
        Geodesic ea = lay.edge(pr.a.square, pr.a.side);
        Geodesic eb = lay.edge(pr.b.square, pr.b.side);
        for (const Moebius& g : {p.matrices[i], p.matrices[i].inverse()}) {
          for (int dirn = 0; dirn < 2; ++dirn) {
            double err = dirn ? edge_map_error(g, ea, eb)
                              : edge_map_error(g, eb, ea);
            if (err < rep.edge_errors[i]) {
              rep.edge_errors[i] = err;
              rep.matched_pairing[i] = static_cast<int>(j);
            }
          }
        }
      }
      if (rep.edge_errors[i] > edge_tol) {
        std::ostringstream os;
        os << "generator " << i << " (" << word_text(p.words[i])
           << ") matches no edge pair, best error " << rep.edge_errors[i];
        rep.failures.push_back(os.str());
      }
    }
    // The matched pairings must exhaust the tiling's pairings.
    std::vector<int> matched = rep.matched_pairing;
    std::sort(matched.begin(), matched.end());
    matched.erase(std::unique(matched.begin(), matched.end()), matched.end());
    if (matched.size() != t.pairings.size())
      rep.failures.push_back("generators do not cover all edge pairings");
  }
  for (double e : rep.edge_errors)
    rep.max_edge_error = std::max(rep.max_edge_error, e);

  // (b) vertex cycles: angle sums must be 2 pi / p.
  if (!p.spec.zero_angle()) {
    auto va = vertex_analysis(t);
    for (const auto& cycle : va.cycles) {
      double sum = 0.0;
      for (auto [sq, corner] : cycle) {
        Complex v = lay.corner(sq, corner);
        Side s1, s2;
        switch (corner) {
          case 0: s1 = Side::Right; s2 = Side::Top; break;
          case 1: s1 = Side::Top; s2 = Side::Left; break;
          case 2: s1 = Side::Left; s2 = Side::Bottom; break;
          default: s1 = Side::Bottom; s2 = Side::Right; break;
        }
        sum += angle_between(v, lay.edge(sq, s1), lay.edge(sq, s2));
      }
      rep.vertex_angle_sums.push_back(sum);
      int order = std::max(1, static_cast<int>(std::lround(2.0 * kPi / sum)));
      rep.vertex_orders.push_back(order);
      double dev = std::abs(sum - 2.0 * kPi / order);
      rep.max_vertex_deviation = std::max(rep.max_vertex_deviation, dev);
      if (dev > vertex_tol) {
        std::ostringstream os;
        os << "vertex cycle angle sum " << sum << " is not 2 pi / p";
        rep.failures.push_back(os.str());
      }
    }
  }

  // (c) sampled disjointness of the copies.
  for (int s = 0; s < t.count && rep.interiors_disjoint; ++s) {
    Complex c = lay.placement[s](Complex(0.0));
    for (int s2 = 0; s2 < t.count; ++s2) {
      if (s2 == s) continue;
      if (point_in_copy(lay, s2, c)) {
        rep.interiors_disjoint = false;
        rep.failures.push_back("copy interiors overlap");
        break;
      }
    }
  }

  rep.clean = rep.failures.empty();
  return rep;
}

double word_geodesic_length(const PairingWord& w, const QuadrangleSpec& spec,
                            Stratum::Flavor) {
  GeneratorPair gen = build_generators(spec);
  return translation_length(evaluate_word(w, gen));
}

// ---------------------------------------------------------------------------
// SVG

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

void svg_arc(std::ostringstream& os, const Geodesic& g, const char* color) {
  os << "  <path d=\"M " << g.e1.real() << ' ' << -g.e1.imag();
  if (g.kind == Geodesic::Kind::Diameter) {
    os << " L " << g.e2.real() << ' ' << -g.e2.imag();
  } else {
    // Choose the minor arc; the y axis is flipped for SVG.
    Complex u = g.e1 - g.center, v = g.e2 - g.center;
    double cross = u.real() * v.imag() - u.imag() * v.real();
    int sweep = cross > 0 ? 1 : 0;  // flipped axis reverses orientation
    os << " A " << g.radius << ' ' << g.radius << " 0 0 " << sweep << ' '
       << g.e2.real() << ' ' << -g.e2.imag();
  }
  os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"0.008\"/>\n";
}

}  // namespace

std::string layout_svg(const DomainLayout& lay, const RectTiling& t) {
  std::ostringstream os;
  os.precision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
        "viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
  os << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
        "stroke-width=\"0.005\"/>\n";
  std::map<std::array<int, 2>, int> cells;
  for (int i = 0; i < t.count; ++i) cells[t.arrangement[i]] = i;
  // Interior edges in gray (each drawn once, from the right/top side).
  for (int s = 0; s < t.count; ++s)
    for (Side sd : {Side::Right, Side::Top}) {
      auto c = t.arrangement[s];
      auto n = c;
      if (sd == Side::Right) n[0]++; else n[1]++;
      if (cells.count(n)) svg_arc(os, lay.edge(s, sd), "#bbbbbb");
    }
  for (size_t i = 0; i < t.pairings.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(char*))];
    svg_arc(os, lay.edge(t.pairings[i].a.square, t.pairings[i].a.side), color);
    svg_arc(os, lay.edge(t.pairings[i].b.square, t.pairings[i].b.side), color);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rectsurf
