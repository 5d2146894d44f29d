#include "rectsurf/fenchel_nielsen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace rectsurf {

OrbitFamily orbit_family_from_name(const std::string& name) {
  if (name == "A" || name == "a") return OrbitFamily::A;
  if (name == "B" || name == "b") return OrbitFamily::B;
  if (name == "C" || name == "c") return OrbitFamily::C;
  if (name == "D" || name == "d") return OrbitFamily::D;
  throw UnsupportedCase("unknown orbit family: " + name);
}

FNCoordinates fn_for_family(OrbitFamily f, double ell, double tw) {
  if (ell <= 0.0) throw DomainError("length must be positive");
  double ellp = 2.0 * std::acosh(2.0 * std::cosh(ell / 2.0) + 1.0);
  double half = 0.5;
  FNCoordinates fn;
  double t1 = tw, t3 = 0.0;
  switch (f) {
    case OrbitFamily::A: break;
    case OrbitFamily::B: t3 = half; break;
    case OrbitFamily::C: t1 = tw + half; break;
    case OrbitFamily::D: t1 = tw + half; t3 = half; break;
  }
  fn.entries = {{ell, t1, true, 2},
                {ell, tw, true, 2},
                {ellp, t3, true, 0}};
  return fn;
}

FNCoordinates fn_for_orbit(const RectTiling& t, const QuadrangleSpec& spec,
                           const std::vector<PairingWord>& extra_curves) {
  auto va = vertex_analysis(t);
  if (!va.balanced) throw NotBalanced();
  FNCoordinates fn;
  if (genus(t) < 2) return fn;  // no pants curves
  double ell = 2.0 * std::acosh(spec.L);
  auto cd = cylinder_decomposition(t, Direction::Horizontal);
  for (int w : cd.widths)
    fn.entries.push_back({w * ell, spec.twist / w, false, w});
  for (const auto& word : extra_curves)
    fn.entries.push_back(
        {word_geodesic_length(word, spec, va.stratum.flavor), 0.0, false, 0});
  return fn;
}

FNCoordinates fractional_twist(const FNCoordinates& fn, Direction which,
                               int sign) {
  if (which != fn.chart) throw MissingMarkers("chart direction mismatch");
  bool any = false;
  FNCoordinates out = fn;
  for (auto& e : out.entries)
    if (e.cylinder_width > 0) {
      e.twist += static_cast<double>(sign) / e.cylinder_width;
      any = true;
    }
  if (!any) throw MissingMarkers("no cylinder entries in this chart");
  return out;
}

namespace {

// Canonical encodings of the four balanced four-square classes, computed
// once from the enumeration orbits.
struct FourSquareClasses {
  std::vector<int> enc[4];     // A, B, C, D
  RectTiling rep[4];
};

const FourSquareClasses& four_square_classes() {
  static const FourSquareClasses fc = [] {
    FourSquareClasses out;
    auto all = enumerate_balanced_four();
    auto orbits = orbit_partition(all);
    for (const auto& orbit : orbits) {
      auto st = vertex_analysis(all[orbit.front()]).stratum;
      bool abelian = st.flavor == Stratum::Flavor::Abelian;
      int which;
      if (abelian)
        which = orbit.size() == 6 ? 0 : 2;  // A : C
      else
        which = orbit.size() == 3 ? 1 : 3;  // B : D
      // Representatives in the reference shapes: A and B two-cylinder
      // staircases, C with horizontal widths {3,1}, D with {2,1,1}.
      std::vector<int> want;
      switch (which) {
        case 0: case 1: want = {2, 2}; break;
        case 2: want = {3, 1}; break;
        default: want = {2, 1, 1}; break;
      }
      int chosen = orbit.front();
      for (int i : orbit) {
        auto w = cylinder_decomposition(all[i], Direction::Horizontal).widths;
        std::sort(w.rbegin(), w.rend());
        if (w == want) {
          chosen = i;
          break;
        }
      }
      out.rep[which] = canonical_tiling(all[chosen]);
      // orbit identification key: the least member of the orbit
      out.enc[which] = canonical_encoding(to_complex(all[orbit.front()]));
    }
    return out;
  }();
  return fc;
}

int four_square_class_of(const RectTiling& t) {
  auto enc = canonical_encoding(to_complex(t));
  const auto& fc = four_square_classes();
  // Membership in the orbit, not just equality with the representative.
  auto all = enumerate_balanced_four();
  auto orbits = orbit_partition(all);
  for (const auto& orbit : orbits) {
    for (int i : orbit)
      if (canonical_encoding(to_complex(all[i])) == enc) {
        auto oenc = canonical_encoding(to_complex(all[orbit.front()]));
        for (int k = 0; k < 4; ++k)
          if (fc.enc[k] == oenc) return k;
      }
  }
  return -1;
}

}  // namespace

RectTiling half_twist_tiling(const RectTiling& t, TwistCurve along) {
  if (along == TwistCurve::Gamma) {
    // Staircase regluing at any genus: St1(g) <-> Esc2(g) (g odd) or
    // Escb2(g) (g even).
    if (t.count % 2 != 0) throw NotApplicable("odd square count");
    int g = t.count / 2;
    if (g < 1) throw NotApplicable();
    Family partner_of_st1 = (g % 2) ? Family::Esc2 : Family::Escb2;
    auto enc = canonical_encoding(to_complex(t));
    RectTiling st1 = family_tiling(Family::St1, g);
    if (enc == canonical_encoding(to_complex(st1)))
      return canonical_tiling(family_tiling(partner_of_st1, g));
    RectTiling esc = family_tiling(partner_of_st1, g);
    if (enc == canonical_encoding(to_complex(esc)))
      return canonical_tiling(st1);
    throw NotApplicable("tiling is not a staircase family member");
  }
  if (t.count != 4) throw NotApplicable("four-square classes only");
  int cls = four_square_class_of(t);
  if (cls < 0) throw NotApplicable("not a balanced four-square tiling");
  int image;
  if (along == TwistCurve::Gamma2)
    image = cls ^ 2;  // A<->C, B<->D
  else
    image = cls ^ 1;  // Gamma3: A<->B, C<->D
  return four_square_classes().rep[image];
}

TraceTriple trace_triple(const QuadrangleSpec& spec) {
  GeneratorPair gen = build_generators(spec);
  Moebius B = gen.B_eff();
  double x = std::abs(gen.A.trace_normalized());
  double y = std::abs(B.trace_normalized());
  double z = std::abs((gen.A * B.inverse()).trace_normalized());
  return {x * x, y * y, z * z};
}

TripleSolution solve_triple(double x2, double y2, double z2_target, int n) {
  if (x2 <= 4.0) throw NoSolution("trace(A)^2 must exceed 4");
  double L = std::sqrt(x2) / 2.0;
  QuadrangleSpec probe(L, n, 0.0);
  double Lp = l_prime(probe);
  double tw = std::sqrt(y2) / (2.0 * Lp);
  if (tw < 1.0 - 1e-12) throw NoSolution("trace(B)^2 below the untwisted value");
  tw = std::max(tw, 1.0);
  double t = std::acosh(tw) / std::acosh(L);
  QuadrangleSpec spec(L, n, t);
  TraceTriple got = trace_triple(spec);
  return {L, t, got.z2, std::abs(got.z2 - z2_target)};
}

std::string triples_csv(const std::vector<QuadrangleSpec>& specs) {
  std::ostringstream os;
  os << "L,n,t,x2,y2,z2\n";
  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& spec : specs) {
    TraceTriple tt = trace_triple(spec);
    os << fmt(spec.L) << ',' << spec.n << ',' << fmt(spec.twist) << ','
       << fmt(tt.x2) << ',' << fmt(tt.y2) << ',' << fmt(tt.z2) << '\n';
  }
  return os.str();
}

std::string fn_to_json(const FNCoordinates& fn) {
  nlohmann::json j;
  j["chart"] = fn.chart == Direction::Horizontal ? "horizontal" : "vertical";
  j["entries"] = nlohmann::json::array();
  for (const auto& e : fn.entries) {
    nlohmann::json je;
    je["length"] = e.length;
    je["twist"] = e.twist;
    je["twist_known"] = e.twist_known;
    je["cylinder_width"] = e.cylinder_width;
    j["entries"].push_back(je);
  }
  return j.dump(2);
}

}  // namespace rectsurf
