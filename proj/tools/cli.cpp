#include "cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rectsurf/curves.hpp"
#include "rectsurf/elliptic.hpp"
#include "rectsurf/fenchel_nielsen.hpp"
#include "rectsurf/fuchsian.hpp"
#include "rectsurf/modsolver.hpp"
#include "rectsurf/quadrangle.hpp"
#include "rectsurf/tiling.hpp"

namespace rectsurf {

namespace {

using nlohmann::json;

// --- tiny complex expression evaluator for flag values ---------------------

struct ExprParser {
  std::string s;
  size_t pos = 0;

  explicit ExprParser(std::string text) : s(std::move(text)) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Complex parse() {
    Complex v = expr();
    skip();
    if (pos != s.size()) throw DegenerateInput("trailing input in expression");
    return v;
  }

  Complex expr() {
    Complex v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Complex term() {
    Complex v = factor();
    for (;;) {
      if (eat('*')) v *= factor();
      else if (eat('/')) v /= factor();
      else return v;
    }
  }
  Complex factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Complex v = primary();
    if (eat('^')) v = std::pow(v, factor());
    return v;
  }
  Complex primary() {
    skip();
    if (pos >= s.size()) throw DegenerateInput("truncated expression");
    if (eat('(')) {
      Complex v = expr();
      if (!eat(')')) throw DegenerateInput("missing )");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.') {
      size_t end = pos;
      while (end < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[end])) ||
              s[end] == '.' || s[end] == 'e' || s[end] == 'E' ||
              ((s[end] == '+' || s[end] == '-') && end > pos &&
               (s[end - 1] == 'e' || s[end - 1] == 'E'))))
        ++end;
      double x = std::stod(s.substr(pos, end - pos));
      pos = end;
      if (pos < s.size() && s[pos] == 'i') {
        ++pos;
        return Complex(0.0, x);
      }
      return Complex(x, 0.0);
    }
    auto word = [&]() {
      size_t end = pos;
      while (end < s.size() &&
             std::isalpha(static_cast<unsigned char>(s[end])))
        ++end;
      std::string w = s.substr(pos, end - pos);
      pos = end;
      return w;
    };
    std::string w = word();
    if (w == "i") return Complex(0.0, 1.0);
    if (w == "pi") return Complex(3.14159265358979323846, 0.0);
    if (w == "sqrt" || w == "cos" || w == "sin" || w == "exp") {
      if (!eat('(')) throw DegenerateInput("expected ( after " + w);
      Complex v = expr();
      if (!eat(')')) throw DegenerateInput("missing )");
      if (w == "sqrt") return std::sqrt(v);
      if (w == "cos") return std::cos(v);
      if (w == "sin") return std::sin(v);
      return std::exp(v);
    }
    throw DegenerateInput("unknown token in expression: " + w);
  }
};

Complex parse_complex(const std::string& text) {
  return ExprParser(text).parse();
}

double parse_real(const std::string& text) {
  Complex v = parse_complex(text);
  if (std::abs(v.imag()) > 1e-12)
    throw DegenerateInput("expected a real value: " + text);
  return v.real();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(Complex v) {
  if (std::abs(v.imag()) < 1e-13) return fmt(v.real());
  return fmt(v.real()) + (v.imag() < 0 ? "-" : "+") +
         fmt(std::abs(v.imag())) + "i";
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
  if (path.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw DegenerateInput("cannot open output file " + path);
  f << text;
}

int parse_angle(const std::string& text) {
  if (text == "zero" || text == "0") return 0;
  return std::stoi(text);
}

SolverConfig load_config(const std::string& path, int levels, double tol) {
  SolverConfig cfg;
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw DegenerateInput("cannot open config file " + path);
    std::string line;
    while (std::getline(f, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string v) {
        while (!v.empty() && std::isspace((unsigned char)v.front()))
          v.erase(v.begin());
        while (!v.empty() && std::isspace((unsigned char)v.back()))
          v.pop_back();
        return v;
      };
      std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
      if (key == "levels") cfg.levels = std::stoi(val);
      else if (key == "base_n") cfg.base_n = std::stoi(val);
      else if (key == "tol") cfg.tol = std::stod(val);
      else if (key == "grading") cfg.grading = std::stod(val);
      else if (key == "cusp_start") cfg.cusp_start = std::stod(val);
      else if (key == "cusp_rounds") cfg.cusp_rounds = std::stoi(val);
    }
  }
  if (levels > 0) cfg.levels = levels;
  if (tol > 0) cfg.tol = tol;
  return cfg;
}

// Tiling selected by --family/--genus or by --tiling file; the four-square
// classes A-D are accepted as family names.
RectTiling tiling_from_flags(const std::string& family, int genus,
                             const std::string& tiling_path) {
  if (!tiling_path.empty()) {
    std::ifstream f(tiling_path);
    if (!f) throw DegenerateInput("cannot open tiling file " + tiling_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return tiling_from_json(ss.str());
  }
  if (family.empty()) throw DegenerateInput("need --family or --tiling");
  if (family.size() == 1) {
    auto fam = orbit_family_from_name(family);
    switch (fam) {
      case OrbitFamily::A: return canonical_tiling(family_tiling(Family::St1, 2));
      case OrbitFamily::B:
        return canonical_tiling(family_tiling(Family::Escb2, 2));
      case OrbitFamily::C:
        return half_twist_tiling(
            canonical_tiling(family_tiling(Family::St1, 2)), TwistCurve::Gamma2);
      case OrbitFamily::D:
        return half_twist_tiling(
            canonical_tiling(family_tiling(Family::Escb2, 2)),
            TwistCurve::Gamma2);
    }
  }
  return family_tiling(family_from_name(family), genus);
}

json matrix_json(const Moebius& m) {
  auto c = [](Complex z) { return json::array({z.real(), z.imag()}); };
  return json::array({c(m.a), c(m.b), c(m.c), c(m.d)});
}

json group_json(const TilingGroup& tg, const PoincareReport& rep) {
  json j;
  j["spec"]["L"] = tg.presentation.spec.L;
  j["spec"]["angle_n"] = tg.presentation.spec.n;
  j["spec"]["twist"] = tg.presentation.spec.twist;
  j["flavor"] = tg.presentation.flavor == Stratum::Flavor::Abelian
                    ? "abelian"
                    : "quadratic";
  j["convention"] = tg.presentation.convention;
  j["generators"] = json::array();
  for (size_t i = 0; i < tg.presentation.words.size(); ++i) {
    json g;
    g["word"] = word_text(tg.presentation.words[i]);
    g["matrix"] = matrix_json(tg.presentation.matrices[i]);
    j["generators"].push_back(g);
  }
  j["poincare"]["clean"] = rep.clean;
  j["poincare"]["max_edge_error"] = rep.max_edge_error;
  j["poincare"]["max_vertex_deviation"] = rep.max_vertex_deviation;
  j["poincare"]["vertex_angle_sums"] = rep.vertex_angle_sums;
  j["poincare"]["interiors_disjoint"] = rep.interiors_disjoint;
  j["poincare"]["failures"] = rep.failures;
  return j;
}

int run_parsed(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    return run_parsed(args, out, err);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const NotConverged& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const MeshFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

namespace {

int run_parsed(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"surfaces obtained from rectangles: groups, invariants, "
               "equations"};
  app.require_subcommand(1);

  std::string family, tiling_path, angle, out_path, config_path;
  std::string mu_text, tau_text, L_text = "sqrt(2)", apply, along, format;
  // empty angle = pick the smallest admissible one for the tiling
  int genus = 2, squares = 4, levels = -1;
  double twist = 0.0, length = 0.0, tol = -1.0, fn_twist = 0.0;
  bool orbits = false, balanced = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out_path, "write output to this file");
    c->add_option("--format", format, "json|csv|svg (per subcommand default)");
  };
  auto add_spec = [&](CLI::App* c) {
    c->add_option("--angle", angle,
                  "angle denominator n (>= 3), 'zero', or empty for the "
                  "smallest admissible");
    c->add_option("--L", L_text, "cosh of half the median length, expression");
    c->add_option("--twist", twist, "fractional twist along the A axis");
  };
  auto add_tiling = [&](CLI::App* c) {
    c->add_option("--family", family,
                  "st1|st2|esc1|esc2|escb1|escb2 or A|B|C|D");
    c->add_option("--genus", genus, "genus for the staircase families");
    c->add_option("--tiling", tiling_path, "tiling JSON file");
  };

  auto* c_enum = app.add_subcommand("enumerate", "balanced square tilings");
  c_enum->add_option("--squares", squares, "number of unit squares");
  c_enum->add_flag("--balanced", balanced, "restrict to balanced (always on)");
  c_enum->add_flag("--orbits", orbits, "include the modular orbit partition");
  add_common(c_enum);

  auto* c_group = app.add_subcommand("group", "side pairings and matrices");
  add_tiling(c_group);
  add_spec(c_group);
  add_common(c_group);

  auto* c_domain = app.add_subcommand("domain", "fundamental domain SVG");
  add_tiling(c_domain);
  add_spec(c_domain);
  add_common(c_domain);

  auto* c_mu = app.add_subcommand("mu", "mu from tau");
  c_mu->add_option("--tau", tau_text, "lattice parameter")->required();
  add_common(c_mu);

  auto* c_tau = app.add_subcommand("tau", "tau from mu (real mu > 1)");
  c_tau->add_option("--mu", mu_text, "genus-1 invariant")->required();
  add_common(c_tau);

  auto* c_solve = app.add_subcommand("solve", "tau from (L, angle)");
  add_spec(c_solve);
  c_solve->add_option("--levels", levels, "mesh refinement levels");
  c_solve->add_option("--tol", tol, "target tolerance on Im tau");
  c_solve->add_option("--config", config_path, "key=value solver overrides");
  add_common(c_solve);

  auto* c_table = app.add_subcommand("table", "reference mu table CSV");
  c_table->add_option("--angle", angle, "3|4|5|6|8|zero|all");
  c_table->add_option("--levels", levels, "mesh refinement levels");
  c_table->add_option("--tol", tol, "target tolerance on Im tau");
  c_table->add_option("--config", config_path, "key=value solver overrides");
  add_common(c_table);

  auto* c_eq = app.add_subcommand("equation", "hyperelliptic curve data");
  c_eq->add_option("--family", family,
                   "st1|st2|esc1|esc2|escb1|escb2 or A|B|C|D")
      ->required();
  c_eq->add_option("--genus", genus, "genus (staircase families)");
  c_eq->add_option("--mu", mu_text, "genus-1 invariant");
  c_eq->add_option("--nu", mu_text, "case A parameter (alias of --mu slot)");
  c_eq->add_option("--t", tau_text, "case C parameter t");
  add_common(c_eq);

  auto* c_fn = app.add_subcommand("fn", "Fenchel-Nielsen coordinates");
  add_tiling(c_fn);
  add_spec(c_fn);
  c_fn->add_option("--length", length, "pants curve length (family chart)");
  c_fn->add_option("--fn-twist", fn_twist, "family chart twist");
  add_common(c_fn);

  auto* c_twist = app.add_subcommand("twist", "fractional / half twists");
  add_tiling(c_twist);
  c_twist->add_option("--along", along, "gamma|gamma2|gamma3 (tiling mode)");
  c_twist->add_option("--apply", apply, "phi1|phi2 (coordinate mode)");
  c_twist->add_option("--length", length, "pants curve length (family chart)");
  c_twist->add_option("--fn-twist", fn_twist, "family chart twist");
  add_common(c_twist);

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  app.parse(argv);

  auto make_spec = [&](int fallback_n = 4) {
    int n = angle.empty() ? fallback_n : parse_angle(angle);
    return QuadrangleSpec(parse_real(L_text), n, twist);
  };

  if (c_enum->parsed()) {
    if (squares != 4)
      throw UnsupportedCase("only the four-square enumeration is supported");
    auto all = enumerate_balanced_four();
    json j;
    j["count"] = all.size();
    j["tilings"] = json::array();
    j["strata"] = json::array();
    for (const auto& t : all) {
      j["tilings"].push_back(json::parse(tiling_to_json(t)));
      j["strata"].push_back(vertex_analysis(t).stratum.name());
    }
    if (orbits) {
      auto parts = orbit_partition(all);
      j["orbits"] = parts;
    }
    write_output(out_path, j.dump(2), out);
    return 0;
  }

  if (c_group->parsed() || c_domain->parsed()) {
    RectTiling t = tiling_from_flags(family, genus, tiling_path);
    auto diag = validate_tiling(t);
    if (!diag.ok) {
      for (const auto& v : diag.violations) err << v << "\n";
      return 2;
    }
    auto va = vertex_analysis(t);
    QuadrangleSpec spec = make_spec(va.m);
    TilingGroup tg = build_group(t, spec);
    if (c_domain->parsed()) {
      write_output(out_path, layout_svg(tg.layout, t), out);
      return 0;
    }
    auto rep = verify_poincare(tg.presentation, tg.layout, t, true);
    write_output(out_path, group_json(tg, rep).dump(2), out);
    return 0;
  }

  if (c_mu->parsed()) {
    Complex tau = parse_complex(tau_text);
    write_output(out_path, fmt(mu_from_tau(LatticeTau(tau)).mu), out);
    return 0;
  }

  if (c_tau->parsed()) {
    Complex mu = parse_complex(mu_text);
    write_output(out_path, fmt(tau_from_mu(MuInvariant(mu)).tau), out);
    return 0;
  }

  if (c_solve->parsed()) {
    SolverConfig cfg = load_config(config_path, levels, tol);
    auto r = tau_from_quadrangle(make_spec(), cfg);
    json j;
    j["im_tau"] = r.im_tau;
    j["error_estimate"] = r.error_estimate;
    j["mu"] = r.mu;
    j["energies"] = r.energies;
    write_output(out_path, j.dump(2), out);
    return 0;
  }

  if (c_table->parsed()) {
    SolverConfig cfg = load_config(config_path, levels, tol);
    int n = (angle == "all" || angle.empty()) ? -1 : parse_angle(angle);
    auto rep = reproduce_mu_table(n, cfg);
    write_output(out_path, rep.csv(), out);
    return rep.failures == 0 ? 0 : 3;
  }

  if (c_eq->parsed()) {
    json j;
    if (family.size() == 1) {
      switch (orbit_family_from_name(family)) {
        case OrbitFamily::A: {
          auto d = mu_text.empty() ? caseA_from_nu(3.0)
                                   : caseA_from_nu(parse_complex(mu_text));
          j["case"] = "A";
          j["nu"] = {d.nu.real(), d.nu.imag()};
          j["mu"] = {d.mu.real(), d.mu.imag()};
          j["curve"] = json::array();
          for (Complex c : d.curve.c) j["curve"].push_back({c.real(), c.imag()});
          j["orbit_nu"] = json::array();
          for (Complex v : d.orbit_nu())
            j["orbit_nu"].push_back({v.real(), v.imag()});
          break;
        }
        case OrbitFamily::B: {
          auto d = caseB_data(parse_complex(mu_text));
          j["case"] = "B";
          j["a"] = {d.a.real(), d.a.imag()};
          j["curve"] = json::array();
          for (Complex c : d.curve.c) j["curve"].push_back({c.real(), c.imag()});
          j["orbit_a"] = json::array();
          for (Complex v : d.orbit_a())
            j["orbit_a"].push_back({v.real(), v.imag()});
          break;
        }
        case OrbitFamily::C: {
          if (!tau_text.empty()) {
            auto d = caseC_data(parse_complex(tau_text));
            j["case"] = "C";
            j["t"] = {d.t.real(), d.t.imag()};
            j["a"] = {d.a.real(), d.a.imag()};
            j["b"] = {d.b.real(), d.b.imag()};
            j["c"] = {d.c.real(), d.c.imag()};
            j["lambda"] = {d.lambda.real(), d.lambda.imag()};
            j["mu"] = {d.mu.real(), d.mu.imag()};
            j["companions"] = json::array();
            for (Complex v : d.companions())
              j["companions"].push_back({v.real(), v.imag()});
          } else {
            auto cands = caseC_from_mu(parse_complex(mu_text));
            j["case"] = "C";
            j["candidates"] = json::array();
            for (const auto& cd : cands) {
              json e;
              e["w"] = {cd.w.real(), cd.w.imag()};
              e["t"] = {cd.t.real(), cd.t.imag()};
              e["class"] = cd.cls == CaseCClass::C1
                               ? "C1"
                               : cd.cls == CaseCClass::C4 ? "C4" : "C2/C3";
              e["residual"] = cd.residual;
              j["candidates"].push_back(e);
            }
          }
          break;
        }
        case OrbitFamily::D: {
          auto d = caseD_data(parse_complex(mu_text));
          j["case"] = "D";
          j["a1"] = {d.a1.real(), d.a1.imag()};
          j["a3"] = {d.a3.real(), d.a3.imag()};
          j["b"] = {d.b.real(), d.b.imag()};
          j["lambda"] = {d.lambda.real(), d.lambda.imag()};
          j["curve_D1"] = json::array();
          for (Complex c : d.curve1.c)
            j["curve_D1"].push_back({c.real(), c.imag()});
          j["curve_D3"] = json::array();
          for (Complex c : d.curve3.c)
            j["curve_D3"].push_back({c.real(), c.imag()});
          break;
        }
      }
      write_output(out_path, j.dump(2), out);
      return 0;
    }
    auto c = family_equation(family_from_name(family), genus,
                             parse_complex(mu_text));
    write_output(out_path, curve_to_json(c), out);
    return 0;
  }

  if (c_fn->parsed()) {
    if (!family.empty() && family.size() == 1) {
      auto fn = fn_for_family(orbit_family_from_name(family), length, fn_twist);
      write_output(out_path, fn_to_json(fn), out);
      return 0;
    }
    RectTiling t = tiling_from_flags(family, genus, tiling_path);
    auto fn = fn_for_orbit(t, make_spec(vertex_analysis(t).m), {});
    write_output(out_path, fn_to_json(fn), out);
    return 0;
  }

  if (c_twist->parsed()) {
    if (!apply.empty()) {
      auto fn = fn_for_family(orbit_family_from_name(family), length, fn_twist);
      Direction dir =
          (apply == "phi2") ? Direction::Vertical : Direction::Horizontal;
      fn.chart = dir;  // family chart marks its own cylinders
      auto res = fractional_twist(fn, dir);
      write_output(out_path, fn_to_json(res), out);
      return 0;
    }
    RectTiling t = tiling_from_flags(family, genus, tiling_path);
    TwistCurve curve = TwistCurve::Gamma;
    if (along == "gamma2") curve = TwistCurve::Gamma2;
    else if (along == "gamma3") curve = TwistCurve::Gamma3;
    else if (along != "gamma" && !along.empty())
      throw UnsupportedCase("unknown curve: " + along);
    write_output(out_path, tiling_to_json(half_twist_tiling(t, curve)), out);
    return 0;
  }

  err << "no subcommand\n";
  return 2;
}

}  // namespace

}  // namespace rectsurf
