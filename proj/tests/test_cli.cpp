#include <set>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace rectsurf;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("mu and tau conversions") {
  auto r = cli({"mu", "--tau", "i"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");

  auto r2 = cli({"tau", "--mu", "2"});
  CHECK(r2.code == 0);
  CHECK(r2.out.find("1i") != std::string::npos);

  auto r3 = cli({"mu", "--tau", "(1+i*sqrt(3))/2"});
  CHECK(r3.code == 0);
  CHECK(r3.out.find("0.8660254") != std::string::npos);
}

TEST_CASE("enumerate emits nineteen tilings and four orbits") {
  auto r = cli({"enumerate", "--squares", "4", "--balanced", "--orbits"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 19);
  CHECK(j["tilings"].size() == 19);
  CHECK(j["orbits"].size() == 4);
  std::multiset<size_t> sizes;
  for (const auto& o : j["orbits"]) sizes.insert(o.size());
  CHECK(sizes == std::multiset<size_t>{3, 4, 6, 6});
  // deterministic output
  auto r2 = cli({"enumerate", "--squares", "4", "--balanced", "--orbits"});
  CHECK(r2.out == r.out);
}

TEST_CASE("group and domain subcommands") {
  auto r = cli({"group", "--family", "st1", "--genus", "2", "--L", "1.3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["poincare"]["clean"] == true);
  CHECK(j["generators"].size() == 5);
  CHECK(j["flavor"] == "abelian");
  CHECK(j["spec"]["angle_n"] == 4);  // smallest admissible angle by default
  CHECK(std::string(j["convention"]).find("half-turn") != std::string::npos);

  auto bad = cli({"group", "--family", "st1", "--genus", "2", "--angle", "3"});
  CHECK(bad.code == 2);

  auto svg = cli({"domain", "--family", "escb2", "--genus", "2", "--L",
                  "sqrt(2)"});
  REQUIRE(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
}

TEST_CASE("equation subcommand") {
  auto r = cli({"equation", "--family", "escb2", "--genus", "2", "--mu", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  // y^2 = x (x^4 + 1)
  REQUIRE(j["coefficients"].size() == 6);
  CHECK(j["coefficients"][1][0] == doctest::Approx(1.0));
  CHECK(j["coefficients"][5][0] == doctest::Approx(1.0));
  CHECK(j["coefficients"][3][0] == doctest::Approx(0.0));

  auto rd = cli({"equation", "--family", "D", "--mu", "2"});
  REQUIRE(rd.code == 0);
  auto jd = nlohmann::json::parse(rd.out);
  CHECK(jd["case"] == "D");

  auto bad = cli({"equation", "--family", "esc1", "--genus", "2", "--mu", "2"});
  CHECK(bad.code == 2);  // parity violation maps to a validation error
}

TEST_CASE("solve and fn subcommands") {
  auto r = cli({"solve", "--angle", "4", "--L", "sqrt(cos(pi/4)+1)",
                "--levels", "4"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["im_tau"].get<double>() - 1.0) < 1e-5);
  CHECK(std::abs(j["mu"].get<double>() - 2.0) < 1e-4);

  auto fn = cli({"fn", "--family", "A", "--length", "2.0", "--fn-twist",
                 "0.25"});
  REQUIRE(fn.code == 0);
  auto jf = nlohmann::json::parse(fn.out);
  CHECK(jf["entries"].size() == 3);
  CHECK(jf["entries"][0]["twist"] == doctest::Approx(0.25));
}

TEST_CASE("twist subcommand") {
  auto r = cli({"twist", "--family", "B", "--along", "gamma"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["squares"] == 4);

  auto r2 = cli({"twist", "--family", "A", "--apply", "phi1", "--length",
                 "2.0"});
  REQUIRE(r2.code == 0);
  auto j2 = nlohmann::json::parse(r2.out);
  CHECK(j2["entries"][0]["twist"] == doctest::Approx(0.5));
}

TEST_CASE("exit codes") {
  CHECK(cli({"mu", "--tau", "0.5"}).code == 2);       // Im tau <= 0
  CHECK(cli({"tau", "--mu", "0.5+0.2i"}).code == 2);  // unsupported branch
  CHECK(cli({"nonsense"}).code == 2);
  // non-convergence surfaces as exit 3
  auto r = cli({"solve", "--angle", "4", "--L", "1.4", "--levels", "2",
                "--tol", "1e-12"});
  CHECK(r.code == 3);
}
