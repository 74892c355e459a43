#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crownlab/cli.hpp"

namespace fs = std::filesystem;
using crownlab::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "crownlab_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"iwasawa"}).code == 2);
  CHECK(call({"iwasawa", (scratch() / "missing.json").string()}).code == 2);
  CHECK(call({"iwasawa", write("bad.json", "{\"n\": 2, \"entries\": [[1, 0]]}")}).code == 2);
  CHECK(call({"iwasawa", write("garbage.json", "not json")}).code == 2);
  CHECK(call({"cell", "--group", "sl4", "--emit", "svg"}).code == 2);
  CHECK(call({"cell", "--group", "sl3", "--emit", "png"}).code == 2);
  CHECK(call({"selftest", "nothing"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("iwasawa command") {
  const auto id = write("id.json", "{\"n\": 3, \"entries\": [[1,0,0],[0,1,0],[0,0,1]]}");
  const auto r = call({"iwasawa", id});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "residual = 0.000e+00"));

  const auto rot = write("rot.json", "{\"n\": 2, \"entries\": [[[0.6],[-0.8]],[[0.8, 0],[0.6, 0]]]}");
  const auto rr = call({"iwasawa", rot});
  CHECK(rr.code == 0);
  CHECK(contains(rr.out, "n =\n" + std::string(21, ' ') + "1" + std::string(20, ' ') + "0\n" + std::string(21, ' ') + "0" +
                              std::string(20, ' ') + "1\n"));

  const auto singular = write("sing.json", "{\"n\": 2, \"entries\": [[1,0],[0,0]]}");
  CHECK(call({"iwasawa", singular}).code == 3);
  const auto complex = write("cplx.json", "{\"n\": 1, \"entries\": [[[1, 1]]]}");
  CHECK(call({"iwasawa", complex}).code == 3);
}

TEST_CASE("classification commands") {
  const auto u = write("u.json", "{\"n\": 3, \"entries\": [[1,1,0],[0,1,0],[0,0,1]]}");
  CHECK(call({"classify", u}).out == "unipotent\n");
  const auto rot = write("rot3.json", "{\"n\": 3, \"entries\": [[0,-1,0],[1,0,0],[0,0,1]]}");
  const auto r = call({"conj-na", rot});
  CHECK(r.code == 4);
  CHECK(contains(r.err, "elliptic obstruction"));
  const auto d = write("d.json", "{\"n\": 3, \"entries\": [[2,0,0],[0,1,0],[0,0,0.5]]}");
  const auto n = call({"nilpotent", u, d});
  CHECK(n.code == 0);
  CHECK(contains(n.out, "closure dimension: 2\n"));
  CHECK(contains(n.out, "lower central series: 2,1,1\n"));
  CHECK(contains(n.out, "not nilpotent; quotient not Stein by criterion"));
  const auto u23 = write("u23.json", "{\"n\": 3, \"entries\": [[1,0,0],[0,1,1],[0,0,1]]}");
  const auto h = call({"nilpotent", u, u23});
  CHECK(contains(h.out, "lower central series: 3,1,0\n"));
  CHECK(contains(h.out, "nilpotent; quotient Stein by criterion"));
  CHECK(call({"jordan", d}).code == 0);
}

TEST_CASE("cell command") {
  const auto v = call({"cell", "--group", "sl3", "--emit", "vertices"});
  CHECK(v.code == 0);
  int lines = 0;
  std::istringstream in(v.out);
  for (std::string line; std::getline(in, line);) lines += line.rfind("(", 0) == 0;
  CHECK(lines == 6);
  CHECK(contains(v.out, "(1/3, -1/6, -1/6)"));

  const auto v2 = call({"cell", "--group", "sl2", "--emit", "vertices"});
  CHECK(contains(v2.out, "(1/4, -1/4)\n(-1/4, 1/4)\n"));

  const auto svg = call({"cell", "--group", "sl3", "--emit", "svg"});
  CHECK(contains(svg.out, "viewBox=\"0 0 400 400\""));
  CHECK(contains(svg.out, "Z\""));
  CHECK(svg.out == call({"cell", "--group", "sl3", "--emit", "svg"}).out);

  const auto path = (scratch() / "cell.csv").string();
  CHECK(call({"cell", "--group", "sl3", "--emit", "csv", "--out", path}).code == 0);
  std::ifstream csv(path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "lambda2,lambda3");
}

TEST_CASE("tube commands") {
  const auto id = write("tid.json", "{\"n\": 3, \"entries\": [[1,0,0],[0,1,0],[0,0,1]]}");
  CHECK(call({"tube", "member", id}).out == "true, args (0,0,0)\n");

  const auto bad = write("tbad.json", "{\"n\": 3, \"entries\": [[-1,0,0],[0,-1,0],[0,0,1]]}");
  const auto m = call({"tube", "member", bad});
  CHECK(m.code == 0);
  CHECK(contains(m.out, "false, failed conditions ["));
  const auto x = call({"tube", "extract", bad});
  CHECK(x.code == 4);
  CHECK(contains(x.err, "NotInTube"));

  const std::complex<double> z2(1.05, -0.2), z3(0.95, 0.01);
  const auto z1 = 1.0 / (z2 * z3);
  const nlohmann::json fixed = {{"alpha", {0.3, -0.2}},
                                {"beta", {1.1, 0.4}},
                                {"gamma", {-0.7, 0.05}},
                                {"zeta", {{z1.real(), z1.imag()}, {z2.real(), z2.imag()}, {z3.real(), z3.imag()}}}};
  const auto coords_fixed = write("coords.json", fixed.dump());
  const auto e = call({"tube", "embed", coords_fixed});
  REQUIRE(e.code == 0);
  const auto s = write("s.json", e.out);
  const auto back = call({"tube", "extract", s});
  REQUIRE(back.code == 0);
  const auto got = nlohmann::json::parse(back.out);
  auto close = [](const nlohmann::json& a, const nlohmann::json& b) {
    return std::abs(a[0].get<double>() - b[0].get<double>()) <= 1e-9 &&
           std::abs(a[1].get<double>() - b[1].get<double>()) <= 1e-9;
  };
  CHECK(close(got["alpha"], fixed["alpha"]));
  CHECK(close(got["beta"], fixed["beta"]));
  CHECK(close(got["gamma"], fixed["gamma"]));
  for (int k = 0; k < 3; ++k) CHECK(close(got["zeta"][k], fixed["zeta"][k]));

  const auto wrong = write("coords_wrong.json", "{\"zeta\": [2, 1, 1]}");
  CHECK(call({"tube", "embed", wrong}).code == 4);
}

TEST_CASE("orbit and atlas commands") {
  const auto d = write("od.json", "{\"n\": 3, \"entries\": [[2,0,0],[0,1,0],[0,0,0.5]]}");
  const auto r = call({"orbit-check", "--gamma", d, "--radius", "10", "--kmax", "20"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "escaped radius 10 from k = "));
  const auto id = write("oid.json", "{\"n\": 3, \"entries\": [[1,0,0],[0,1,0],[0,0,1]]}");
  CHECK(call({"orbit-check", "--gamma", id}).code == 4);

  const auto l = call({"atlas", "list"});
  CHECK(std::count(l.out.begin(), l.out.end(), '\n') == 16);
  CHECK(call({"atlas", "lookup", "SL(3,R)/SO(3)"}).out == "table=2 class=rigid space=SL(3,R)/SO(3) target=-\n");
  CHECK(call({"atlas", "lookup", "--family", "SL({n},R)/SO({n})", "--param", "n=2"}).code == 4);
  CHECK(call({"atlas", "lookup", "--family", "SL({n},R)/SO({n})", "--param", "n=x"}).code == 2);
  CHECK(call({"atlas", "lookup", "Spin(7)/G2"}).code == 4);
}

TEST_CASE("selftest and determinism") {
  const auto a = call({"--seed", "7", "selftest", "rootsys"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "translate-disjointness"));
  const auto b = call({"--seed", "7", "selftest", "rootsys"});
  CHECK(a.out == b.out);
  const auto c = call({"selftest", "crown"});
  CHECK(contains(c.out, "1000 round-trips"));
  CHECK(c.code == 0);
}
