#include "crownlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "crownlab/atlas.hpp"
#include "crownlab/crown.hpp"
#include "crownlab/decomp.hpp"
#include "crownlab/error.hpp"
#include "crownlab/rootsys.hpp"
#include "crownlab/selftest.hpp"

namespace crownlab::cli {

namespace {

using decomp::Matrix;
using Complex = std::complex<double>;
using json = nlohmann::json;

// Malformed input or arguments; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw UsageError(fmt::format("{}: expected a number", where));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw UsageError(fmt::format("{}: non-finite number", where));
  return x;
}

// number | [re] | [re, im]
Complex complex_entry(const json& v, const std::string& where) {
  if (v.is_number()) return {number(v, where), 0.0};
  if (v.is_array() && (v.size() == 1 || v.size() == 2)) {
    return {number(v[0], where), v.size() == 2 ? number(v[1], where) : 0.0};
  }
  throw UsageError(fmt::format("{}: expected a number or [re, im]", where));
}

// MatrixDocument: {"n": N, "entries": N x N array}.
Eigen::MatrixXcd read_matrix_document(const std::string& path) {
  const json doc = parse_json(path);
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw UsageError(fmt::format("{}: expected an object with 'n' and 'entries'", path));
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1) {
    throw UsageError(fmt::format("{}: 'n' must be a positive integer", path));
  }
  const int n = doc["n"].get<int>();
  const json& rows = doc["entries"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw UsageError(fmt::format("{}: 'entries' must have {} rows", path, n));
  }
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
      throw UsageError(fmt::format("{}: row {} must have {} entries", path, i, n));
    }
    for (int j = 0; j < n; ++j) m(i, j) = complex_entry(rows[i][j], fmt::format("{}: entry ({}, {})", path, i, j));
  }
  return m;
}

Matrix read_real_matrix(const std::string& path) {
  const Eigen::MatrixXcd m = read_matrix_document(path);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw Error(ErrorKind::InvalidElement, fmt::format("{}: a real matrix is required", path));
  }
  return m.real();
}

crown::TubeCoordinates read_tube_coordinates(const std::string& path) {
  const json doc = parse_json(path);
  if (!doc.is_object()) throw UsageError(fmt::format("{}: expected an object", path));
  crown::TubeCoordinates tc;
  auto field = [&](const char* name, Complex fallback) {
    return doc.contains(name) ? complex_entry(doc[name], fmt::format("{}: {}", path, name)) : fallback;
  };
  tc.alpha = field("alpha", 0.0);
  tc.beta = field("beta", 0.0);
  tc.gamma = field("gamma", 0.0);
  if (doc.contains("zeta")) {
    const json& z = doc["zeta"];
    if (!z.is_array() || z.size() != 3) throw UsageError(fmt::format("{}: 'zeta' needs three entries", path));
    for (int k = 0; k < 3; ++k) tc.zeta[k] = complex_entry(z[k], fmt::format("{}: zeta[{}]", path, k));
  }
  return tc;
}

// ------------------------------------------------------------- printing

std::string num(double x) { return fmt::format("{:.12g}", x + 0.0); }
std::string exact_num(double x) { return fmt::format("{:.17g}", x + 0.0); }

void print_matrix(std::ostream& out, const std::string& name, const Matrix& m) {
  fmt::print(out, "{} =\n", name);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line = " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) line += fmt::format(" {:>20}", num(m(i, j)));
    fmt::print(out, "{}\n", line);
  }
}

std::string complex_json(Complex z) { return fmt::format("[{}, {}]", exact_num(z.real()), exact_num(z.imag())); }

void print_complex_document(std::ostream& out, const Eigen::MatrixXcd& m) {
  fmt::print(out, "{{\"n\": {}, \"entries\": [", m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    fmt::print(out, "{}[", i == 0 ? "" : ", ");
    for (Eigen::Index j = 0; j < m.cols(); ++j) fmt::print(out, "{}{}", j == 0 ? "" : ", ", complex_json(m(i, j)));
    fmt::print(out, "]");
  }
  fmt::print(out, "]}}\n");
}

void print_tube_coordinates(std::ostream& out, const crown::TubeCoordinates& tc) {
  fmt::print(out, "{{\"alpha\": {}, \"beta\": {}, \"gamma\": {}, \"zeta\": [{}, {}, {}]}}\n", complex_json(tc.alpha),
             complex_json(tc.beta), complex_json(tc.gamma), complex_json(tc.zeta[0]), complex_json(tc.zeta[1]),
             complex_json(tc.zeta[2]));
}

std::string rational_text(const rootsys::Rational& r) {
  return r.denominator() == 1 ? fmt::format("{}", r.numerator()) : fmt::format("{}/{}", r.numerator(), r.denominator());
}

std::string exact_vector_text(const rootsys::ExactVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rational_text(v[i]);
  return s + ")";
}

double to_double(const rootsys::Rational& r) { return boost::rational_cast<double>(r); }

// ------------------------------------------------------------- cell output

std::string cell_inequalities_text(const rootsys::CrownCell& cell) {
  std::string s = "# |alpha(X)| < bound for each positive root, X and bound in pi-units\n";
  for (const auto& q : cell.inequalities) {
    std::string coeffs;
    for (std::size_t i = 0; i < q.root.coefficients.size(); ++i) {
      coeffs += fmt::format("{}{}", i ? "," : "", q.root.coefficients[i]);
    }
    s += fmt::format("alpha=({}) bound={}\n", coeffs, rational_text(q.bound));
  }
  return s;
}

std::string cell_vertices_text(const rootsys::CrownCell& cell) {
  std::string s = "# vertices of the closed cell in pi-units\n";
  for (const auto& v : rootsys::cell_vertices(cell)) s += exact_vector_text(v) + "\n";
  return s;
}

// Boundary samples in chart coordinates (pi-units), 8 per edge.
std::vector<std::vector<double>> boundary_samples(const rootsys::CrownCell& cell) {
  const auto verts = rootsys::cell_vertices(cell);
  std::vector<std::vector<double>> chart;
  for (const auto& v : verts) {
    std::vector<double> c;
    for (const auto& y : rootsys::to_chart(v)) c.push_back(to_double(y));
    chart.push_back(c);
  }
  if (chart.front().size() == 1) return chart;
  std::vector<std::vector<double>> out;
  constexpr int kSteps = 8;
  for (std::size_t e = 0; e < chart.size(); ++e) {
    const auto& a = chart[e];
    const auto& b = chart[(e + 1) % chart.size()];
    for (int k = 0; k < kSteps; ++k) {
      const double t = static_cast<double>(k) / kSteps;
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  out.push_back(out.front());
  return out;
}

std::string cell_csv_text(const rootsys::CrownCell& cell) {
  const auto samples = boundary_samples(cell);
  std::string s = samples.front().size() == 1 ? "lambda2\n" : "lambda2,lambda3\n";
  for (const auto& p : samples) {
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + num(p[i]);
    s += "\n";
  }
  return s;
}

std::string cell_svg_text(const rootsys::CrownCell& cell) {
  constexpr double kSize = 400.0;
  const auto verts = rootsys::cell_vertices(cell);
  std::vector<std::vector<double>> chart;
  double extent = 0.0;
  for (const auto& v : verts) {
    std::vector<double> c;
    for (const auto& y : rootsys::to_chart(v)) {
      c.push_back(to_double(y));
      extent = std::max(extent, std::abs(c.back()));
    }
    chart.push_back(c);
  }
  // The cell spans [-extent, extent] in each chart direction; map that onto
  // 80% of the frame.
  const double scale = 0.8 * (kSize / 2) / extent;
  auto px = [&](double x) { return num(kSize / 2 + scale * x); };
  auto py = [&](double y) { return num(kSize / 2 - scale * y); };

  std::string s;
  s += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
                   num(kSize));
  s += fmt::format("  <rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", num(kSize));
  s += fmt::format("  <line x1=\"0\" y1=\"{1}\" x2=\"{0}\" y2=\"{1}\" stroke=\"gray\" stroke-width=\"1\"/>\n",
                   num(kSize), num(kSize / 2));
  s += fmt::format("  <line x1=\"{1}\" y1=\"0\" x2=\"{1}\" y2=\"{0}\" stroke=\"gray\" stroke-width=\"1\"/>\n",
                   num(kSize), num(kSize / 2));
  s += fmt::format("  <text x=\"{}\" y=\"{}\" font-size=\"12\">lambda2/pi</text>\n", num(kSize - 70), num(kSize / 2 - 6));
  if (chart.front().size() == 1) {
    s += fmt::format("  <path d=\"M {} {} L {} {}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n",
                     px(chart[0][0]), py(0), px(chart[1][0]), py(0));
  } else {
    s += fmt::format("  <text x=\"{}\" y=\"{}\" font-size=\"12\">lambda3/pi</text>\n", num(kSize / 2 + 6), num(14));
    std::string d;
    for (std::size_t i = 0; i < chart.size(); ++i) {
      d += fmt::format("{}{} {} {}", i ? " " : "", i ? "L" : "M", px(chart[i][0]), py(chart[i][1]));
    }
    d += " Z";
    s += fmt::format("  <path d=\"{}\" fill=\"#cfe3f7\" stroke=\"black\" stroke-width=\"2\"/>\n", d);
  }
  s += "</svg>\n";
  return s;
}

// ------------------------------------------------------------- options

struct Globals {
  decomp::Tolerances tol;
  std::uint64_t seed = 1;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crownlab: Iwasawa and Jordan decompositions, crown cells and tubes of SL(n,R)/SO(n), crown atlas"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol-structural", g.tol.structural, "Structural-zero tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-residual", g.tol.residual, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-spectral", g.tol.spectral, "Eigenvalue decision tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized suites");

  std::string matrix_path;
  std::vector<std::string> generator_paths;

  auto* iwasawa = app.add_subcommand("iwasawa", "g = n a k");
  iwasawa->add_option("matrix", matrix_path, "MatrixDocument file ('-' for stdin)")->required();
  auto* jordan = app.add_subcommand("jordan", "g = g_u g_h g_e");
  jordan->add_option("matrix", matrix_path, "MatrixDocument file")->required();
  auto* classify = app.add_subcommand("classify", "unipotent, hyperbolic, elliptic or mixed");
  classify->add_option("matrix", matrix_path, "MatrixDocument file")->required();
  auto* conj = app.add_subcommand("conj-na", "h g h^-1 in NA with h in SO(n)");
  conj->add_option("matrix", matrix_path, "MatrixDocument file")->required();
  auto* nilpotent = app.add_subcommand("nilpotent", "Lie closure of the logs and the nilpotency verdict");
  nilpotent->add_option("generators", generator_paths, "MatrixDocument files")->required();

  std::string group, emit, out_path;
  auto* cell = app.add_subcommand("cell", "crown cell data");
  cell->add_option("--group", group, "sl2 or sl3")->required();
  cell->add_option("--emit", emit, "ineq, vertices, csv or svg")->required();
  cell->add_option("--out", out_path, "output file (stdout when omitted)");

  auto* tube = app.add_subcommand("tube", "tube embedding for SL(3,R)/SO(3)");
  tube->require_subcommand(1);
  std::string tube_path;
  auto* embed = tube->add_subcommand("embed", "coordinates -> symmetric matrix");
  embed->add_option("coordinates", tube_path, "coordinate JSON file")->required();
  auto* extract = tube->add_subcommand("extract", "symmetric matrix -> coordinates");
  extract->add_option("matrix", tube_path, "MatrixDocument file")->required();
  auto* member = tube->add_subcommand("member", "evaluate the E conditions");
  member->add_option("matrix", tube_path, "MatrixDocument file")->required();

  std::string gamma_path, start_path;
  double radius = 10.0;
  int kmax = 20;
  auto* orbit = app.add_subcommand("orbit-check", "escape of a cyclic NA-orbit from a ball");
  orbit->add_option("--gamma", gamma_path, "MatrixDocument file of an NA element")->required();
  orbit->add_option("--start", start_path, "coordinate JSON file (identity point when omitted)");
  orbit->add_option("--radius", radius, "ball radius")->check(CLI::PositiveNumber);
  orbit->add_option("--kmax", kmax, "largest power");

  auto* atlas_cmd = app.add_subcommand("atlas", "crown atlas");
  atlas_cmd->require_subcommand(1);
  auto* atlas_list = atlas_cmd->add_subcommand("list", "all rows");
  std::string space, family;
  std::vector<std::string> params;
  auto* atlas_lookup = atlas_cmd->add_subcommand("lookup", "classify a space");
  atlas_lookup->add_option("space", space, "concrete descriptor, e.g. SL(3,R)/SO(3)");
  atlas_lookup->add_option("--family", family, "family pattern, e.g. SL({n},R)/SO({n})");
  atlas_lookup->add_option("--param", params, "name=value, repeatable");

  std::string scope = "all";
  auto* selftest_cmd = app.add_subcommand("selftest", "seeded invariant suites");
  selftest_cmd->add_option("scope", scope, "rootsys, decomp, crown, atlas or all");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*iwasawa) {
      const Matrix m = read_real_matrix(matrix_path);
      const auto f = decomp::iwasawa_nak(m, g.tol);
      print_matrix(out, "n", f.n);
      print_matrix(out, "a", f.a);
      print_matrix(out, "k", f.k);
      fmt::print(out, "residual = {:.3e}\n", (f.n * f.a * f.k - m).norm());
    } else if (*jordan) {
      const Matrix m = read_real_matrix(matrix_path);
      const auto f = decomp::jordan_multiplicative(m, g.tol);
      print_matrix(out, "unipotent", f.unipotent);
      print_matrix(out, "hyperbolic", f.hyperbolic);
      print_matrix(out, "elliptic", f.elliptic);
      fmt::print(out, "residual = {:.3e}\n", (f.unipotent * f.hyperbolic * f.elliptic - m).norm());
    } else if (*classify) {
      fmt::print(out, "{}\n", decomp::to_string(decomp::classify_element(read_real_matrix(matrix_path), g.tol)));
    } else if (*conj) {
      const Matrix m = read_real_matrix(matrix_path);
      const auto c = decomp::conjugate_into_na(m, g.tol);
      print_matrix(out, "h", c.h);
      print_matrix(out, "t", c.t);
      fmt::print(out, "residual = {:.3e}\n", (c.h * m * c.h.transpose() - c.t).norm());
    } else if (*nilpotent) {
      std::vector<Matrix> gens;
      for (const auto& p : generator_paths) gens.push_back(read_real_matrix(p));
      const auto r = decomp::stein_quotient_report(gens, g.tol);
      std::string series;
      for (std::size_t i = 0; i < r.central_series.size(); ++i) series += fmt::format("{}{}", i ? "," : "", r.central_series[i]);
      fmt::print(out, "closure dimension: {}\n", r.closure_dimension);
      fmt::print(out, "lower central series: {}\n", series);
      fmt::print(out, "{}\n", r.nilpotent ? "nilpotent; quotient Stein by criterion"
                                          : "not nilpotent; quotient not Stein by criterion");
    } else if (*cell) {
      int n = 0;
      if (group == "sl2") {
        n = 2;
      } else if (group == "sl3") {
        n = 3;
      } else {
        throw UsageError(fmt::format("unsupported group '{}' (sl2 or sl3)", group));
      }
      const auto c = rootsys::crown_cell(rootsys::restricted_roots_sl(n));
      std::string text;
      if (emit == "ineq") {
        text = cell_inequalities_text(c);
      } else if (emit == "vertices") {
        text = cell_vertices_text(c);
      } else if (emit == "csv") {
        text = cell_csv_text(c);
      } else if (emit == "svg") {
        text = cell_svg_text(c);
      } else {
        throw UsageError(fmt::format("unsupported output '{}' (ineq, vertices, csv or svg)", emit));
      }
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw UsageError(fmt::format("cannot write '{}'", out_path));
        file << text;
      }
    } else if (*tube) {
      if (*embed) {
        print_complex_document(out, crown::embed_tube(read_tube_coordinates(tube_path)).matrix());
      } else {
        const Eigen::MatrixXcd m = read_matrix_document(tube_path);
        if (m.rows() != 3) throw UsageError("tube commands take 3x3 matrices");
        const crown::SymPoint p{crown::ComplexMatrix3(m)};
        if (*extract) {
          print_tube_coordinates(out, crown::extract_tube(p));
        } else {
          const auto r = crown::in_tube_E(p);
          const auto& a = r.argument_values;
          if (r.member) {
            fmt::print(out, "true, args ({},{},{})\n", num(a[0]), num(a[1]), num(a[2]));
          } else {
            std::string failed;
            for (std::size_t i = 0; i < r.failed_conditions.size(); ++i) {
              failed += fmt::format("{}{}", i ? "," : "", r.failed_conditions[i]);
            }
            fmt::print(out, "false, failed conditions [{}], args ({},{},{})\n", failed, num(a[0]), num(a[1]), num(a[2]));
          }
        }
      }
    } else if (*orbit) {
      const Matrix gm = read_real_matrix(gamma_path);
      if (gm.rows() != 3) throw UsageError("orbit-check takes a 3x3 matrix");
      const auto start = start_path.empty() ? crown::TubeCoordinates{} : read_tube_coordinates(start_path);
      const auto r = crown::orbit_escape_check(Eigen::Matrix3d(gm), start, radius, kmax);
      fmt::print(out, "{:>4} {:>20} {:>20}\n", "k", "forward", "backward");
      for (const auto& s : r.steps) {
        fmt::print(out, "{:>4} {:>20} {:>20}\n", s.k, num(s.forward_distance), num(s.backward_distance));
      }
      if (r.escaped) {
        fmt::print(out, "escaped radius {} from k = {}\n", num(radius), r.escape_index);
      } else {
        fmt::print(out, "no escape from radius {} within k <= {}\n", num(radius), kmax);
      }
    } else if (*atlas_cmd) {
      if (*atlas_list) {
        for (const auto& e : atlas::list_all()) fmt::print(out, "{}\n", atlas::to_line(e));
      } else if (!family.empty()) {
        if (!space.empty()) throw UsageError("give either a space or --family, not both");
        atlas::Params p;
        for (const auto& kv : params) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw UsageError(fmt::format("parameter '{}' is not name=value", kv));
          try {
            std::size_t used = 0;
            const std::string value = kv.substr(eq + 1);
            p[kv.substr(0, eq)] = std::stoi(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
          } catch (const std::logic_error&) {
            throw UsageError(fmt::format("parameter '{}' has a non-integer value", kv));
          }
        }
        fmt::print(out, "{}\n", atlas::to_line(atlas::lookup(family, p)));
      } else if (!space.empty()) {
        for (const auto& m : atlas::lookup_space(space)) fmt::print(out, "{}\n", atlas::to_line(m));
      } else {
        throw UsageError("atlas lookup needs a space or --family");
      }
    } else if (*selftest_cmd) {
      const auto report = selftest::run(scope, g.seed, g.tol);
      for (const auto& c : report.checks) {
        fmt::print(out, "{} {}/{}: {}\n", c.passed ? "PASS" : "FAIL", c.module, c.name, c.detail);
      }
      fmt::print(out, "selftest {}: {} passed, {} failed\n", scope, report.passed(), report.failed());
      return report.failed() == 0 ? kExitOk : kExitSelftest;
    }
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    if (*selftest_cmd && e.kind() == ErrorKind::OutOfRange) {
      fmt::print(err, "error: {}\n", e.what());
      return kExitUsage;
    }
    if (e.kind() == ErrorKind::EllipticObstruction) {
      fmt::print(err, "error: elliptic obstruction: {}\n", e.what());
    } else {
      fmt::print(err, "error: {}\n", e.what());
    }
    return e.kind() == ErrorKind::InvalidElement ? kExitInvalidElement : kExitDomain;
  }
  return kExitOk;
}

}  // namespace crownlab::cli
