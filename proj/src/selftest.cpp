#include "crownlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "crownlab/atlas.hpp"
#include "crownlab/crown.hpp"
#include "crownlab/error.hpp"
#include "crownlab/rootsys.hpp"
#include "crownlab/sampling.hpp"

namespace crownlab::selftest {

namespace {

constexpr double kPi = std::numbers::pi;

using decomp::Matrix;
using rootsys::ExactVector;
using rootsys::Rational;

// A check returns its detail string on success and throws CheckFailed
// (or any other exception) on failure.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

class Suite {
 public:
  Suite(std::string module, Report& report) : module_(std::move(module)), report_(report) {}

  void check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{module_, name, false, {}};
    try {
      r.detail = body();
      r.passed = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    report_.checks.push_back(std::move(r));
  }

 private:
  std::string module_;
  Report& report_;
};

bool is_triangular_unit(const Matrix& n) {
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    if (n(i, i) != 1.0) return false;
    for (Eigen::Index j = 0; j < i; ++j) {
      if (n(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool is_positive_diagonal(const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (!(a(i, i) > 0.0)) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j && a(i, j) != 0.0) return false;
    }
  }
  return true;
}

Matrix diag3(double a, double b, double c) { return Eigen::Vector3d(a, b, c).asDiagonal(); }

Matrix unipotent_unit(int i, int j) {
  Matrix u = Matrix::Identity(3, 3);
  u(i, j) = 1.0;
  return u;
}

double commutator_norm(const Matrix& x, const Matrix& y) { return (x * y - y * x).norm(); }

double coordinate_error(const crown::TubeCoordinates& a, const crown::TubeCoordinates& b) {
  double e = std::max({std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta), std::abs(a.gamma - b.gamma)});
  for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(a.zeta[k] - b.zeta[k]));
  return e;
}

// ---------------------------------------------------------------- rootsys

void rootsys_suite(Report& report, std::uint64_t seed) {
  Suite s("rootsys", report);
  const auto rs3 = rootsys::restricted_roots_sl(3);
  const auto cell = rootsys::crown_cell(rs3);

  s.check("root-counts", [] {
    for (int n = 2; n <= 6; ++n) {
      const auto rs = rootsys::restricted_roots_sl(n);
      expect(static_cast<int>(rs.all_roots().size()) == n * (n - 1), fmt::format("sl({}) root count", n));
      expect(static_cast<int>(rs.positive_roots().size()) == n * (n - 1) / 2, fmt::format("sl({}) positives", n));
    }
    return std::string("n(n-1) roots for n = 2..6");
  });

  s.check("vertices", [&] {
    const auto v = rootsys::cell_vertices(cell);
    const std::set<ExactVector> got(v.begin(), v.end());
    const Rational t(1, 3), h(1, 6);
    const std::set<ExactVector> want{{t, -h, -h}, {-h, t, -h}, {-h, -h, t},
                                     {-t, h, h},  {h, -t, h},  {h, h, -t}};
    expect(v.size() == 6 && got == want, "vertex set differs from the six pi-rational vertices");
    return std::string("6 exact vertices");
  });

  s.check("translate-disjointness", [&] {
    const auto r = rootsys::translate_disjointness(cell, 2);
    expect(r.offsets.size() == 24, "expected 24 offsets");
    expect(r.all_disjoint, "some translate meets the cell");
    for (const auto& o : r.offsets) {
      expect(o.separating_row.has_value(), fmt::format("no slab witness for ({}, {})", o.l, o.m));
    }
    expect(r.box_half_width == Rational(1, 3), "bounding box half-width");
    expect(r.box_certified_from <= 2, "bounding box does not cover offsets beyond the range");
    return fmt::format("24 offsets disjoint; box half-width 1/3 certifies |offset| >= {}", r.box_certified_from);
  });

  s.check("weyl-invariance", [&] {
    sampling::Rng rng(seed ^ 0x5157ULL);
    std::uniform_int_distribution<int> num(-19, 19);
    for (int trial = 0; trial < 100; ++trial) {
      const Rational a(num(rng), 60), b(num(rng), 60);
      const ExactVector x{-a - b, a, b};
      const Rational u = rootsys::exhaustion_u_pi2(rs3, x);
      ExactVector p = x;
      std::sort(p.begin(), p.end());
      do {
        expect(rootsys::exhaustion_u_pi2(rs3, p) == u, "u changes under a permutation");
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return std::string("100 points x 6 permutations, exact");
  });

  s.check("hessian", [&] {
    const auto h = rootsys::exhaustion_hessian(rs3);
    expect(h.positive_definite, "restricted Hessian is not positive definite");
    expect(h.min_eigenvalue > 0, "minimum eigenvalue not positive");
    return fmt::format("positive definite, min eigenvalue {:.12g}", h.min_eigenvalue);
  });

  s.check("vertex-maximum", [&] {
    Rational best(-1000);
    double best_float = -1e300;
    for (const auto& v : rootsys::cell_vertices(cell)) {
      best = std::max(best, rootsys::exhaustion_u_pi2(rs3, v));
      Eigen::VectorXd x(3);
      for (int i = 0; i < 3; ++i) x(i) = boost::rational_cast<double>(v[i]) * kPi;
      best_float = std::max(best_float, rootsys::exhaustion_u(rs3, x));
    }
    expect(best == Rational(-1, 2), "exact vertex maximum is not -pi^2/2");
    expect(std::abs(best_float + kPi * kPi / 2) <= 1e-12, "floating vertex maximum off by more than 1e-12");
    return std::string("max over vertices = -pi^2/2");
  });
}

// ---------------------------------------------------------------- decomp

void decomp_suite(Report& report, std::uint64_t seed, const decomp::Tolerances& tol) {
  Suite s("decomp", report);

  s.check("iwasawa", [&] {
    sampling::Rng rng(seed ^ 0x1a5aULL);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Matrix g = sampling::random_sl(3, rng);
      const auto f = decomp::iwasawa_nak(g, tol);
      const double res = (f.n * f.a * f.k - g).norm() / g.norm();
      worst = std::max(worst, res);
      expect(res <= tol.residual, fmt::format("residual {:.3g} at sample {}", res, trial));
      expect(is_triangular_unit(f.n), "n is not unit upper triangular");
      expect(is_positive_diagonal(f.a), "a is not positive diagonal");
      expect((f.k.transpose() * f.k - Matrix::Identity(3, 3)).norm() <= tol.residual, "k not orthogonal");
      expect(f.k.determinant() > 0, "det k negative");
    }
    return fmt::format("1000 samples, max relative residual {:.3g}", worst);
  });

  s.check("jordan", [&] {
    sampling::Rng rng(seed ^ 0x10bdULL);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const auto triple = sampling::random_commuting_triple(trial % 2 == 0 ? 3 : 4, rng);
      const Matrix g = triple.product();
      const auto f = decomp::jordan_multiplicative(g, tol);
      const double err = std::max({commutator_norm(f.unipotent, f.hyperbolic), commutator_norm(f.unipotent, f.elliptic),
                                   commutator_norm(f.hyperbolic, f.elliptic),
                                   (f.unipotent * f.hyperbolic * f.elliptic - g).norm()});
      worst = std::max(worst, err);
      expect(err <= 1e-8, fmt::format("commutation or product error {:.3g} at sample {}", err, trial));
      expect(decomp::classify_matrix(f.unipotent, tol) == decomp::ElementClass::Unipotent, "g_u misclassified");
      expect(decomp::classify_matrix(f.hyperbolic, tol) == decomp::ElementClass::Hyperbolic, "g_h misclassified");
      expect(decomp::classify_matrix(f.elliptic, tol) == decomp::ElementClass::Elliptic, "g_e misclassified");
    }
    return fmt::format("500 triples, max error {:.3g}", worst);
  });

  s.check("classify", [&] {
    Matrix r = Matrix::Identity(3, 3);
    r.topLeftCorner(2, 2) << std::cos(0.5), -std::sin(0.5), std::sin(0.5), std::cos(0.5);
    expect(decomp::classify_element(unipotent_unit(0, 1), tol) == decomp::ElementClass::Unipotent, "unipotent");
    expect(decomp::classify_element(diag3(2, 1, 0.5), tol) == decomp::ElementClass::Hyperbolic, "hyperbolic");
    expect(decomp::classify_element(r, tol) == decomp::ElementClass::Elliptic, "elliptic");
    expect(decomp::classify_element(r * diag3(2, 2, 0.25), tol) == decomp::ElementClass::Mixed, "mixed");
    return std::string("four reference elements");
  });

  s.check("conj-na", [&] {
    sampling::Rng rng(seed ^ 0xc0aaULL);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix h = sampling::random_conjugator(3, rng);
      Matrix g = h * sampling::random_unipotent_upper(3, rng) * sampling::random_positive_diagonal(3, rng) * h.inverse();
      g /= std::cbrt(g.determinant());
      const auto c = decomp::conjugate_into_na(g, tol);
      const double res = (c.h * g * c.h.transpose() - c.t).norm() / g.norm();
      worst = std::max(worst, res);
      expect(res <= 1e-8, fmt::format("conjugation residual {:.3g}", res));
    }
    Matrix r = Matrix::Identity(3, 3);
    r.topLeftCorner(2, 2) << 0, -1, 1, 0;
    bool obstructed = false;
    try {
      decomp::conjugate_into_na(r, tol);
    } catch (const Error& e) {
      obstructed = e.kind() == ErrorKind::EllipticObstruction;
    }
    expect(obstructed, "rotation not reported as an elliptic obstruction");
    return fmt::format("100 samples, max residual {:.3g}; rotation obstructed", worst);
  });

  s.check("stein-criterion", [&] {
    const Matrix e12 = unipotent_unit(0, 1), e23 = unipotent_unit(1, 2), d = diag3(2, 1, 0.5);
    expect(decomp::stein_quotient_predicate({e12}, tol), "{exp E12}");
    expect(decomp::stein_quotient_predicate({d}, tol), "{d(2,1,1/2)}");
    expect(decomp::stein_quotient_predicate({e12, e23}, tol), "Heisenberg pair");
    expect(!decomp::stein_quotient_predicate({e12, d}, tol), "{exp E12, d(2,1,1/2)}");
    const auto heis = decomp::stein_quotient_report({e12, e23}, tol);
    expect(heis.central_series == std::vector<std::size_t>{3, 1, 0}, "Heisenberg central series");
    return std::string("4 generator sets; Heisenberg series 3,1,0");
  });

  s.check("log-na", [&] {
    sampling::Rng rng(seed ^ 0x109aULL);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix t = sampling::random_unipotent_upper(3, rng) * sampling::random_positive_diagonal(3, rng);
      const Matrix l = decomp::log_na(t, tol);
      // exp by scaling and squaring of a short Taylor series.
      Matrix x = l / 1024.0, e = Matrix::Identity(3, 3), term = Matrix::Identity(3, 3);
      for (int k = 1; k <= 12; ++k) {
        term = term * x / k;
        e += term;
      }
      for (int k = 0; k < 10; ++k) e = e * e;
      const double res = (e - t).norm() / t.norm();
      worst = std::max(worst, res);
      expect(res <= 1e-10, fmt::format("exp(log t) residual {:.3g}", res));
      expect(std::abs(l.trace()) <= 1e-12, "log is not traceless");
    }
    return fmt::format("100 samples, max residual {:.3g}", worst);
  });
}

// ---------------------------------------------------------------- crown

void crown_suite(Report& report, std::uint64_t seed) {
  Suite s("crown", report);

  s.check("round-trip", [&] {
    sampling::Rng rng(seed ^ 0x7ab3ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto tc = sampling::random_tube_coordinates(rng);
      const auto p = crown::embed_tube(tc);
      expect(crown::in_tube_E(p).member, fmt::format("embedded sample {} fails E", trial));
      expect(std::abs(p.matrix().determinant() - 1.0) <= 1e-9, "det drift");
      const double err = coordinate_error(crown::extract_tube(p), tc);
      worst = std::max(worst, err);
      expect(err <= 1e-9, fmt::format("round-trip error {:.3g} at sample {}", err, trial));
    }
    return fmt::format("1000 round-trips, max error {:.3g}", worst);
  });

  s.check("image-converse", [&] {
    sampling::Rng rng(seed ^ 0xe3e3ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto p = crown::embed_tube(sampling::random_tube_coordinates(rng));
      const auto q = crown::embed_tube(crown::extract_tube(p));
      const double err = (q.matrix() - p.matrix()).norm() / std::max(1.0, p.matrix().norm());
      worst = std::max(worst, err);
      expect(err <= 1e-9, fmt::format("extract-embed error {:.3g}", err));
    }
    return fmt::format("1000 E-members, max error {:.3g}", worst);
  });

  s.check("branch-uniqueness", [&] {
    sampling::Rng rng(seed ^ 0xb7a0ULL);
    for (int trial = 0; trial < 200; ++trial) {
      const auto tc = sampling::random_tube_coordinates(rng);
      for (int flip = 0; flip < 3; ++flip) {
        auto other = tc;
        for (int k = 0; k < 3; ++k) {
          if (k != flip) other.zeta[k] = -other.zeta[k];
        }
        expect(!crown::in_tube_cell(other), "alternative branch lies in the cell");
      }
    }
    return std::string("200 samples, 3 alternative branches each");
  });

  s.check("na-equivariance", [&] {
    sampling::Rng rng(seed ^ 0xe901ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto tc = sampling::random_tube_coordinates(rng);
      const Eigen::Matrix3d g =
          sampling::random_unipotent_upper(3, rng) * sampling::random_positive_diagonal(3, rng, 0.5);
      const Eigen::Matrix3cd gc = g.cast<crown::Complex>();
      const Eigen::Matrix3cd want = gc * crown::embed_tube(tc).matrix() * gc.transpose();
      const double err = (crown::embed_tube(crown::act_na(g, tc)).matrix() - want).norm() / std::max(1.0, want.norm());
      worst = std::max(worst, err);
      expect(err <= 1e-9, fmt::format("equivariance error {:.3g}", err));
    }
    return fmt::format("200 samples, max error {:.3g}", worst);
  });

  s.check("phi-rank", [&] {
    sampling::Rng rng(seed ^ 0x9f16ULL);
    for (int trial = 0; trial < 100; ++trial) {
      const int rank = crown::phi_jacobian_rank(sampling::random_complex_diagonal(rng, trial < 50));
      expect(rank == 16, fmt::format("rank {} at sample {}", rank, trial));
    }
    return std::string("rank 16 at 100 points, 50 in the tube");
  });

  s.check("theta-identity", [&] {
    sampling::Rng rng(seed ^ 0x7e7aULL);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix n = sampling::random_unipotent_upper(3, rng);
      const Matrix a = sampling::random_positive_diagonal(3, rng);
      const Matrix g = n * a * sampling::random_rotation(3, rng);
      const Matrix lhs = g * decomp::cartan_theta(g).inverse();
      const Matrix rhs = n * a * a * decomp::cartan_theta(n).inverse();
      const double err = (lhs - rhs).norm() / rhs.norm();
      worst = std::max(worst, err);
      expect(err <= 1e-10, fmt::format("theta identity error {:.3g}", err));
    }
    return fmt::format("200 triples, max error {:.3g}", worst);
  });

  s.check("slice-exhaustion", [&] {
    const double u0 = crown::slice_exhaustion(crown::SymPoint());
    expect(std::abs(u0 + 1.5 * kPi * kPi) <= 1e-12, "u(0) differs from -3pi^2/2");
    return fmt::format("u(0) = {:.12g}", u0);
  });

  s.check("orbit-escape", [&] {
    const auto r = crown::orbit_escape_check(diag3(2, 1, 0.5), crown::TubeCoordinates{}, 10.0, 20);
    expect(r.escaped, "diagonal orbit did not escape");
    return fmt::format("d(2,1,1/2) escapes radius 10 at k = {}", r.escape_index);
  });
}

// ---------------------------------------------------------------- atlas

void atlas_suite(Report& report) {
  Suite s("atlas", report);

  s.check("row-counts", [] {
    int self = 0, target = 0, rigid = 0, marker = 0;
    for (const auto& e : atlas::list_all()) {
      self += e.crown_class == atlas::CrownClass::HermitianSelf;
      target += e.crown_class == atlas::CrownClass::HermitianTarget;
      rigid += e.crown_class == atlas::CrownClass::Rigid && !e.marker;
      marker += e.marker;
      expect((e.table == 2) == (e.crown_class == atlas::CrownClass::Rigid), "table and class disagree");
    }
    expect(self == 6 && target == 3 && rigid == 6 && marker == 1, "row counts");
    return std::string("6 self, 3 target, 6 rigid, 1 marker");
  });

  s.check("examples", [] {
    expect(atlas::lookup("SL({n},R)/SO({n})", {{"n", 3}}).entry->crown_class == atlas::CrownClass::Rigid,
           "SL(3,R)/SO(3)");
    const auto m = atlas::lookup("SO0({p},1)/SO({p})", {{"p", 4}});
    expect(m.target && *m.target == "SO0(4,2)/(SO(4)xSO(2))", "SO0(4,1)/SO(4) target");
    return std::string("SL(3,R)/SO(3) rigid; SO0(4,1)/SO(4) -> SO0(4,2)/(SO(4)xSO(2))");
  });

  s.check("partition-and-round-trip", [] {
    std::size_t count = 0;
    for (const auto& e : atlas::list_all()) {
      if (e.marker) continue;
      const auto names = atlas::parameter_names(e.family);
      std::vector<int> values(names.size(), 0);
      for (;;) {
        atlas::Params p;
        for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i];
        if (std::all_of(e.constraints.begin(), e.constraints.end(), [&](const auto& c) { return c.holds(p); })) {
          const auto matches = atlas::lookup_space(atlas::instantiate(e.family, p));
          expect(matches.size() == 1 && matches.front().entry == &e,
                 fmt::format("{} does not resolve to a single row", atlas::instantiate(e.family, p)));
          expect(atlas::lookup(e.family, p).entry == &e, "lookup round-trip");
          ++count;
        }
        std::size_t i = 0;
        while (i < values.size() && ++values[i] > 8) values[i++] = 0;
        if (i == values.size()) break;
      }
    }
    return fmt::format("{} concrete spaces, each in exactly one row", count);
  });
}

}  // namespace

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
}

std::size_t Report::failed() const { return checks.size() - passed(); }

const std::vector<std::string>& scopes() {
  static const std::vector<std::string> names{"rootsys", "decomp", "crown", "atlas"};
  return names;
}

Report run(std::string_view scope, std::uint64_t seed, const decomp::Tolerances& tol) {
  const bool all = scope == "all";
  if (!all && std::find(scopes().begin(), scopes().end(), scope) == scopes().end()) {
    throw Error(ErrorKind::OutOfRange, fmt::format("unknown selftest scope '{}'", scope));
  }
  Report report;
  if (all || scope == "rootsys") rootsys_suite(report, seed);
  if (all || scope == "decomp") decomp_suite(report, seed, tol);
  if (all || scope == "crown") crown_suite(report, seed);
  if (all || scope == "atlas") atlas_suite(report);
  return report;
}

}  // namespace crownlab::selftest
