// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "crownlab/atlas.hpp"
#include "crownlab/cli.hpp"
#include "crownlab/crown.hpp"
#include "crownlab/decomp.hpp"
#include "crownlab/rootsys.hpp"
#include "crownlab/sampling.hpp"

using namespace crownlab;
using decomp::Matrix;
using rootsys::ExactVector;
using rootsys::Rational;

namespace {

constexpr double kPi = std::numbers::pi;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    detail = body();
    ok = true;
  } catch (const std::exception& e) {
    detail = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && secs > limit_seconds) {
    ok = false;
    detail += fmt::format("; runtime {:.2f} s exceeds {:.0f} s", secs, limit_seconds);
  }
  failures += !ok;
  std::cout << fmt::format("{} criterion {} ({}): {} [{:.3f} s]\n", ok ? "PASS" : "FAIL", id, title, detail, secs);
}

Matrix diag3(double a, double b, double c) { return Eigen::Vector3d(a, b, c).asDiagonal(); }

Matrix shear(int i, int j) {
  Matrix u = Matrix::Identity(3, 3);
  u(i, j) = 1.0;
  return u;
}

double commutator(const Matrix& x, const Matrix& y) { return (x * y - y * x).norm(); }

double coordinate_error(const crown::TubeCoordinates& a, const crown::TubeCoordinates& b) {
  double e = std::max({std::abs(a.alpha - b.alpha), std::abs(a.beta - b.beta), std::abs(a.gamma - b.gamma)});
  for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(a.zeta[k] - b.zeta[k]));
  return e;
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

}  // namespace

int main() {
  criterion(1, "Iwasawa", 5.0, [] {
    sampling::Rng rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Matrix g = sampling::random_sl(3, rng);
      const auto f = decomp::iwasawa_nak(g);
      const double res = (f.n * f.a * f.k - g).norm();
      worst = std::max(worst, res / g.norm());
      require(res <= 1e-10 * g.norm(), fmt::format("residual {:.3g} at sample {}", res, trial));
      for (int i = 0; i < 3; ++i) {
        require(f.n(i, i) == 1.0 && f.a(i, i) > 0.0, "diagonal pattern");
        for (int j = 0; j < 3; ++j) {
          if (j < i) require(f.n(i, j) == 0.0, "n below the diagonal");
          if (j != i) require(f.a(i, j) == 0.0, "a off the diagonal");
        }
      }
      require((f.k.transpose() * f.k - Matrix::Identity(3, 3)).norm() <= 1e-10, "k not orthogonal");
    }
    return fmt::format("1000 samples, max relative residual {:.2e}", worst);
  });

  criterion(2, "Jordan", 10.0, [] {
    sampling::Rng rng(202);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const auto t = sampling::random_commuting_triple(trial % 2 == 0 ? 3 : 4, rng);
      const Matrix g = t.product();
      const auto f = decomp::jordan_multiplicative(g);
      const double err = std::max({commutator(f.unipotent, f.hyperbolic), commutator(f.unipotent, f.elliptic),
                                   commutator(f.hyperbolic, f.elliptic)});
      const double prod = (f.unipotent * f.hyperbolic * f.elliptic - g).norm();
      worst = std::max({worst, err, prod});
      require(err <= 1e-8, fmt::format("commutator {:.3g} at sample {}", err, trial));
      require(prod <= 1e-8, fmt::format("product error {:.3g} at sample {}", prod, trial));
      require(decomp::classify_matrix(f.unipotent) == decomp::ElementClass::Unipotent, "g_u class");
      require(decomp::classify_matrix(f.hyperbolic) == decomp::ElementClass::Hyperbolic, "g_h class");
      require(decomp::classify_matrix(f.elliptic) == decomp::ElementClass::Elliptic, "g_e class");
      require(decomp::classify_matrix(g) == decomp::ElementClass::Mixed, "product class");
    }
    return fmt::format("500 triples, max error {:.2e}", worst);
  });

  criterion(3, "tube round-trip", 5.0, [] {
    sampling::Rng rng(303);
    double forward = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto tc = sampling::random_tube_coordinates(rng, 0.95);
      const auto s = crown::embed_tube(tc);
      require(crown::in_tube_E(s).member, fmt::format("embedded sample {} fails E", trial));
      const double err = coordinate_error(crown::extract_tube(s), tc);
      forward = std::max(forward, err);
      require(err <= 1e-9, fmt::format("embed-extract error {:.3g} at sample {}", err, trial));
    }
    // E-members built by the recipe: symmetric matrices n a^2 n^T from
    // coordinates with arguments in omega.
    double backward = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto s = crown::embed_tube(sampling::random_tube_coordinates(rng, 0.95));
      require(crown::in_tube_E(s).member, "recipe point fails E");
      const auto back = crown::embed_tube(crown::extract_tube(s)).matrix();
      const double err = (back - s.matrix()).norm() / std::max(1.0, s.matrix().norm());
      backward = std::max(backward, err);
      require(err <= 1e-9, fmt::format("extract-embed error {:.3g} at sample {}", err, trial));
    }
    return fmt::format("1000 + 1000 samples, max errors {:.2e} / {:.2e}", forward, backward);
  });

  criterion(4, "cell geometry", 1.0, [] {
    const auto cell = rootsys::crown_cell(rootsys::restricted_roots_sl(3));
    const auto v = rootsys::cell_vertices(cell);
    const Rational t(1, 3), h(1, 6);
    const std::set<ExactVector> want{{t, -h, -h}, {-h, t, -h}, {-h, -h, t}, {-t, h, h}, {h, -t, h}, {h, h, -t}};
    require(v.size() == 6 && std::set<ExactVector>(v.begin(), v.end()) == want, "vertex set");
    const auto r = rootsys::translate_disjointness(cell, 2);
    require(r.offsets.size() == 24 && r.all_disjoint, "translate disjointness on [-2,2]^2");
    require(r.box_certified_from <= 2, "bounding box does not certify the remaining offsets");
    return fmt::format("6 exact vertices; 24 translates disjoint; box half-width {} certifies offsets >= {}",
                       fmt::format("{}/{}", r.box_half_width.numerator(), r.box_half_width.denominator()),
                       r.box_certified_from);
  });

  criterion(5, "exhaustion function", 5.0, [] {
    const auto rs = rootsys::restricted_roots_sl(3);
    const auto hess = rootsys::exhaustion_hessian(rs);
    require(hess.positive_definite && hess.min_eigenvalue > 0, "restricted Hessian not positive definite");
    sampling::Rng rng(505);
    std::uniform_int_distribution<int> num(-29, 29);
    for (int trial = 0; trial < 100; ++trial) {
      const Rational a(num(rng), 90), b(num(rng), 90);
      const ExactVector x{-a - b, a, b};
      const Rational u = rootsys::exhaustion_u_pi2(rs, x);
      std::array<int, 3> w{0, 1, 2};
      do {
        const ExactVector wx{x[w[0]], x[w[1]], x[w[2]]};
        require(rootsys::exhaustion_u_pi2(rs, wx) == u, "u not Weyl invariant");
      } while (std::next_permutation(w.begin(), w.end()));
    }
    double best = -1e300;
    for (const auto& v : rootsys::cell_vertices(rootsys::crown_cell(rs))) {
      Eigen::VectorXd x(3);
      for (int i = 0; i < 3; ++i) x(i) = boost::rational_cast<double>(v[i]) * kPi;
      best = std::max(best, rootsys::exhaustion_u(rs, x));
    }
    require(std::abs(best + kPi * kPi / 2) <= 1e-12, fmt::format("vertex maximum {:.15g}", best));
    return fmt::format("restricted Hessian positive definite by exact minors, min eigenvalue {:.12g}; 100 points invariant; vertex max {:.12g}",
                       hess.min_eigenvalue, best);
  });

  criterion(6, "multiplication map", 5.0, [] {
    sampling::Rng rng(606);
    for (int trial = 0; trial < 100; ++trial) {
      const int rank = crown::phi_jacobian_rank(sampling::random_complex_diagonal(rng, trial < 50));
      require(rank == 16, fmt::format("rank {} at point {}", rank, trial));
    }
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix n = sampling::random_unipotent_upper(3, rng);
      const Matrix a = sampling::random_positive_diagonal(3, rng);
      const Matrix g = n * a * sampling::random_rotation(3, rng);
      const Matrix lhs = g * decomp::cartan_theta(g).inverse();
      const Matrix rhs = n * a * a * decomp::cartan_theta(n).inverse();
      const double err = (lhs - rhs).norm();
      worst = std::max(worst, err);
      require(err <= 1e-10, fmt::format("theta identity error {:.3g}", err));
    }
    return fmt::format("rank 16 at 100 points (50 in the tube); theta identity max error {:.2e}", worst);
  });

  criterion(7, "Stein-quotient criterion", 5.0, [] {
    const Matrix e12 = shear(0, 1), e23 = shear(1, 2), d = diag3(2, 1, 0.5);
    require(decomp::stein_quotient_predicate({e12}), "{exp E12} should be nilpotent");
    require(decomp::stein_quotient_predicate({d}), "{d(2,1,1/2)} should be nilpotent");
    require(decomp::stein_quotient_predicate({e12, e23}), "Heisenberg pair should be nilpotent");
    require(!decomp::stein_quotient_predicate({e12, d}), "{exp E12, d(2,1,1/2)} should not be nilpotent");
    require(decomp::stein_quotient_report({e12, e23}).central_series == std::vector<std::size_t>{3, 1, 0},
            "Heisenberg series");
    require(decomp::stein_quotient_report({e12, d}).central_series == std::vector<std::size_t>{2, 1, 1},
            "Borel pair series");
    return std::string("true, true, true, false; series 3,1,0 and 2,1,1");
  });

  criterion(8, "atlas", 5.0, [] {
    std::size_t rows = 0;
    for (const auto& e : atlas::list_all()) {
      atlas::Params p;
      for (const auto& name : atlas::parameter_names(e.family)) p[name] = 0;
      // Smallest admissible parameters on a small grid.
      bool found = p.empty();
      const auto names = atlas::parameter_names(e.family);
      std::vector<int> values(names.size(), 0);
      while (!found) {
        for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i];
        found = std::all_of(e.constraints.begin(), e.constraints.end(), [&](const auto& c) { return c.holds(p); });
        if (found) break;
        std::size_t i = 0;
        while (i < values.size() && ++values[i] > 10) values[i++] = 0;
        require(i < values.size(), "no admissible parameters for " + e.family);
      }
      require(atlas::lookup(e.family, p).entry == &e, "lookup of " + e.family);
      ++rows;
    }
    require(rows == 16, "row count");
    require(atlas::lookup_space("SL(3,R)/SO(3)").front().entry->crown_class == atlas::CrownClass::Rigid,
            "SL(3,R)/SO(3)");
    const auto m = atlas::lookup_space("SO0(4,1)/SO(4)").front();
    require(m.target && *m.target == "SO0(4,2)/(SO(4)xSO(2))", "SO0(4,1)/SO(4) target");
    std::size_t spaces = 0;
    for (const auto& e : atlas::list_all()) {
      if (e.marker) continue;
      const auto names = atlas::parameter_names(e.family);
      std::vector<int> values(names.size(), 0);
      for (;;) {
        atlas::Params p;
        for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = values[i];
        if (std::all_of(e.constraints.begin(), e.constraints.end(), [&](const auto& c) { return c.holds(p); })) {
          std::set<int> tables;
          for (const auto& x : atlas::lookup_space(atlas::instantiate(e.family, p))) tables.insert(x.entry->table);
          require(tables.size() == 1, "partition violated");
          ++spaces;
        }
        std::size_t i = 0;
        while (i < values.size() && ++values[i] > 12) values[i++] = 0;
        if (i == values.size()) break;
      }
    }
    return fmt::format("16 rows reproduced; examples match; partition holds on {} concrete spaces", spaces);
  });

  criterion(9, "CLI determinism", 10.0, [] {
    const auto first = run_cli({"--seed", "42", "selftest", "all"});
    require(first.first == 0, "selftest all exited " + std::to_string(first.first));
    const auto second = run_cli({"--seed", "42", "selftest", "all"});
    require(second == first, "selftest output differs between runs");
    const auto svg1 = run_cli({"cell", "--group", "sl3", "--emit", "svg"});
    const auto svg2 = run_cli({"cell", "--group", "sl3", "--emit", "svg"});
    require(svg1.first == 0 && svg1 == svg2, "svg output differs between runs");
    return fmt::format("selftest all exit 0, {} output bytes identical; svg {} bytes identical", first.second.size(),
                       svg1.second.size());
  });

  std::cout << fmt::format("acceptance: {} of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
