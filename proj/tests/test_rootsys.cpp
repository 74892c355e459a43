#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "crownlab/error.hpp"
#include "crownlab/rootsys.hpp"

using namespace crownlab;
using namespace crownlab::rootsys;

namespace {

constexpr double kPi = std::numbers::pi;

ExactVector chart_point(Rational l2, Rational l3) { return from_chart({l2, l3}); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected crownlab::Error");
  return ErrorKind::InternalError;
}

// Oracle: vertices of the sl(3) hexagon in the (lambda_2, lambda_3) chart by
// brute force over a fine rational grid of candidate points; a point is a
// vertex when it lies in the closed cell and two independent rows are tight.
std::set<ExactVector> hexagon_by_grid() {
  const std::vector<std::pair<int, int>> rows{{2, 1}, {1, 2}, {1, -1}};
  std::set<ExactVector> out;
  const int den = 12;
  for (int a = -den; a <= den; ++a) {
    for (int b = -den; b <= den; ++b) {
      const Rational y2(a, den), y3(b, den);
      int tight = 0;
      bool inside = true;
      for (auto [p, q] : rows) {
        const Rational v = p * y2 + q * y3;
        const Rational av = v < 0 ? -v : v;
        if (av > Rational(1, 2)) inside = false;
        if (av == Rational(1, 2)) ++tight;
      }
      if (inside && tight >= 2) out.insert({y2, y3});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("restricted roots of sl(n)") {
  const auto rs3 = restricted_roots_sl(3);
  CHECK(rs3.all_roots().size() == 6);
  CHECK(rs3.positive_roots().size() == 3);
  CHECK(rs3.rank() == 2);

  const auto rs2 = restricted_roots_sl(2);
  REQUIRE(rs2.all_roots().size() == 2);
  CHECK(rs2.all_roots()[0].coefficients == std::vector<int>{1, -1});
  CHECK(rs2.all_roots()[1].coefficients == std::vector<int>{-1, 1});

  const auto rs4 = restricted_roots_sl(4);
  CHECK(rs4.all_roots().size() == 12);
  CHECK(rs4.positive_roots().size() == 6);
  CHECK(rs4.weyl_generators().size() == 3);

  CHECK(kind_of([] { restricted_roots_sl(1); }) == ErrorKind::InvalidRank);
}

TEST_CASE("root system invariants") {
  for (int n = 2; n <= 6; ++n) {
    const auto rs = restricted_roots_sl(n);
    std::set<Root> all(rs.all_roots().begin(), rs.all_roots().end());
    CHECK(all.size() == rs.all_roots().size());
    for (const auto& r : rs.all_roots()) {
      CHECK(r.is_type_a());
      CHECK(all.contains(-r));
    }
    for (const auto& r : rs.positive_roots()) {
      const auto [k, h] = r.type_a_indices();
      CHECK(k < h);
    }
  }
}

TEST_CASE("explicit root lists") {
  // A1 x A1 inside R^4 given by hand, with its two commuting reflections.
  RootSystem rs(4, {Root{{1, -1, 0, 0}}, Root{{0, 0, 1, -1}}}, {{1, 0, 2, 3}, {0, 1, 3, 2}});
  CHECK(rs.all_roots().size() == 4);
  const ExactVector x{Rational(1, 5), Rational(-1, 5), Rational(1, 7), Rational(-1, 7)};
  CHECK(weyl_orbit(rs, x).size() == 4);

  CHECK(kind_of([] { RootSystem(3, {Root{{1, -1, 0}}, Root{{-1, 1, 0}}}, {}); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([] { RootSystem(3, {Root{{1, -1}}}, {}); }) == ErrorKind::DimensionError);
  CHECK(kind_of([] { RootSystem(3, {Root{{1, -1, 0}}}, {{0, 0, 1}}); }) == ErrorKind::DimensionError);
}

TEST_CASE("crown cell inequalities") {
  const auto cell3 = crown_cell(restricted_roots_sl(3));
  REQUIRE(cell3.inequalities.size() == 3);
  for (const auto& q : cell3.inequalities) CHECK(q.bound == Rational(1, 2));

  const auto cell2 = crown_cell(restricted_roots_sl(2));
  REQUIRE(cell2.inequalities.size() == 1);
  CHECK(cell2.inequalities[0].root.coefficients == std::vector<int>{1, -1});

  // Chart rows are +-(2,1), +-(1,2), +-(1,-1).
  std::set<std::vector<Rational>> normalized;
  for (const auto& row : chart_inequalities(cell3)) {
    auto c = row.coefficients;
    if (c[0] < 0 || (c[0] == 0 && c[1] < 0)) {
      for (auto& v : c) v = -v;
    }
    normalized.insert(c);
    CHECK(row.bound == Rational(1, 2));
  }
  const std::set<std::vector<Rational>> expected{
      {Rational(2), Rational(1)}, {Rational(1), Rational(2)}, {Rational(1), Rational(-1)}};
  CHECK(normalized == expected);
}

TEST_CASE("cell membership") {
  const auto cell = crown_cell(restricted_roots_sl(3));
  CHECK(cell_contains(cell, ExactVector{0, 0, 0}));
  CHECK_FALSE(cell_contains(cell, ExactVector{Rational(1, 2), 0, Rational(-1, 2)}));
  // Vertex: strict inequality fails on the boundary.
  CHECK_FALSE(cell_contains(cell, chart_point(Rational(1, 6), Rational(1, 6))));
  CHECK(cell_contains(cell, chart_point(Rational(1, 7), Rational(1, 7))));

  CHECK(cell_contains(cell, Eigen::Vector3d(kPi / 5, -kPi / 5, 0)));
  CHECK_FALSE(cell_contains(cell, Eigen::Vector3d(kPi / 2, 0, -kPi / 2)));

  CHECK(kind_of([&] { cell_contains(cell, ExactVector{0, 0}); }) == ErrorKind::DimensionError);
  CHECK(kind_of([&] { cell_contains(cell, ExactVector{Rational(1, 9), 0, 0}); }) == ErrorKind::InvalidElement);
  CHECK(kind_of([&] { cell_contains(cell, Eigen::Vector3d(0.1, 0, 0)); }) == ErrorKind::InvalidElement);
}

TEST_CASE("cell vertices") {
  const auto v2 = cell_vertices(crown_cell(restricted_roots_sl(2)));
  REQUIRE(v2.size() == 2);
  CHECK(v2[0] == ExactVector{Rational(1, 4), Rational(-1, 4)});  // chart coordinate ascends
  CHECK(v2[1] == ExactVector{Rational(-1, 4), Rational(1, 4)});

  const auto cell = crown_cell(restricted_roots_sl(3));
  const auto v3 = cell_vertices(cell);
  REQUIRE(v3.size() == 6);
  std::set<ExactVector> chart;
  for (const auto& v : v3) chart.insert(to_chart(v));
  const std::set<ExactVector> expected{
      {Rational(1, 6), Rational(1, 6)},   {Rational(1, 3), Rational(-1, 6)}, {Rational(1, 6), Rational(-1, 3)},
      {Rational(-1, 6), Rational(-1, 6)}, {Rational(-1, 3), Rational(1, 6)}, {Rational(-1, 6), Rational(1, 3)}};
  CHECK(chart == expected);
  CHECK(chart == hexagon_by_grid());

  // Counterclockwise: consecutive cross products positive.
  for (std::size_t i = 0; i < v3.size(); ++i) {
    const auto p = to_chart(v3[i]);
    const auto q = to_chart(v3[(i + 1) % v3.size()]);
    CHECK(p[0] * q[1] - p[1] * q[0] > 0);
  }

  // sl(4): the cell is a rhombic dodecahedron-like solid; every vertex is
  // tight on three rows and the set is closed under permutations.
  const auto rs4 = restricted_roots_sl(4);
  const auto v4 = cell_vertices(crown_cell(rs4));
  std::set<ExactVector> s4(v4.begin(), v4.end());
  CHECK(s4.size() == v4.size());
  for (const auto& v : v4) {
    for (const auto& w : weyl_orbit(rs4, v)) CHECK(s4.contains(w));
  }
}

TEST_CASE("cell is Weyl invariant, bounded and contains 0") {
  for (int n = 2; n <= 4; ++n) {
    const auto rs = restricted_roots_sl(n);
    const auto cell = crown_cell(rs);
    CHECK(cell_contains(cell, ExactVector(n, Rational(0))));
    const auto verts = cell_vertices(cell);
    std::set<ExactVector> vs(verts.begin(), verts.end());
    for (const auto& v : verts) {
      for (const auto& c : v) CHECK((c < 0 ? -c : c) < Rational(1, 2));
      for (const auto& w : weyl_orbit(rs, v)) CHECK(vs.contains(w));
    }
  }
}

TEST_CASE("Weyl orbits") {
  const auto rs = restricted_roots_sl(3);
  CHECK(weyl_orbit(rs, ExactVector{0, 0, 0}).size() == 1);
  CHECK(weyl_orbit(rs, ExactVector{Rational(1, 6), 0, Rational(-1, 6)}).size() == 6);
  CHECK(weyl_orbit(rs, ExactVector{Rational(1, 6), Rational(1, 6), Rational(-1, 3)}).size() == 3);
  CHECK(weyl_orbit(restricted_roots_sl(4), ExactVector{Rational(3), Rational(1), Rational(-1), Rational(-3)})
            .size() == 24);
  CHECK(weyl_orbit(rs, Eigen::Vector3d(0.3, -0.1, -0.2)).size() == 6);

  // Orbit of X lies in the closed cell iff X does.
  const auto cell = crown_cell(rs);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-12, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = chart_point(Rational(num(rng), 24), Rational(num(rng), 24));
    const bool inside = cell_contains(cell, x);
    for (const auto& w : weyl_orbit(rs, x)) CHECK(cell_contains(cell, w) == inside);
  }
}

TEST_CASE("translate disjointness") {
  const auto cell = crown_cell(restricted_roots_sl(3));
  const auto report = translate_disjointness(cell, 2);
  CHECK(report.offsets.size() == 24);
  CHECK(report.all_disjoint);
  for (const auto& o : report.offsets) {
    CHECK_FALSE((o.l == 0 && o.m == 0));
    CHECK(o.disjoint);
    CHECK(o.separating_row.has_value());  // independent slab witness agrees
  }
  CHECK(report.box_half_width == Rational(1, 3));
  CHECK(report.box_certified_from == 1);

  // Offset 0 intersects, as does a small offset.
  CHECK(translates_intersect(cell, {0, 0}));
  CHECK(translates_intersect(cell, {Rational(1, 4), 0}));
  CHECK_FALSE(translates_intersect(cell, {Rational(1, 2), 0}));  // closures touch
  CHECK_FALSE(translates_intersect(cell, {1, 0}));

  CHECK(kind_of([] { translate_disjointness(crown_cell(restricted_roots_sl(2)), 2); }) ==
        ErrorKind::DimensionError);
  CHECK(kind_of([] { translate_disjointness(crown_cell(restricted_roots_sl(4)), 2); }) ==
        ErrorKind::DimensionError);
}

TEST_CASE("first overlapping scale") {
  const auto cell = crown_cell(restricted_roots_sl(3));
  // Oracle: translates of the centrally symmetric s*omega meet iff the
  // offset lies in 2 s omega, i.e. max_i |c_i . t| < s. The smallest
  // max_i |c_i . t| over nonzero integer offsets is 2 (at (1,0), (1,-1), ...),
  // found here by enumeration.
  int best = 1000;
  for (int l = -2; l <= 2; ++l) {
    for (int m = -2; m <= 2; ++m) {
      if (l == 0 && m == 0) continue;
      const int v = std::max({std::abs(2 * l + m), std::abs(l + 2 * m), std::abs(l - m)});
      best = std::min(best, v);
    }
  }
  REQUIRE(best == 2);
  const auto t = first_overlap_scale(cell, 2, 8, 10);
  CHECK(t.last_disjoint == Rational(best));
  CHECK(t.first_overlap == Rational(best) + Rational(1, 8));

  const auto coarse = first_overlap_scale(cell, 2, 1, 10);
  CHECK(coarse.last_disjoint == Rational(2));
  CHECK(coarse.first_overlap == Rational(3));
}

TEST_CASE("exhaustion function") {
  const auto rs = restricted_roots_sl(3);
  CHECK(exhaustion_u_pi2(rs, {0, 0, 0}) == Rational(-3, 2));
  CHECK(exhaustion_u(rs, Eigen::Vector3d::Zero()) == doctest::Approx(-1.5 * kPi * kPi).epsilon(1e-14));

  const ExactVector vertex{Rational(-1, 3), Rational(1, 6), Rational(1, 6)};
  CHECK(exhaustion_u_pi2(rs, vertex) == Rational(-1, 2));
  CHECK(exhaustion_u(rs, Eigen::Vector3d(-kPi / 3, kPi / 6, kPi / 6)) ==
        doctest::Approx(-0.5 * kPi * kPi).epsilon(1e-14));

  // Max over the vertices, exact.
  Rational max_u(-100);
  for (const auto& v : cell_vertices(crown_cell(rs))) max_u = std::max(max_u, exhaustion_u_pi2(rs, v));
  CHECK(max_u == Rational(-1, 2));

  // Permutation invariance, exact.
  const ExactVector x{Rational(1, 5), Rational(-1, 7), Rational(-2, 35)};
  for (const auto& w : weyl_orbit(rs, x)) CHECK(exhaustion_u_pi2(rs, w) == exhaustion_u_pi2(rs, x));
}

TEST_CASE("exhaustion Hessian") {
  // Oracle: second differences of u along the chart basis. u is quadratic,
  // so central differences are exact up to rounding.
  for (int n = 2; n <= 5; ++n) {
    const auto rs = restricted_roots_sl(n);
    const auto h = exhaustion_hessian(rs);
    CHECK(h.positive_definite);
    CHECK(h.min_eigenvalue > 0);
    CHECK(h.min_eigenvalue == doctest::Approx(4.0 * n));
    const double step = 0.25;
    for (int a = 0; a < n - 1; ++a) {
      for (int b = 0; b < n - 1; ++b) {
        Eigen::VectorXd ea = Eigen::VectorXd::Zero(n), eb = Eigen::VectorXd::Zero(n);
        ea(a + 1) = 1;
        ea(0) = -1;
        eb(b + 1) = 1;
        eb(0) = -1;
        const double fd = (exhaustion_u(rs, step * (ea + eb)) - exhaustion_u(rs, step * (ea - eb)) -
                           exhaustion_u(rs, step * (eb - ea)) + exhaustion_u(rs, -step * (ea + eb))) /
                          (4 * step * step);
        CHECK(fd == doctest::Approx(boost::rational_cast<double>(h.restricted[a][b])).epsilon(1e-9));
      }
    }
    // Permutation equivariance P H P^T = H.
    for (const auto& w : rs.weyl_generators()) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) p(i, w[i]) = 1;
      CHECK((p * h.full * p.transpose() - h.full).norm() == 0.0);
    }
  }
  const auto h2 = exhaustion_hessian(restricted_roots_sl(2));
  CHECK(h2.restricted[0][0] == Rational(16));
}

TEST_CASE("bracket grading on root vectors") {
  for (int n = 2; n <= 4; ++n) {
    const auto rs = restricted_roots_sl(n);
    for (const auto& a : rs.all_roots()) {
      for (const auto& b : rs.all_roots()) {
        const Eigen::MatrixXd ea = root_vector(a);
        const Eigen::MatrixXd eb = root_vector(b);
        const Eigen::MatrixXd br = ea * eb - eb * ea;
        Root sum{std::vector<int>(n)};
        for (int i = 0; i < n; ++i) sum.coefficients[i] = a.coefficients[i] + b.coefficients[i];
        if (sum.is_type_a()) {
          // [E_kh, E_hm] = E_km up to sign, inside the root space of a + b.
          const Eigen::MatrixXd target = root_vector(sum);
          CHECK((br - br.cwiseProduct(target)).norm() == 0.0);
          CHECK(std::abs(br.cwiseProduct(target).sum()) == 1.0);
        } else if (std::any_of(sum.coefficients.begin(), sum.coefficients.end(), [](int c) { return c != 0; })) {
          CHECK(br.norm() == 0.0);  // a + b is not a root
        } else {
          CHECK(br.trace() == 0.0);  // lands in the Cartan subspace
          CHECK((br - Eigen::MatrixXd(br.diagonal().asDiagonal())).norm() == 0.0);
        }
      }
    }
    const auto [k, h] = rs.positive_roots().front().type_a_indices();
    CHECK(k == 0);
    CHECK(h == 1);
  }
}
