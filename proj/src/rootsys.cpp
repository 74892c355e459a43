#include "crownlab/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include <fmt/format.h>

#include "crownlab/error.hpp"

namespace crownlab::rootsys {

namespace {

constexpr double kTraceTolerance = 1e-12;

void require_size(const CrownCell& cell, std::size_t size) {
  if (static_cast<int>(size) != cell.dimension) {
    throw Error(ErrorKind::DimensionError,
                fmt::format("vector of size {} for a cell of dimension {}", size, cell.dimension));
  }
}

Rational abs(Rational r) { return r < 0 ? -r : r; }

// a . y < b
struct StrictConstraint {
  std::vector<Rational> a;
  Rational b;
};

// Fourier-Motzkin elimination. Combining two strict inequalities with
// positive multipliers yields a strict inequality, so the projection of a
// purely strict system is again purely strict and the system is feasible iff
// every fully eliminated row reads 0 < b with b > 0.
bool strict_system_feasible(std::vector<StrictConstraint> rows, std::size_t dims) {
  for (std::size_t k = 0; k < dims; ++k) {
    std::vector<StrictConstraint> upper, lower, next;
    for (auto& row : rows) {
      if (row.a[k] > 0) {
        upper.push_back(std::move(row));
      } else if (row.a[k] < 0) {
        lower.push_back(std::move(row));
      } else {
        next.push_back(std::move(row));
      }
    }
    for (const auto& up : upper) {
      for (const auto& lo : lower) {
        const Rational wu = -lo.a[k];
        const Rational wl = up.a[k];
        StrictConstraint combined{std::vector<Rational>(dims), wu * up.b + wl * lo.b};
        for (std::size_t j = 0; j < dims; ++j) {
          combined.a[j] = wu * up.a[j] + wl * lo.a[j];
        }
        combined.a[k] = 0;
        next.push_back(std::move(combined));
      }
    }
    rows = std::move(next);
  }
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.b > 0; });
}

// Solves the square system m y = rhs exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) rhs[r] /= m[r][r];
  return rhs;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Half-plane index for exact counterclockwise ordering: 0 for angles in
// [0, pi), 1 for [pi, 2pi).
int half_plane(const ExactVector& p) { return (p[1] > 0 || (p[1] == 0 && p[0] > 0)) ? 0 : 1; }

bool counterclockwise_less(const ExactVector& p, const ExactVector& q) {
  const int hp = half_plane(p);
  const int hq = half_plane(q);
  if (hp != hq) return hp < hq;
  return p[0] * q[1] - p[1] * q[0] > 0;
}

template <class Vec>
Vec permute(const Vec& x, const Permutation& w) {
  Vec y = x;
  for (std::size_t i = 0; i < w.size(); ++i) y[i] = x[w[i]];
  return y;
}

}  // namespace

Root Root::operator-() const {
  Root r = *this;
  for (auto& c : r.coefficients) c = -c;
  return r;
}

bool Root::is_type_a() const {
  int plus = 0;
  int minus = 0;
  for (int c : coefficients) {
    if (c == 1) {
      ++plus;
    } else if (c == -1) {
      ++minus;
    } else if (c != 0) {
      return false;
    }
  }
  return plus == 1 && minus == 1;
}

std::pair<int, int> Root::type_a_indices() const {
  if (!is_type_a()) throw Error(ErrorKind::InternalError, "root is not of the form eps_k - eps_h");
  int k = -1;
  int h = -1;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] == 1) k = static_cast<int>(i);
    if (coefficients[i] == -1) h = static_cast<int>(i);
  }
  return {k, h};
}

Rational Root::operator()(const ExactVector& x) const {
  Rational s = 0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] != 0) s += coefficients[i] * x[i];
  }
  return s;
}

double Root::operator()(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) s += coefficients[i] * x[i];
  return s;
}

RootSystem::RootSystem(int dimension, std::vector<Root> positive,
                       std::vector<Permutation> weyl_generators)
    : dimension_(dimension), positive_(std::move(positive)), generators_(std::move(weyl_generators)) {
  if (dimension_ < 2) throw Error(ErrorKind::InvalidRank, "root system needs at least 2 coordinates");
  for (const auto& r : positive_) {
    if (static_cast<int>(r.coefficients.size()) != dimension_) {
      throw Error(ErrorKind::DimensionError, "root length differs from the system dimension");
    }
    if (std::all_of(r.coefficients.begin(), r.coefficients.end(), [](int c) { return c == 0; })) {
      throw Error(ErrorKind::InvalidRank, "zero functional is not a root");
    }
  }
  for (const auto& w : generators_) {
    Permutation sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < dimension_; ++i) {
      if (static_cast<int>(sorted.size()) != dimension_ || sorted[i] != i) {
        throw Error(ErrorKind::DimensionError, "Weyl generator is not a coordinate permutation");
      }
    }
  }
  all_ = positive_;
  for (const auto& r : positive_) {
    const Root neg = -r;
    if (std::find(positive_.begin(), positive_.end(), neg) != positive_.end()) {
      throw Error(ErrorKind::InvalidRank, "positive roots contain a root and its negative");
    }
    all_.push_back(neg);
  }
}

RootSystem restricted_roots_sl(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidRank, fmt::format("sl({}) has no restricted roots", n));
  std::vector<Root> positive;
  for (int k = 0; k < n; ++k) {
    for (int h = k + 1; h < n; ++h) {
      Root r{std::vector<int>(n, 0)};
      r.coefficients[k] = 1;
      r.coefficients[h] = -1;
      positive.push_back(std::move(r));
    }
  }
  std::vector<Permutation> gens;
  for (int i = 0; i + 1 < n; ++i) {
    Permutation w(n);
    for (int j = 0; j < n; ++j) w[j] = j;
    std::swap(w[i], w[i + 1]);
    gens.push_back(std::move(w));
  }
  return RootSystem(n, std::move(positive), std::move(gens));
}

CrownCell crown_cell(const RootSystem& rs) {
  CrownCell cell{rs.dimension(), {}};
  for (const auto& r : rs.positive_roots()) cell.inequalities.push_back({r, Rational(1, 2)});
  return cell;
}

bool cell_contains(const CrownCell& cell, const ExactVector& x) {
  require_size(cell, x.size());
  Rational trace = 0;
  for (const auto& v : x) trace += v;
  if (trace != 0) throw Error(ErrorKind::InvalidElement, "cell argument is not traceless");
  return std::all_of(cell.inequalities.begin(), cell.inequalities.end(),
                     [&](const CellInequality& q) { return abs(q.root(x)) < q.bound; });
}

bool cell_contains(const CrownCell& cell, const Eigen::VectorXd& radians) {
  require_size(cell, static_cast<std::size_t>(radians.size()));
  if (!radians.allFinite() || std::abs(radians.sum()) > kTraceTolerance) {
    throw Error(ErrorKind::InvalidElement, "cell argument is not traceless");
  }
  return std::all_of(cell.inequalities.begin(), cell.inequalities.end(), [&](const CellInequality& q) {
    return std::abs(q.root(radians)) < boost::rational_cast<double>(q.bound) * std::numbers::pi;
  });
}

ExactVector to_chart(const ExactVector& x) { return ExactVector(x.begin() + 1, x.end()); }

ExactVector from_chart(const ExactVector& y) {
  ExactVector x(y.size() + 1);
  Rational s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    x[i + 1] = y[i];
    s += y[i];
  }
  x[0] = -s;
  return x;
}

std::vector<ChartInequality> chart_inequalities(const CrownCell& cell) {
  std::vector<ChartInequality> rows;
  for (const auto& q : cell.inequalities) {
    const auto& c = q.root.coefficients;
    ChartInequality row{std::vector<Rational>(c.size() - 1), q.bound};
    for (std::size_t j = 1; j < c.size(); ++j) row.coefficients[j - 1] = c[j] - c[0];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ExactVector> cell_vertices(const CrownCell& cell) {
  const int d = cell.dimension - 1;
  if (d < 1 || d > 3) {
    throw Error(ErrorKind::DimensionError,
                fmt::format("vertex enumeration supports chart dimension 1..3, got {}", d));
  }
  const auto rows = chart_inequalities(cell);

  // Signed hyperplanes c.y = +-b.
  std::vector<std::pair<std::vector<Rational>, Rational>> planes;
  for (const auto& r : rows) {
    planes.emplace_back(r.coefficients, r.bound);
    std::vector<Rational> neg = r.coefficients;
    for (auto& v : neg) v = -v;
    planes.emplace_back(std::move(neg), r.bound);
  }

  std::set<ExactVector> found;
  std::vector<std::size_t> pick(d);
  auto visit = [&](auto&& self, std::size_t start, int depth) -> void {
    if (depth == d) {
      std::vector<std::vector<Rational>> m;
      std::vector<Rational> rhs;
      for (auto idx : pick) {
        m.push_back(planes[idx].first);
        rhs.push_back(planes[idx].second);
      }
      auto y = solve_exact(std::move(m), std::move(rhs));
      if (!y) return;
      const bool feasible = std::all_of(rows.begin(), rows.end(), [&](const ChartInequality& r) {
        return abs(dot(r.coefficients, *y)) <= r.bound;
      });
      if (feasible) found.insert(*y);
      return;
    }
    for (std::size_t i = start; i < planes.size(); ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  visit(visit, 0, 0);

  if (found.empty()) throw Error(ErrorKind::InternalError, "cell has no vertices (unbounded?)");

  std::vector<ExactVector> chart(found.begin(), found.end());
  if (d == 2) std::sort(chart.begin(), chart.end(), counterclockwise_less);

  std::vector<ExactVector> out;
  out.reserve(chart.size());
  for (const auto& y : chart) out.push_back(from_chart(y));
  return out;
}

std::set<ExactVector> weyl_orbit(const RootSystem& rs, const ExactVector& x) {
  if (static_cast<int>(x.size()) != rs.dimension()) {
    throw Error(ErrorKind::DimensionError, "vector size differs from the root system dimension");
  }
  std::set<ExactVector> orbit{x};
  std::deque<ExactVector> queue{x};
  while (!queue.empty()) {
    const ExactVector v = queue.front();
    queue.pop_front();
    for (const auto& w : rs.weyl_generators()) {
      ExactVector image = permute(v, w);
      if (orbit.insert(image).second) queue.push_back(std::move(image));
    }
  }
  return orbit;
}

std::vector<Eigen::VectorXd> weyl_orbit(const RootSystem& rs, const Eigen::VectorXd& x) {
  if (x.size() != rs.dimension()) {
    throw Error(ErrorKind::DimensionError, "vector size differs from the root system dimension");
  }
  // Close the orbit on index permutations, then apply them; comparing
  // permutations instead of floating vectors keeps duplicates exact.
  Permutation identity(rs.dimension());
  for (int i = 0; i < rs.dimension(); ++i) identity[i] = i;
  std::set<Permutation> words{identity};
  std::deque<Permutation> queue{identity};
  while (!queue.empty()) {
    const Permutation p = queue.front();
    queue.pop_front();
    for (const auto& w : rs.weyl_generators()) {
      Permutation composed = permute(p, w);
      if (words.insert(composed).second) queue.push_back(std::move(composed));
    }
  }
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : words) {
    Eigen::VectorXd y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = x[p[i]];
    if (std::none_of(out.begin(), out.end(), [&](const Eigen::VectorXd& z) { return z == y; })) {
      out.push_back(std::move(y));
    }
  }
  return out;
}

bool translates_intersect(const CrownCell& cell, const ExactVector& chart_offset, Rational scale) {
  require_size(cell, chart_offset.size() + 1);
  const auto rows = chart_inequalities(cell);
  const std::size_t dims = chart_offset.size();
  std::vector<StrictConstraint> system;
  for (const auto& r : rows) {
    const Rational bound = scale * r.bound;
    const Rational shift = dot(r.coefficients, chart_offset);
    std::vector<Rational> neg = r.coefficients;
    for (auto& v : neg) v = -v;
    // |c.y| < s b  and  |c.(y - t)| < s b
    system.push_back({r.coefficients, bound});
    system.push_back({neg, bound});
    system.push_back({r.coefficients, bound + shift});
    system.push_back({neg, bound - shift});
  }
  return strict_system_feasible(std::move(system), dims);
}

TranslateReport translate_disjointness(const CrownCell& cell, int range_bound) {
  if (cell.dimension != 3) {
    throw Error(ErrorKind::DimensionError, "translate disjointness needs the (lambda_2, lambda_3) chart");
  }
  if (range_bound < 1) throw Error(ErrorKind::OutOfRange, "range bound must be at least 1");
  const auto rows = chart_inequalities(cell);

  TranslateReport report;
  report.range_bound = range_bound;
  report.all_disjoint = true;
  for (int l = -range_bound; l <= range_bound; ++l) {
    for (int m = -range_bound; m <= range_bound; ++m) {
      if (l == 0 && m == 0) continue;
      const ExactVector offset{Rational(l), Rational(m)};
      TranslateOffset entry{l, m, !translates_intersect(cell, offset), std::nullopt};
      // The cell is centrally symmetric, so omega - omega = 2 omega and the
      // translate misses omega iff some slab |c.t| < 2b excludes the offset.
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (abs(dot(rows[i].coefficients, offset)) >= 2 * rows[i].bound) {
          entry.separating_row = i;
          break;
        }
      }
      report.all_disjoint = report.all_disjoint && entry.disjoint;
      report.offsets.push_back(entry);
    }
  }

  Rational half_width = 0;
  for (const auto& v : cell_vertices(cell)) {
    for (const auto& c : to_chart(v)) half_width = std::max(half_width, abs(c));
  }
  report.box_half_width = half_width;
  // Boxes [-h, h]^2 and [-h, h]^2 + (l, m) are disjoint once max(|l|,|m|) > 2h.
  const Rational width = 2 * half_width;
  report.box_certified_from =
      static_cast<int>(width.numerator() / width.denominator()) + 1;
  return report;
}

ScaleThreshold first_overlap_scale(const CrownCell& cell, int range_bound, int denominator,
                                   int max_scale) {
  if (denominator < 1 || max_scale < 1 || range_bound < 1) {
    throw Error(ErrorKind::OutOfRange, "scale search needs positive grid parameters");
  }
  auto overlaps = [&](std::int64_t k) {
    const Rational scale(k, denominator);
    for (int l = -range_bound; l <= range_bound; ++l) {
      for (int m = -range_bound; m <= range_bound; ++m) {
        if ((l != 0 || m != 0) &&
            translates_intersect(cell, ExactVector{Rational(l), Rational(m)}, scale)) {
          return true;
        }
      }
    }
    return false;
  };
  // Overlap is monotone in the scale (s omega grows with s, 0 in omega).
  std::int64_t lo = denominator;
  std::int64_t hi = static_cast<std::int64_t>(max_scale) * denominator;
  if (overlaps(lo)) {
    return {Rational(0), Rational(lo, denominator)};
  }
  if (!overlaps(hi)) throw Error(ErrorKind::OutOfRange, "translates stay disjoint up to max_scale");
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (overlaps(mid) ? hi : lo) = mid;
  }
  return {Rational(lo, denominator), Rational(hi, denominator)};
}

double exhaustion_u(const RootSystem& rs, const Eigen::VectorXd& radians) {
  if (radians.size() != rs.dimension()) {
    throw Error(ErrorKind::DimensionError, "vector size differs from the root system dimension");
  }
  const double bound = std::numbers::pi / 2;
  double u = 0.0;
  for (const auto& r : rs.all_roots()) {
    const double v = r(radians);
    u += v * v - bound * bound;
  }
  return u;
}

Rational exhaustion_u_pi2(const RootSystem& rs, const ExactVector& x) {
  if (static_cast<int>(x.size()) != rs.dimension()) {
    throw Error(ErrorKind::DimensionError, "vector size differs from the root system dimension");
  }
  Rational u = 0;
  for (const auto& r : rs.all_roots()) {
    const Rational v = r(x);
    u += v * v - Rational(1, 4);
  }
  return u;
}

HessianReport exhaustion_hessian(const RootSystem& rs) {
  const int n = rs.dimension();
  HessianReport report;
  report.full = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::vector<std::int64_t>> full(n, std::vector<std::int64_t>(n, 0));
  for (const auto& r : rs.all_roots()) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) full[i][j] += 2 * r.coefficients[i] * r.coefficients[j];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) report.full(i, j) = static_cast<double>(full[i][j]);
  }

  // Chart basis b_j = e_{j+1} - e_1.
  auto basis = [](int j, int i) { return i == j + 1 ? 1 : (i == 0 ? -1 : 0); };
  const int d = n - 1;
  report.restricted.assign(d, std::vector<Rational>(d, Rational(0)));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      std::int64_t s = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) s += basis(a, i) * full[i][j] * basis(b, j);
      }
      report.restricted[a][b] = s;
    }
  }

  // Leading principal minors by exact elimination.
  report.positive_definite = true;
  auto m = report.restricted;
  for (int k = 0; k < d; ++k) {
    if (m[k][k] <= 0) {
      report.positive_definite = false;
      break;
    }
    for (int r = k + 1; r < d; ++r) {
      const Rational f = m[r][k] / m[k][k];
      for (int c = k; c < d; ++c) m[r][c] -= f * m[k][c];
    }
  }

  // Orthonormal basis of the hyperplane: complete (1,...,1)/sqrt(n) by QR.
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd onb = q.rightCols(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(onb.transpose() * report.full * onb);
  report.min_eigenvalue = eig.eigenvalues().minCoeff();
  return report;
}

Eigen::MatrixXd root_vector(const Root& root) {
  const auto [k, h] = root.type_a_indices();
  const int n = static_cast<int>(root.coefficients.size());
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  e(k, h) = 1.0;
  return e;
}

}  // namespace crownlab::rootsys
