#include "projlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "projlab/lp.hpp"

namespace projlab {

namespace {

constexpr double kSymTol = 1e-9;

bool columns_close(const Vector& a, const Vector& b, double tol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

// Lexicographic column sort + adjacent dedupe with tolerance.
Matrix dedupe_columns(const Matrix& m, double tol) {
  const Index n = m.cols();
  if (n == 0) return m;
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (Index i = 0; i < m.rows(); ++i) {
      const double d = m(i, a) - m(i, b);
      if (d < -tol) return true;
      if (d > tol) return false;
    }
    return false;
  });
  std::vector<Index> keep;
  for (Index k = 0; k < n; ++k) {
    const Index j = order[static_cast<size_t>(k)];
    if (!keep.empty() && columns_close(m.col(keep.back()), m.col(j), tol))
      continue;
    keep.push_back(j);
  }
  Matrix out(m.rows(), static_cast<Index>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Index>(k)) = m.col(keep[k]);
  return out;
}

// Gauge of x in the convex hull of the columns of v: the least t with
// x in t * conv(v). Exact via LP.
double convex_hull_gauge(const Matrix& v, const Vector& x) {
  if (x.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
  const Index n = v.cols();
  LpProblem p;
  p.c = Vector::Ones(n);
  p.a_eq = v;
  p.b_eq = x;
  p.a_ub = -Matrix::Identity(n, n);
  p.b_ub = Vector::Zero(n);
  auto r = solve_lp(p);
  if (r.status != LpStatus::optimal || r.feasibility_residual > 1e-8 ||
      r.duality_gap > 1e-8)
    throw ConvergenceFailure("gauge evaluation LP failed: " +
                                 std::string(to_string(r.status)),
                             0.0, std::numeric_limits<double>::infinity());
  return r.objective;
}

double binomial_count(Index n, Index k) {
  double c = 1.0;
  for (Index i = 0; i < k; ++i) c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

constexpr double kSubsetWorkCap = 2e6;

// Enumerates d-subsets of columns of m, solving rows(subset) * x = 1 and
// keeping solutions that satisfy pred. Shared core of both conversions.
Matrix enumerate_subset_solutions(const Matrix& m,
                                  const std::function<bool(const Vector&)>& keep) {
  const Index d = m.rows();
  const Index n = m.cols();
  if (d > 6)
    throw InvalidArgument("polytope conversion limited to dimension <= 6");
  if (binomial_count(n, d) > kSubsetWorkCap)
    throw InvalidArgument("polytope conversion: too many subsets");
  std::vector<Vector> found;
  std::vector<Index> idx(static_cast<size_t>(d));
  std::function<void(Index, Index)> rec = [&](Index start, Index chosen) {
    if (chosen == d) {
      Matrix sub(d, d);
      for (Index i = 0; i < d; ++i)
        sub.row(i) = m.col(idx[static_cast<size_t>(i)]).transpose();
      Eigen::FullPivLU<Matrix> lu(sub);
      lu.setThreshold(1e-10);
      if (!lu.isInvertible()) return;
      Vector x = lu.solve(Vector::Ones(d));
      if (keep(x)) found.push_back(x);
      return;
    }
    for (Index i = start; i <= n - (d - chosen); ++i) {
      idx[static_cast<size_t>(chosen)] = i;
      rec(i + 1, chosen + 1);
    }
  };
  rec(0, 0);
  Matrix out(d, static_cast<Index>(found.size()));
  for (size_t k = 0; k < found.size(); ++k) out.col(static_cast<Index>(k)) = found[k];
  return dedupe_columns(out, 1e-9);
}

}  // namespace

NormedSpace NormedSpace::lp(Index dim, double p, std::string label) {
  if (dim < 1) throw InvalidArgument("space dimension must be positive");
  if (!(p >= 1.0))  // rejects NaN too
    throw InvalidArgument("lp exponent must satisfy p >= 1");
  NormedSpace s;
  s.dim_ = dim;
  s.kind_ = NormKind::lp;
  s.p_ = p;
  s.label_ = std::move(label);
  return s;
}

NormedSpace NormedSpace::from_ball_vertices(Matrix vertices, std::string label) {
  NormedSpace s;
  s.dim_ = vertices.rows();
  s.kind_ = NormKind::polytope_vertices;
  s.body_ = std::move(vertices);
  s.label_ = std::move(label);
  s.check_polytope_invariants();
  // 0 must be interior; with a symmetric spanning vertex list it is, but the
  // containment is still verified by LP feasibility.
  const Index n = s.body_.cols();
  LpProblem p;
  p.c = Vector::Zero(n);
  p.a_eq = Matrix::Zero(s.dim_ + 1, n);
  p.a_eq.topRows(s.dim_) = s.body_;
  p.a_eq.bottomRows(1).setOnes();
  p.b_eq = Vector::Zero(s.dim_ + 1);
  p.b_eq(s.dim_) = 1.0;
  p.a_ub = -Matrix::Identity(n, n);
  p.b_ub = Vector::Zero(n);
  auto r = solve_lp(p);
  if (r.status != LpStatus::optimal || r.feasibility_residual > 1e-8)
    throw InvalidArgument("vertex body does not contain the origin");
  return s;
}

NormedSpace NormedSpace::from_ball_facets(Matrix facets, std::string label) {
  NormedSpace s;
  s.dim_ = facets.rows();
  s.kind_ = NormKind::polytope_facets;
  s.body_ = std::move(facets);
  s.label_ = std::move(label);
  s.check_polytope_invariants();
  // Positive definiteness on basis vectors: every coordinate direction must
  // be seen by some functional.
  for (Index i = 0; i < s.dim_; ++i) {
    if (s.body_.row(i).lpNorm<Eigen::Infinity>() <= kSymTol)
      throw InvalidArgument("facet norm vanishes on a basis vector");
  }
  return s;
}

void NormedSpace::check_polytope_invariants() const {
  if (body_.cols() == 0) throw InvalidArgument("empty vertex/facet list");
  if (dim_ < 1) throw InvalidArgument("space dimension must be positive");
  for (Index j = 0; j < body_.cols(); ++j) {
    bool has_neg = false;
    for (Index k = 0; k < body_.cols() && !has_neg; ++k)
      has_neg = columns_close(body_.col(j), -body_.col(k), kSymTol);
    if (!has_neg)
      throw InvalidArgument("vertex/facet list is not centrally symmetric");
  }
  if (numeric_rank(body_) != dim_)
    throw InvalidArgument("vertex/facet list does not span the space");
}

double NormedSpace::exponent() const {
  if (kind_ != NormKind::lp) throw InvalidArgument("not an lp space");
  return p_;
}

const Matrix& NormedSpace::vertices() const {
  if (kind_ != NormKind::polytope_vertices)
    throw InvalidArgument("space has no vertex representation");
  return body_;
}

const Matrix& NormedSpace::facets() const {
  if (kind_ != NormKind::polytope_facets)
    throw InvalidArgument("space has no facet representation");
  return body_;
}

bool NormedSpace::is_lp(double p) const {
  return kind_ == NormKind::lp && p_ == p;
}

namespace {

double lp_norm(const Vector& x, double p) {
  if (p == kInfExponent) return x.lpNorm<Eigen::Infinity>();
  if (p == 1.0) return x.lpNorm<1>();
  if (p == 2.0) return x.norm();
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

double dual_exponent(double p) {
  if (p == 1.0) return kInfExponent;
  if (p == kInfExponent) return 1.0;
  return p / (p - 1.0);
}

}  // namespace

double NormedSpace::norm(const Vector& x) const {
  if (x.size() != dim_) throw DimensionMismatch("norm: vector length mismatch");
  switch (kind_) {
    case NormKind::lp:
      return lp_norm(x, p_);
    case NormKind::polytope_vertices:
      return convex_hull_gauge(body_, x);
    case NormKind::polytope_facets:
      return (body_.transpose() * x).maxCoeff();
  }
  throw InvalidArgument("unknown norm kind");
}

double NormedSpace::dual_norm(const Vector& f) const {
  if (f.size() != dim_)
    throw DimensionMismatch("dual_norm: vector length mismatch");
  switch (kind_) {
    case NormKind::lp:
      return lp_norm(f, dual_exponent(p_));
    case NormKind::polytope_vertices:
      // Support function of the ball over its vertex list.
      return (body_.transpose() * f).maxCoeff();
    case NormKind::polytope_facets:
      // The dual ball is the convex hull of the facet functionals.
      return convex_hull_gauge(body_, f);
  }
  throw InvalidArgument("unknown norm kind");
}

Matrix cross_polytope_vertices(Index n) {
  Matrix v(n, 2 * n);
  v.leftCols(n) = Matrix::Identity(n, n);
  v.rightCols(n) = -Matrix::Identity(n, n);
  return v;
}

Matrix polytope_vertices_to_facets(const Matrix& vertices) {
  const Matrix& v = vertices;
  return enumerate_subset_solutions(v, [&](const Vector& h) {
    return ((v.transpose() * h).array() <= 1.0 + 1e-9).all();
  });
}

Matrix polytope_facets_to_vertices(const Matrix& facets) {
  const Matrix& f = facets;
  return enumerate_subset_solutions(f, [&](const Vector& x) {
    return ((f.transpose() * x).array() <= 1.0 + 1e-9).all();
  });
}

QuotientDistance quotient_norm(const NormedSpace& z_space, const Matrix& y_basis,
                               const Vector& z) {
  const Index n = z_space.dim();
  const Index r = y_basis.cols();
  if (y_basis.rows() != n || z.size() != n)
    throw DimensionMismatch("quotient_norm: shape mismatch");
  if (numeric_rank(y_basis) != r)
    throw InvalidArgument("quotient_norm: subspace basis is rank deficient");

  auto lp_result = [&](const LpProblem& p, Index c_offset) {
    auto res = solve_lp(p);
    if (res.status != LpStatus::optimal || res.feasibility_residual > 1e-8 ||
        res.duality_gap > 1e-8)
      throw ConvergenceFailure("quotient_norm LP failed", 0.0,
                               std::numeric_limits<double>::infinity());
    QuotientDistance out;
    out.value = res.objective;
    out.minimizer = y_basis * res.x.segment(c_offset, r);
    return out;
  };

  if (z_space.kind() == NormKind::lp && z_space.exponent() == 2.0) {
    QuotientDistance out;
    out.minimizer = y_basis * least_squares(y_basis, z);
    out.value = (z - out.minimizer).norm();
    return out;
  }
  if (z_space.kind() == NormKind::lp && z_space.exponent() == kInfExponent) {
    // Variables [c; t]: minimize t with -t <= (z - Y c)_i <= t.
    LpProblem p;
    p.c = Vector::Zero(r + 1);
    p.c(r) = 1.0;
    p.a_ub = Matrix::Zero(2 * n, r + 1);
    p.a_ub.topLeftCorner(n, r) = -y_basis;
    p.a_ub.bottomLeftCorner(n, r) = y_basis;
    p.a_ub.col(r).setConstant(-1.0);
    p.b_ub = Vector::Zero(2 * n);
    p.b_ub.head(n) = -z;
    p.b_ub.tail(n) = z;
    return lp_result(p, 0);
  }
  if (z_space.kind() == NormKind::lp && z_space.exponent() == 1.0) {
    // Variables [c; a]: minimize sum(a) with -a <= z - Y c <= a.
    LpProblem p;
    p.c = Vector::Zero(r + n);
    p.c.tail(n).setOnes();
    p.a_ub = Matrix::Zero(2 * n, r + n);
    p.a_ub.topLeftCorner(n, r) = -y_basis;
    p.a_ub.bottomLeftCorner(n, r) = y_basis;
    p.a_ub.topRightCorner(n, n) = -Matrix::Identity(n, n);
    p.a_ub.bottomRightCorner(n, n) = -Matrix::Identity(n, n);
    p.b_ub = Vector::Zero(2 * n);
    p.b_ub.head(n) = -z;
    p.b_ub.tail(n) = z;
    return lp_result(p, 0);
  }
  if (z_space.kind() == NormKind::polytope_facets) {
    // Variables [c; t]: minimize t with f_j.(z - Y c) <= t.
    const Matrix& f = z_space.facets();
    const Index nf = f.cols();
    LpProblem p;
    p.c = Vector::Zero(r + 1);
    p.c(r) = 1.0;
    p.a_ub = Matrix::Zero(nf, r + 1);
    p.a_ub.leftCols(r) = -f.transpose() * y_basis;
    p.a_ub.col(r).setConstant(-1.0);
    p.b_ub = -f.transpose() * z;
    return lp_result(p, 0);
  }
  if (z_space.kind() == NormKind::polytope_vertices) {
    // Variables [lambda; c]: minimize sum(lambda) with V lambda + Y c = z.
    const Matrix& v = z_space.vertices();
    const Index nv = v.cols();
    LpProblem p;
    p.c = Vector::Zero(nv + r);
    p.c.head(nv).setOnes();
    p.a_eq = Matrix::Zero(n, nv + r);
    p.a_eq.leftCols(nv) = v;
    p.a_eq.rightCols(r) = y_basis;
    p.b_eq = z;
    p.a_ub = Matrix::Zero(nv, nv + r);
    p.a_ub.leftCols(nv) = -Matrix::Identity(nv, nv);
    p.b_ub = Vector::Zero(nv);
    return lp_result(p, nv);
  }

  // Remaining case: lp with exponent in (1, inf) \ {2}. Smooth convex
  // objective; gradient descent with backtracking.
  const double p = z_space.exponent();
  Vector c = least_squares(y_basis, z);  // warm start at the l2 minimizer
  double best = z_space.norm(z - y_basis * c);
  double step = 1.0;
  for (int iter = 0; iter < 20000; ++iter) {
    Vector u = z - y_basis * c;
    const double nu = z_space.norm(u);
    if (nu <= 1e-14) break;
    Vector gnorm(u.size());
    for (Index i = 0; i < u.size(); ++i)
      gnorm(i) = (u(i) < 0.0 ? -1.0 : 1.0) *
                 std::pow(std::abs(u(i)) / nu, p - 1.0);
    Vector grad = -y_basis.transpose() * gnorm;  // d norm / d c
    const double gn = grad.norm();
    if (gn <= 1e-12 * std::max(1.0, nu)) break;
    bool moved = false;
    while (step > 1e-14) {
      Vector cand = c - step * grad;
      const double val = z_space.norm(z - y_basis * cand);
      if (val < nu - 0.25 * step * gn * gn) {
        c = cand;
        best = val;
        moved = true;
        step *= 1.3;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  {
    Vector u = z - y_basis * c;
    const double nu = z_space.norm(u);
    Vector gnorm(u.size());
    if (nu > 1e-14) {
      for (Index i = 0; i < u.size(); ++i)
        gnorm(i) = (u(i) < 0.0 ? -1.0 : 1.0) *
                   std::pow(std::abs(u(i)) / nu, p - 1.0);
      const double gn = (y_basis.transpose() * gnorm).norm();
      if (gn > 1e-6 * std::max(1.0, nu))
        throw ConvergenceFailure("quotient_norm: descent stalled",
                                 std::max(0.0, nu - gn), nu);
    }
    QuotientDistance out;
    out.value = nu;
    out.minimizer = y_basis * c;
    return out;
  }
}

Matrix drop_non_extreme_columns(const Matrix& points) {
  Matrix pts = dedupe_columns(points, 1e-9);
  const Index n = pts.cols();
  if (n <= 1) return pts;
  std::vector<Index> keep;
  for (Index j = 0; j < n; ++j) {
    // Is pts.col(j) a convex combination of the other columns?
    Matrix others(pts.rows(), n - 1);
    Index c = 0;
    for (Index k = 0; k < n; ++k)
      if (k != j) others.col(c++) = pts.col(k);
    LpProblem p;
    p.c = Vector::Zero(n - 1);
    p.a_eq = Matrix::Zero(pts.rows() + 1, n - 1);
    p.a_eq.topRows(pts.rows()) = others;
    p.a_eq.bottomRows(1).setOnes();
    p.b_eq = Vector::Zero(pts.rows() + 1);
    p.b_eq.head(pts.rows()) = pts.col(j);
    p.b_eq(pts.rows()) = 1.0;
    p.a_ub = -Matrix::Identity(n - 1, n - 1);
    p.b_ub = Vector::Zero(n - 1);
    auto r = solve_lp(p);
    const bool redundant =
        r.status == LpStatus::optimal && r.feasibility_residual <= 1e-8;
    if (!redundant) keep.push_back(j);
  }
  Matrix out(pts.rows(), static_cast<Index>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k)
    out.col(static_cast<Index>(k)) = pts.col(keep[k]);
  return out;
}

}  // namespace projlab
