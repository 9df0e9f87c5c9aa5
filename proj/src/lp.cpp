#include "projlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace projlab {

namespace {

// Exact power-of-two row scale factor for a row with max-abs entry `m`.
double pow2_scale(double m) {
  if (m <= 0.0 || !std::isfinite(m)) return 1.0;
  int e = 0;
  std::frexp(m, &e);
  return std::ldexp(1.0, -e + 1);  // brings max-abs into [1, 2)
}

struct Tableau {
  Matrix t;                  // rows x (cols + 1), last column is rhs
  Vector cost;               // reduced-cost row, length cols
  double obj_shift = 0.0;    // objective value = -obj_shift
  std::vector<Index> basis;  // basis.size() == rows, values index columns
  std::vector<bool> barred;  // columns that may never enter (artificials)

  Index rows() const { return t.rows(); }
  Index cols() const { return t.cols() - 1; }

  void pivot(Index r, Index c) {
    t.row(r) /= t(r, c);
    for (Index i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double f = t(i, c);
      if (f != 0.0) t.row(i) -= f * t.row(r);
    }
    const double f = cost(c);
    if (f != 0.0) {
      cost -= f * t.row(r).head(cols()).transpose();
      obj_shift -= f * t(r, cols());
    }
    basis[static_cast<size_t>(r)] = c;
  }

  // Rebuilds the tableau, reduced costs, and objective from the basis with
  // fresh arithmetic. `a0` is the original equality-form tableau (with rhs in
  // the last column) and `c_phase` the phase cost over all columns. Repeated
  // pivoting drifts; everything that terminates a phase re-verifies through
  // this first.
  void refactor(const Matrix& a0, const Vector& c_phase) {
    const Index m = rows();
    Matrix bmat(m, m);
    Vector cb(m);
    for (Index i = 0; i < m; ++i) {
      bmat.col(i) = a0.col(basis[static_cast<size_t>(i)]);
      cb(i) = c_phase(basis[static_cast<size_t>(i)]);
    }
    const auto lu = bmat.partialPivLu();
    t = lu.solve(a0);
    const Vector y = bmat.transpose().partialPivLu().solve(cb);
    cost = c_phase - a0.leftCols(cols()).transpose() * y;
    for (Index i = 0; i < m; ++i) cost(basis[static_cast<size_t>(i)]) = 0.0;
    obj_shift = -cb.dot(t.col(cols()));
  }
};

// One simplex phase. Pricing is Dantzig (most negative reduced cost, ties to
// the smallest index); the leaving row is chosen by the lexicographic ratio
// test over [rhs, entry basis columns in row order]: those columns form an
// identity in the tableau and rhs >= 0 on entry, so every row starts
// lex-positive. The tableau is refactorized on a fixed cadence and before
// any claim of optimality or unboundedness. Returns false on iteration
// limit.
bool run_simplex(Tableau& tab, const Matrix& a0, const Vector& c_phase,
                 const LpOptions& opts, Index max_iter, Index* iter_count,
                 bool* unbounded) {
  constexpr Index kRefactorEvery = 96;
  *unbounded = false;
  const Index m = tab.rows();
  const Index n = tab.cols();
  const std::vector<Index> lex_cols(tab.basis.begin(), tab.basis.end());
  Index since_refactor = 0;
  while (*iter_count < max_iter) {
    Index enter = -1;
    double best = -opts.cost_tol;
    for (Index j = 0; j < n; ++j) {
      if (tab.barred[static_cast<size_t>(j)]) continue;
      if (tab.cost(j) < best) {
        best = tab.cost(j);
        enter = j;
      }
    }
    if (enter < 0) {
      if (since_refactor == 0) return true;
      tab.refactor(a0, c_phase);
      since_refactor = 0;
      continue;  // re-scan with fresh arithmetic before declaring optimal
    }

    // Lexicographically smallest row/pivot among positive pivot candidates.
    // Levels that agree to rounding must be treated as ties and passed to
    // the next key, or the anti-cycling argument silently evaporates.
    const auto lex_less = [&](double x, double y) {
      return x < y - 1e-11 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    Index leave = -1;
    for (Index i = 0; i < m; ++i) {
      const double ai = tab.t(i, enter);
      if (ai <= opts.pivot_tol) continue;
      if (leave < 0) {
        leave = i;
        continue;
      }
      const double al = tab.t(leave, enter);
      double vi = tab.t(i, n) / ai;
      double vl = tab.t(leave, n) / al;
      if (!lex_less(vi, vl) && !lex_less(vl, vi)) {
        for (Index k = 0; k < m; ++k) {
          vi = tab.t(i, lex_cols[static_cast<size_t>(k)]) / ai;
          vl = tab.t(leave, lex_cols[static_cast<size_t>(k)]) / al;
          if (lex_less(vi, vl) || lex_less(vl, vi)) break;
        }
      }
      if (lex_less(vi, vl)) leave = i;
    }
    if (leave < 0) {
      if (since_refactor > 0) {
        tab.refactor(a0, c_phase);
        since_refactor = 0;
        continue;  // drift can fake an all-nonpositive column
      }
      *unbounded = true;
      return true;
    }
    tab.pivot(leave, enter);
    ++*iter_count;
    if (++since_refactor >= kRefactorEvery) {
      tab.refactor(a0, c_phase);
      since_refactor = 0;
    }
  }
  return false;
}

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

LpResult solve_lp(const LpProblem& p, const LpOptions& opts) {
  const Index nx = p.c.size();
  const Index mu = p.a_ub.rows();
  const Index me = p.a_eq.rows();
  if (mu > 0 && p.a_ub.cols() != nx)
    throw DimensionMismatch("lp: a_ub column count does not match c");
  if (me > 0 && p.a_eq.cols() != nx)
    throw DimensionMismatch("lp: a_eq column count does not match c");
  if (p.b_ub.size() != mu || p.b_eq.size() != me)
    throw DimensionMismatch("lp: right-hand side length mismatch");

  LpResult res;
  const Index m = mu + me;
  if (m == 0) {
    // Unconstrained: bounded only for c == 0 (c >= 0 when x >= 0).
    res.x = Vector::Zero(nx);
    const bool bounded =
        nx == 0 || (p.nonneg ? p.c.minCoeff() >= 0.0
                             : p.c.lpNorm<Eigen::Infinity>() == 0.0);
    res.status = bounded ? LpStatus::optimal : LpStatus::unbounded;
    res.objective = 0.0;
    res.dual_ub = Vector::Zero(0);
    res.dual_eq = Vector::Zero(0);
    return res;
  }

  // Equality form: variables z = [u; v; s], x = u - v, one slack per ub row.
  // With p.nonneg the mirror block v is dropped and x = u directly.
  const Index nv = p.nonneg ? 0 : nx;
  const Index n = nx + nv + mu;
  Matrix a = Matrix::Zero(m, n);
  Vector b(m);
  Vector sign(m);   // row negation applied to reach b >= 0
  Vector scale(m);  // power-of-two row scaling
  for (Index i = 0; i < m; ++i) {
    Vector row(nx);
    double rhs;
    if (i < mu) {
      row = p.a_ub.row(i).transpose();
      rhs = p.b_ub(i);
    } else {
      row = p.a_eq.row(i - mu).transpose();
      rhs = p.b_eq(i - mu);
    }
    const double sg = rhs < 0.0 ? -1.0 : 1.0;
    double mx = std::max(row.lpNorm<Eigen::Infinity>(), std::abs(rhs));
    const double sc = pow2_scale(mx);
    sign(i) = sg;
    scale(i) = sc;
    a.row(i).head(nx) = sg * sc * row.transpose();
    if (nv > 0) a.row(i).segment(nx, nv) = -sg * sc * row.transpose();
    // The slack absorbs the row scale (s' = sc * s), keeping its column +-1
    // so unnegated rows start with an exact identity basis column.
    if (i < mu) a(i, nx + nv + i) = sg;
    b(i) = sg * sc * rhs;
  }

  // Initial basis: the slack column where it survived with +1 orientation,
  // an artificial column otherwise.
  std::vector<Index> art_rows;
  for (Index i = 0; i < m; ++i) {
    if (!(i < mu && a(i, nx + nv + i) > 0.0)) art_rows.push_back(i);
  }
  const Index na = static_cast<Index>(art_rows.size());
  const Index total = n + na;
  Matrix a0 = Matrix::Zero(m, total + 1);  // pristine equality form
  a0.leftCols(n) = a;
  a0.col(total) = b;
  for (Index k = 0; k < na; ++k)
    a0(art_rows[static_cast<size_t>(k)], n + k) = 1.0;

  const Index max_iter = opts.max_iterations > 0
                             ? opts.max_iterations
                             : 50 * (m + total) + 2000;
  Index iters = 0;
  bool unbounded = false;
  Tableau tab;
  Vector c2 = Vector::Zero(total);
  c2.head(nx) = p.c;
  if (nv > 0) c2.segment(nx, nv) = -p.c;

  // Degenerate vertices (ties in the ratio test) are where the simplex can
  // stall, and right-hand sides full of zeros manufacture them in bulk. The
  // first pass therefore perturbs the rhs of the rows whose slack survived
  // with +1 orientation: pushing such a row's rhs up only relaxes it (the
  // slack absorbs the shift exactly), so feasibility of the system is
  // untouched while basic solutions become generically nondegenerate. Rows
  // held by artificials are never perturbed; a shifted equality need not
  // stay consistent. The resulting basis is re-verified against the exact
  // rhs (reduced costs do not depend on b, so optimality carries over), and
  // only if that verification fails does a second, unperturbed pass run.
  // Each pass also gets its own iteration budget so a stalled perturbed pass
  // cannot starve the exact one.
  const double pscale = 1e-9 * std::max(1.0, b.lpNorm<Eigen::Infinity>());
  bool solved = false;
  for (int pass = 0; pass < 2 && !solved; ++pass) {
    Matrix a0p = a0;
    if (pass == 0) {
      for (Index i = 0; i < mu; ++i) {
        if (!(a(i, nx + nv + i) > 0.0)) continue;
        const double frac =
            std::fmod(0.6180339887498949 * static_cast<double>(i + 1), 1.0);
        a0p(i, total) += pscale * (0.5 + frac);
      }
    }
    const Index pass_cap = pass == 0 ? max_iter / 2 : max_iter;

    tab.basis.assign(static_cast<size_t>(m), -1);
    for (Index i = 0; i < m; ++i)
      if (i < mu && a(i, nx + nv + i) > 0.0)
        tab.basis[static_cast<size_t>(i)] = nx + nv + i;
    for (Index k = 0; k < na; ++k)
      tab.basis[static_cast<size_t>(art_rows[static_cast<size_t>(k)])] = n + k;
    tab.t = a0p;
    tab.barred.assign(static_cast<size_t>(total), false);

    bool out_of_iterations = false;

    // Phase 1: minimize the sum of artificials.
    if (na > 0) {
      Vector c1 = Vector::Zero(total);
      c1.tail(na).setOnes();
      tab.refactor(a0p, c1);
      if (!run_simplex(tab, a0p, c1, opts, pass_cap, &iters, &unbounded)) {
        out_of_iterations = true;
      } else {
        // Perturbation only relaxes rows, so a positive optimum here is a
        // genuine certificate of infeasibility on either pass.
        const double phase1 = -tab.obj_shift;
        if (phase1 > 1e-7) {
          res.status = LpStatus::infeasible;
          res.iterations = iters;
          return res;
        }
        // Drive remaining artificials out of the basis when possible.
        for (Index i = 0; i < m; ++i) {
          if (tab.basis[static_cast<size_t>(i)] < n) continue;
          Index piv = -1;
          for (Index j = 0; j < n; ++j) {
            if (std::abs(tab.t(i, j)) > 1e-8) {
              piv = j;
              break;
            }
          }
          if (piv >= 0) tab.pivot(i, piv);
          // Otherwise the row is redundant; the artificial stays basic at
          // zero.
        }
        for (Index k = 0; k < na; ++k)
          tab.barred[static_cast<size_t>(n + k)] = true;
      }
    }

    // Phase 2 objective over [u; v; s].
    if (!out_of_iterations) {
      tab.refactor(a0p, c2);
      if (!run_simplex(tab, a0p, c2, opts, pass_cap, &iters, &unbounded))
        out_of_iterations = true;
    }
    if (out_of_iterations) {
      if (pass == 1) {
        res.status = LpStatus::iteration_limit;
        res.iterations = iters;
        return res;
      }
      continue;  // retry without perturbation on a fresh budget
    }
    res.iterations = iters;
    if (unbounded) {
      // Recession directions do not depend on the rhs.
      res.status = LpStatus::unbounded;
      return res;
    }

    // Rebuild the tableau from the final basis against the exact rhs.
    tab.refactor(a0, c2);
    double min_basic = 0.0;
    for (Index i = 0; i < m; ++i)
      min_basic = std::min(min_basic, tab.t(i, total));
    solved = pass == 1 || min_basic >= -1e-7;
  }

  // Recover x = u - v (or x = u when nonneg).
  Vector z = Vector::Zero(total);
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis[static_cast<size_t>(i)];
    if (bj < total) z(bj) = tab.t(i, total);
  }
  res.x = z.head(nx);
  if (nv > 0) res.x -= z.segment(nx, nv);
  res.objective = p.c.size() > 0 ? p.c.dot(res.x) : 0.0;

  // Duals: solve B' y = c_B against the scaled equality-form columns, then
  // undo row scaling and negation.
  Matrix bmat = Matrix::Zero(m, m);
  Vector cb = Vector::Zero(m);
  for (Index i = 0; i < m; ++i) {
    const Index bj = tab.basis[static_cast<size_t>(i)];
    if (bj < n) {
      bmat.col(i) = a.col(bj);
      cb(i) = c2(bj);
    } else {
      bmat(art_rows[static_cast<size_t>(bj - n)], i) = 1.0;
      cb(i) = 0.0;
    }
  }
  Vector y = bmat.transpose().fullPivLu().solve(cb);
  Vector y_orig(m);
  for (Index i = 0; i < m; ++i) y_orig(i) = sign(i) * scale(i) * y(i);
  res.dual_ub = Vector::Zero(mu);
  res.dual_eq = Vector::Zero(me);
  for (Index i = 0; i < mu; ++i) res.dual_ub(i) = std::max(0.0, -y_orig(i));
  for (Index i = 0; i < me; ++i) res.dual_eq(i) = -y_orig(mu + i);

  // Residuals on the original statement.
  double feas = 0.0;
  if (mu > 0) {
    Vector r = p.a_ub * res.x - p.b_ub;
    feas = std::max(feas, r.maxCoeff());
  }
  if (me > 0) {
    Vector r = p.a_eq * res.x - p.b_eq;
    feas = std::max(feas, r.lpNorm<Eigen::Infinity>());
  }
  if (p.nonneg && nx > 0) feas = std::max(feas, -res.x.minCoeff());
  res.feasibility_residual = std::max(0.0, feas);

  // Stationarity c + A_ub' l + A_eq' m = 0 (>= 0 for nonneg variables) and
  // strong duality, both folded into one relative gap figure.
  Vector stat = p.c;
  if (mu > 0) stat += p.a_ub.transpose() * res.dual_ub;
  if (me > 0) stat += p.a_eq.transpose() * res.dual_eq;
  const double stat_viol =
      stat.size() == 0 ? 0.0
      : p.nonneg       ? std::max(0.0, -stat.minCoeff())
                       : stat.lpNorm<Eigen::Infinity>();
  const double dual_obj =
      -((mu > 0 ? p.b_ub.dot(res.dual_ub) : 0.0) +
        (me > 0 ? p.b_eq.dot(res.dual_eq) : 0.0));
  const double denom =
      std::max({1.0, std::abs(res.objective), std::abs(dual_obj)});
  res.duality_gap = std::max(std::abs(res.objective - dual_obj) / denom,
                             stat_viol / denom);
  res.status = LpStatus::optimal;
  return res;
}

}  // namespace projlab
