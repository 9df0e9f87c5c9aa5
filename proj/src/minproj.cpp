#include "projlab/minproj.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "projlab/lp.hpp"

namespace projlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Affine family of projections onto span(basis): P = basis * (g0 + w * kern')
// with w free; g0 is the Euclidean-orthogonal start and kern spans the
// annihilator of the basis, so every member fixes span(basis) pointwise.
struct ProjectionFamily {
  Matrix basis;  // d x k
  Matrix g0;     // k x d
  Matrix kern;   // d x (d - k), orthonormal columns
};

ProjectionFamily make_family(const Matrix& basis, const Matrix& kill = {}) {
  if (kill.cols() == 0)
    return {basis, pseudo_inverse(basis), kernel_basis(basis.transpose())};
  // Coefficient maps G with G*basis = I and G*kill = 0. The particular
  // solution reads off the top block of the stacked pseudo-inverse; the free
  // part runs over the joint annihilator, so every member still fixes
  // span(basis) pointwise and now also vanishes on span(kill).
  Matrix both(basis.rows(), basis.cols() + kill.cols());
  both << basis, kill;
  Matrix g0 = pseudo_inverse(both).topRows(basis.cols());
  return {basis, std::move(g0), kernel_basis(both.transpose())};
}

Matrix family_member(const ProjectionFamily& fam, const Matrix& w) {
  return fam.basis * (fam.g0 + w * fam.kern.transpose());
}

// Polyhedral description of the ambient ball with one side possibly implicit
// as "all sign vectors". Exactly the geometries where the worst facet/vertex
// pairing can be separated exactly.
struct PolyhedralSides {
  bool available = false;
  Matrix facet_rows;   // rows act on ambient coordinates
  Matrix vertex_cols;  // ambient ball vertices as columns
  bool facet_signs = false;
  bool vertex_signs = false;
};

PolyhedralSides polyhedral_sides(const NormedSpace& x) {
  PolyhedralSides out;
  const Index d = x.dim();
  switch (x.kind()) {
    case NormKind::lp:
      if (x.exponent() == kInfExponent) {
        // One orientation per facet suffices: the sign vertices already come
        // in +-pairs, and -e_r paired with v equals e_r paired with -v.
        out.facet_rows = Matrix::Identity(d, d);
        out.vertex_signs = true;
        out.available = true;
      } else if (x.exponent() == 1.0) {
        out.vertex_cols = Matrix::Identity(d, d);
        out.facet_signs = true;
        out.available = true;
      }
      break;
    case NormKind::polytope_facets:
      out.facet_rows = x.facets().transpose();
      if (d <= 6) {
        out.vertex_cols = polytope_facets_to_vertices(x.facets());
        out.available = true;
      }
      break;
    case NormKind::polytope_vertices:
      out.vertex_cols = x.vertices();
      if (d <= 6) {
        out.facet_rows = polytope_vertices_to_facets(x.vertices()).transpose();
        out.available = true;
      }
      break;
  }
  return out;
}

std::string sign_key(const Vector& s) {
  std::string k(static_cast<size_t>(s.size()), '+');
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) < 0) k[static_cast<size_t>(i)] = '-';
  return k;
}

Vector sign_pattern(const Vector& w) {
  Vector s(w.size());
  for (Index i = 0; i < w.size(); ++i) s(i) = w(i) < 0.0 ? -1.0 : 1.0;
  return s;
}

struct GenerationRow {
  Vector phi;       // ambient functional, dual norm 1
  Vector v;         // ambient ball vertex
  std::string key;  // identity for deduplication
};

// Indices of the `q` smallest-magnitude entries of `w`, ascending by |w|.
std::vector<Index> smallest_indices(const Vector& w, Index q) {
  std::vector<Index> idx(static_cast<size_t>(w.size()));
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<Index>(i);
  q = std::min<Index>(q, w.size());
  std::partial_sort(idx.begin(), idx.begin() + q, idx.end(),
                    [&](Index a, Index b) {
                      const double fa = std::abs(w(a)), fb = std::abs(w(b));
                      return fa < fb || (fa == fb && a < b);
                    });
  idx.resize(static_cast<size_t>(q));
  return idx;
}

// For each explicit element produce its worst partner at the current iterate
// and return the overall maximum, which is the exact operator norm of p. When
// the partner side is a sign pattern, also emit single-flip variants of the
// worst pattern at the `flips` smallest-magnitude coordinates; those are the
// patterns whose activity can change near an optimum, and proposing them
// early saves whole generation rounds.
double separate(const PolyhedralSides& sides, const Matrix& p,
                std::vector<GenerationRow>* worst, Index flips = 0) {
  worst->clear();
  double vmax = 0.0;
  if (sides.facet_signs) {
    for (Index j = 0; j < sides.vertex_cols.cols(); ++j) {
      Vector img = p * sides.vertex_cols.col(j);
      const std::string tag = "v" + std::to_string(j) + ":";
      Vector phi = sign_pattern(img);
      worst->push_back({phi, sides.vertex_cols.col(j), tag + sign_key(phi)});
      vmax = std::max(vmax, img.cwiseAbs().sum());
      for (Index r : smallest_indices(img, flips)) {
        Vector flipped = phi;
        flipped(r) = -flipped(r);
        worst->push_back(
            {flipped, sides.vertex_cols.col(j), tag + sign_key(flipped)});
      }
    }
    return vmax;
  }
  for (Index r = 0; r < sides.facet_rows.rows(); ++r) {
    const Vector phi = sides.facet_rows.row(r).transpose();
    Vector row = p.transpose() * phi;
    if (sides.vertex_signs) {
      const std::string tag = "f" + std::to_string(r) + ":";
      Vector v = sign_pattern(row);
      worst->push_back({phi, v, tag + sign_key(v)});
      vmax = std::max(vmax, row.cwiseAbs().sum());
      for (Index j : smallest_indices(row, flips)) {
        Vector flipped = v;
        flipped(j) = -flipped(j);
        worst->push_back({phi, flipped, tag + sign_key(flipped)});
      }
    } else {
      Index jbest = 0;
      const double val = (row.transpose() * sides.vertex_cols).maxCoeff(&jbest);
      worst->push_back({phi, sides.vertex_cols.col(jbest),
                        "f" + std::to_string(r) + "v" + std::to_string(jbest)});
      vmax = std::max(vmax, val);
    }
  }
  return vmax;
}

MinProjResult exact_lp_path(const NormContext& full, const ProjectionFamily& fam,
                            const PolyhedralSides& sides,
                            const MinProjOptions& opts) {
  const Index k = fam.basis.cols();
  const Index nk = fam.kern.cols();
  const Index nw = k * nk;

  NormOptions exact;
  exact.require_exact = true;
  const Matrix p0 = family_member(fam, Matrix::Zero(k, nk));
  const double tau0 = operator_norm(LinearMap(full, full, p0), exact).value;
  constexpr Index kFlips = 4;

  std::vector<GenerationRow> rows;
  std::set<std::string> seen;
  std::vector<GenerationRow> worst;
  separate(sides, p0, &worst, kFlips);
  for (auto& g : worst)
    if (seen.insert(g.key).second) rows.push_back(std::move(g));

  Matrix w_best = Matrix::Zero(k, nk);
  double lower = 1.0;
  double vmax = tau0;
  bool certified = false;
  Index round = 0;
  // Vertices with huge w satisfy any finite row set while the actual norm
  // explodes, so the generation loop works inside a wide trust box. The box
  // may bind while rows accumulate, but a certificate is only accepted once
  // it is strictly interior, which makes the restricted optimum a genuine
  // lower bound again.
  const double wbox = 8.0 * std::max(1.0, tau0);
  for (; round < opts.round_cap && !certified; ++round) {
    // The restriction to the generated rows reads: maximize u subject to
    // phi((P0 + B W K')v) <= tau0 - u per row and 0 <= u <= tau0 - 1 (P0
    // witnesses t <= tau0; no projection has norm below 1). The row set only
    // restricts the true problem, so with an interior w the optimum
    // tau0 - u* bounds the projection constant from below.
    const Index n_rows = static_cast<Index>(rows.size());
    LpProblem lp;
    lp.a_ub = Matrix::Zero(n_rows + 2 + 2 * nw, nw + 1);
    lp.b_ub = Vector::Zero(n_rows + 2 + 2 * nw);
    lp.c = Vector::Zero(nw + 1);
    lp.c(nw) = -1.0;
    for (Index r = 0; r < n_rows; ++r) {
      const GenerationRow& g = rows[static_cast<size_t>(r)];
      const Vector a = fam.basis.transpose() * g.phi;
      const Vector b = fam.kern.transpose() * g.v;
      for (Index j = 0; j < nk; ++j)
        for (Index i = 0; i < k; ++i) lp.a_ub(r, i + k * j) = a(i) * b(j);
      lp.a_ub(r, nw) = 1.0;
      lp.b_ub(r) = tau0 - g.phi.dot(fam.basis * (fam.g0 * g.v));
    }
    lp.a_ub(n_rows, nw) = -1.0;  // u >= 0
    lp.a_ub(n_rows + 1, nw) = 1.0;  // u <= tau0 - 1
    lp.b_ub(n_rows + 1) = std::max(0.0, tau0 - 1.0);
    for (Index j = 0; j < nw; ++j) {
      lp.a_ub(n_rows + 2 + 2 * j, j) = 1.0;
      lp.b_ub(n_rows + 2 + 2 * j) = wbox;
      lp.a_ub(n_rows + 3 + 2 * j, j) = -1.0;
      lp.b_ub(n_rows + 3 + 2 * j) = wbox;
    }

    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal)
      throw ConvergenceFailure("projection constant relaxation did not solve",
                               1.0, tau0);
    w_best = Eigen::Map<const Matrix>(sol.x.data(), k, nk);
    const double t_cur = tau0 - sol.x(nw);
    const bool interior = w_best.cwiseAbs().maxCoeff() < wbox - 1e-6;
    if (interior) lower = std::max(lower, t_cur);

    const Matrix p = family_member(fam, w_best);
    vmax = separate(sides, p, &worst, kFlips);
    if (vmax <= t_cur + 1e-9) {
      // Only the certifying solve needs clean residuals; earlier rounds
      // merely propose rows, and every proposed row is a valid constraint.
      if (!interior || sol.feasibility_residual > 1e-8 ||
          sol.duality_gap > 1e-8)
        throw ConvergenceFailure(
            "projection constant relaxation did not certify", lower, vmax);
      certified = true;
      break;
    }
    bool added = false;
    for (auto& g : worst) {
      if (g.phi.dot(p * g.v) <= t_cur + 1e-10) continue;
      if (seen.insert(g.key).second) {
        rows.push_back(std::move(g));
        added = true;
      }
    }
    if (!added)
      throw ConvergenceFailure("constraint generation stalled", lower, vmax);
    if (static_cast<Index>(rows.size()) > opts.row_cap)
      throw ConvergenceFailure("constraint generation exceeded its row budget",
                               lower, vmax);
  }
  if (!certified)
    throw ConvergenceFailure("constraint generation exceeded its round budget",
                             lower, vmax);

  const Matrix p = family_member(fam, w_best);
  std::vector<GenerationRow> unused;
  const double lambda = separate(sides, p, &unused);
  Projection proj = certify_projection(full, p, fam.basis);
  return {lambda, 0.0, std::move(proj),
          {MinProjCertificate::Kind::exact_lp, round + 1, true}};
}

MinProjResult subgradient_path(const NormContext& full,
                               const ProjectionFamily& fam,
                               const MinProjOptions& opts) {
  const Index k = fam.basis.cols();
  const Index nk = fam.kern.cols();
  Matrix w = Matrix::Zero(k, nk);

  auto evaluate = [&](const Matrix& cand, std::uint64_t salt, Index samples) {
    NormOptions o;
    o.sample_count = samples;
    o.seed = opts.seed + salt;
    return operator_norm(LinearMap(full, full, family_member(fam, cand)), o);
  };

  auto first = evaluate(w, 0, 200);
  // The orthogonal start is already close for well-conditioned instances, so
  // steps are scaled to the free block rather than to the objective; a step
  // of the objective's size overshoots the useful neighbourhood and the
  // incumbent never moves.
  const double step0 =
      0.5 * std::max(first.value, 1e-6) / std::sqrt(static_cast<double>(nk));
  const double wcap = 4.0 * std::max(first.value, 1.0);
  Matrix w_best = w;
  double best_upper = first.certificate.upper;
  Index used = 0;
  for (Index it = 1; it <= opts.max_iterations; ++it) {
    used = it;
    auto cur = evaluate(w, static_cast<std::uint64_t>(it), 200);
    if (cur.certificate.upper < best_upper) {
      best_upper = cur.certificate.upper;
      w_best = w;
    }
    if (cur.witness.size() == 0) break;
    const Matrix p = family_member(fam, w);
    const Vector f = norm_subgradient(full, p * cur.witness);
    Matrix grad = (fam.basis.transpose() * f) *
                  (fam.kern.transpose() * cur.witness).transpose();
    const double gn = grad.norm();
    if (gn <= 1e-14) break;
    w -= (step0 / std::sqrt(static_cast<double>(it))) * (grad / gn);
    w = w.cwiseMax(-wcap).cwiseMin(wcap);  // keep iterates in sane territory
  }

  auto fin = evaluate(w_best, 0, 10000);
  const double achieved = fin.certificate.upper;
  // Only the universal bound survives scrutiny as the bracket's low end;
  // sharper certificates are the exact path's business.
  const double tau = std::max(0.0, achieved - 1.0);
  Projection proj =
      certify_projection(full, family_member(fam, w_best), fam.basis);
  return {1.0, tau, std::move(proj),
          {MinProjCertificate::Kind::subgradient, used, tau <= opts.tau}};
}

}  // namespace

MinProjResult lambda_relative(const NormContext& sub,
                              const MinProjOptions& opts) {
  NormContext full(sub.ambient());
  const Index d = full.dim();

  if (!sub.is_subspace() || sub.dim() == d) {
    Matrix basis = sub.is_subspace() ? sub.basis_matrix()
                                     : Matrix(Matrix::Identity(d, d));
    Projection proj =
        certify_projection(full, Matrix::Identity(d, d), std::move(basis));
    return {1.0, 0.0, std::move(proj),
            {MinProjCertificate::Kind::exact_lp, 0, true}};
  }

  const ProjectionFamily fam = make_family(sub.basis_matrix());
  if (sub.ambient().is_lp(2.0)) {
    // Inner-product ambient: the Euclidean-orthogonal member has norm 1,
    // which no projection can beat, so the answer is closed form.
    const Index k = fam.basis.cols();
    Projection proj = certify_projection(
        full, family_member(fam, Matrix::Zero(k, fam.kern.cols())), fam.basis);
    return {1.0, 0.0, std::move(proj),
            {MinProjCertificate::Kind::exact_lp, 0, true}};
  }
  if (sub.dim() == 1) {
    // A norming functional f (dual-unit, f(y) = ||y||) exists in every
    // space, and x -> f(x) y is then a norm-one projection onto the line,
    // which is optimal outright.
    const Vector y = fam.basis.col(0) / full.norm(fam.basis.col(0));
    const Vector f = norm_subgradient(full, y);
    Projection proj = certify_projection(full, y * f.transpose(), fam.basis);
    return {1.0, 0.0, std::move(proj),
            {MinProjCertificate::Kind::exact_lp, 0, true}};
  }

  const PolyhedralSides sides = polyhedral_sides(sub.ambient());
  if (sides.available) {
    // Row generation closes quickly when the subspace has low rank or the
    // free block is small; past that zone the number of informative sign
    // patterns explodes and the bracket path is both faster and honest about
    // its gap. The thresholds are calibrated, not principled.
    const Index k = fam.basis.cols();
    const Index nw = k * fam.kern.cols();
    const bool try_exact = k <= 2 || nw <= 64;
    if (try_exact) {
      try {
        return exact_lp_path(full, fam, sides, opts);
      } catch (const ConvergenceFailure&) {
        // Budget ran out before a certificate; degrade to the bracket.
      }
    }
  }
  return subgradient_path(full, fam, opts);
}

MinProjResult min_projection_killing(const NormContext& sub, const Matrix& kill,
                                     const MinProjOptions& opts) {
  if (!sub.is_subspace())
    throw InvalidArgument("killing projections need a proper subspace target");
  if (kill.cols() == 0) return lambda_relative(sub, opts);
  NormContext full(sub.ambient());
  const Index d = full.dim();
  if (kill.rows() != d)
    throw InvalidArgument("kill directions must live in the ambient space");
  Matrix both(d, sub.dim() + kill.cols());
  both << sub.basis_matrix(), kill;
  if (numeric_rank(both) < both.cols())
    throw InvalidArgument("target and kill directions must be independent");

  // Any map that fixes the target and annihilates the kill directions factors
  // through the quotient by those directions, so minimizing over this family
  // is the quotient-side minimal projection problem in ambient coordinates.
  const ProjectionFamily fam = make_family(sub.basis_matrix(), kill);
  const PolyhedralSides sides = polyhedral_sides(sub.ambient());
  if (fam.kern.cols() == 0) {
    // Target plus kill directions span the ambient space: the family is a
    // single map, so report it with whatever exactness the geometry allows.
    const Matrix p = fam.basis * fam.g0;
    Projection proj = certify_projection(full, p, fam.basis);
    if (sides.available) {
      std::vector<GenerationRow> unused;
      const double lambda = separate(sides, p, &unused);
      return {lambda, 0.0, std::move(proj),
              {MinProjCertificate::Kind::exact_lp, 0, true}};
    }
    NormOptions o;
    o.sample_count = 10000;
    o.seed = opts.seed;
    const double achieved =
        operator_norm(LinearMap(full, full, p), o).certificate.upper;
    const double tau = std::max(0.0, achieved - 1.0);
    return {1.0, tau, std::move(proj),
            {MinProjCertificate::Kind::subgradient, 0, tau <= opts.tau}};
  }
  if (sides.available) {
    const Index k = fam.basis.cols();
    const Index nw = k * fam.kern.cols();
    if (k <= 2 || nw <= 64) {
      try {
        return exact_lp_path(full, fam, sides, opts);
      } catch (const ConvergenceFailure&) {
        // Budget ran out before a certificate; degrade to the bracket.
      }
    }
  }
  return subgradient_path(full, fam, opts);
}

namespace {

Matrix spiral_directions(Index m) {
  Matrix f(m, 3);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (Index i = 0; i < m; ++i) {
    const double z =
        1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    f(i, 0) = r * std::cos(a);
    f(i, 1) = r * std::sin(a);
    f(i, 2) = z;
  }
  return f;
}

// Exact worst-case distortion for Euclidean-plane functionals: the widest
// angular gap between functional directions taken modulo pi.
double planar_euclidean_eta(const Matrix& f) {
  std::vector<double> angles;
  for (Index i = 0; i < f.rows(); ++i) {
    double a = std::atan2(f(i, 1), f(i, 0));
    a = std::fmod(std::fmod(a, kPi) + kPi, kPi);
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + kPi - angles.back();
  for (size_t i = 1; i < angles.size(); ++i)
    gap = std::max(gap, angles[i] - angles[i - 1]);
  return 1.0 - std::cos(gap / 2.0);
}

// Upper-bounds 1 - min over the unit sphere of max_i |f_i| by a mesh sweep
// plus a Lipschitz correction for the mesh gaps.
double mesh_certified_eta(const NormedSpace& y, const Matrix& f) {
  NormContext ctx(y);
  const double lip =
      2.0 * euclidean_to_norm_constant(ctx) * norm_to_euclidean_constant(ctx);
  double worst = 0.0;
  double chord = 0.0;
  auto visit = [&](const Vector& u) {
    const Vector yb = u / y.norm(u);
    worst = std::max(worst, 1.0 - (f * yb).cwiseAbs().maxCoeff());
  };
  if (y.dim() == 2) {
    const Index n = 200000;
    const double step = 2.0 * kPi / static_cast<double>(n);
    Vector u(2);
    for (Index i = 0; i < n; ++i) {
      u << std::cos(step * static_cast<double>(i)),
          std::sin(step * static_cast<double>(i));
      visit(u);
    }
    chord = 2.0 * std::sin(step / 4.0);
  } else {
    const Index nt = 700, np = 1400;
    const double dt = kPi / static_cast<double>(nt);
    const double dp = 2.0 * kPi / static_cast<double>(np);
    Vector u(3);
    for (Index a = 0; a < nt; ++a) {
      const double th = (static_cast<double>(a) + 0.5) * dt;
      for (Index b = 0; b < np; ++b) {
        const double ph = static_cast<double>(b) * dp;
        u << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
            std::cos(th);
        visit(u);
      }
    }
    chord = 0.5 * std::sqrt(dt * dt + dp * dp);
  }
  return std::min(1.0, worst + lip * chord);
}

double sampled_eta(const NormedSpace& y, const Matrix& f, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (Index i = 0; i < 20000; ++i) {
    Vector u = rng.normal_vector(y.dim());
    const double nn = y.norm(u);
    if (nn <= 1e-12) continue;
    u /= nn;
    worst = std::max(worst, 1.0 - (f * u).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

Embedding embed_into_linf(const NormedSpace& y, Index m, EmbedScheme scheme,
                          std::uint64_t seed) {
  const Index n = y.dim();
  if (m < n)
    throw InvalidArgument("embedding needs at least dim(y) coordinates");
  Matrix f(m, n);
  bool coordinate_case = false;
  if (scheme == EmbedScheme::grid) {
    if (y.is_lp(kInfExponent)) {
      f.setZero();
      for (Index i = 0; i < m; ++i) f(i, i % n) = 1.0;
      coordinate_case = true;
    } else if (n == 1) {
      Vector g = Vector::Ones(1);
      f.col(0).setConstant(1.0 / y.dual_norm(g));
    } else if (n == 2) {
      for (Index i = 0; i < m; ++i) {
        const double a =
            2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
        Vector g(2);
        g << std::cos(a), std::sin(a);
        f.row(i) = g.transpose() / y.dual_norm(g);
      }
    } else if (n == 3) {
      const Matrix dirs = spiral_directions(m);
      for (Index i = 0; i < m; ++i) {
        const Vector g = dirs.row(i).transpose();
        f.row(i) = g.transpose() / y.dual_norm(g);
      }
    } else {
      throw InvalidArgument("grid scheme is only defined through dimension 3");
    }
  } else {
    Rng rng(seed);
    for (Index i = 0; i < m; ++i) {
      Vector g = rng.normal_vector(n);
      while (g.norm() <= 1e-8) g = rng.normal_vector(n);
      f.row(i) = g.transpose() / y.dual_norm(g);
    }
  }
  if (numeric_rank(f) < n)
    throw InvalidArgument("functionals do not separate the embedded space");

  double eta;
  bool certified;
  if (coordinate_case || n == 1) {
    eta = 0.0;
    certified = true;
  } else if (n == 2 && y.is_lp(2.0)) {
    eta = planar_euclidean_eta(f);
    certified = true;
  } else if (n <= 3) {
    eta = mesh_certified_eta(y, f);
    certified = true;
  } else {
    eta = sampled_eta(y, f, seed + 99);
    certified = false;
  }
  if (eta >= 1.0 - 1e-9)
    throw InvalidArgument("too few functionals for a faithful embedding");

  NormedSpace ambient = NormedSpace::lp(m, kInfExponent);
  NormContext copy(ambient, f);
  return {std::move(ambient), std::move(copy), std::move(f), eta, certified};
}

std::vector<AbsoluteEstimate> lambda_absolute_approx(
    const NormedSpace& y, const std::vector<Index>& m_list, EmbedScheme scheme,
    const MinProjOptions& opts) {
  std::vector<AbsoluteEstimate> out;
  for (Index m : m_list) {
    Embedding emb = embed_into_linf(y, m, scheme, opts.seed);
    MinProjResult r = lambda_relative(emb.copy, opts);
    out.push_back({m, emb.eta, emb.eta_certified, std::move(r)});
  }
  return out;
}

}  // namespace projlab
