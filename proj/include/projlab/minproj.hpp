// Relative projection constants and close-to-minimal projections, plus the
// sup-norm embedding machinery used to approximate absolute constants.

#pragma once

#include <cstdint>
#include <vector>

#include "projlab/projection.hpp"

namespace projlab {

struct MinProjCertificate {
  enum class Kind { exact_lp, subgradient };
  Kind kind = Kind::exact_lp;
  // LP generation rounds or subgradient iterations spent.
  Index iterations = 0;
  // Iterative runs only: whether the requested gap was reached.
  bool converged = true;
};

struct MinProjResult {
  // Certified lower end of the bracket on the relative projection constant.
  // Exact certificates pin the constant itself within 1e-9; iterative runs
  // fall back to the universal bound 1 (a projection onto a nonzero subspace
  // never has norm below 1), because the incumbent's own norm says nothing
  // about better family members.
  double lambda = 1.0;
  // Relative gap: the returned projection's norm is lambda * (1 + tau), so
  // the bracket reads [lambda, lambda * (1 + tau)]. Zero when exact.
  double tau = 0.0;
  Projection projection;
  MinProjCertificate certificate;

  // Norm of the returned projection, the natural point estimate of the
  // constant.
  double achieved() const { return lambda * (1.0 + tau); }
};

struct MinProjOptions {
  double tau = 0.05;             // requested relative gap for iterative runs
  Index max_iterations = 10000;  // subgradient budget
  std::uint64_t seed = 1;
  Index row_cap = 20000;   // full-enumeration limit for the exact LP
  Index round_cap = 200;   // lazy row-generation rounds
};

// Relative projection constant of the subspace carried by `sub` inside its
// ambient space, with a projection attaining the bound. Exact LP for
// polyhedral ambients (constraint rows generated lazily when the ball has
// too many vertices to enumerate), closed form for Euclidean ambients,
// projected subgradient descent otherwise.
MinProjResult lambda_relative(const NormContext& sub,
                              const MinProjOptions& opts = {});

// Minimal-norm projection onto the subspace carried by `sub` that also
// annihilates the columns of `kill`. Such maps factor through the quotient by
// span(kill), so this is the quotient-side projection problem posed directly
// in ambient coordinates. Requires the target basis and kill directions to be
// jointly independent; with an empty `kill` it is lambda_relative.
MinProjResult min_projection_killing(const NormContext& sub, const Matrix& kill,
                                     const MinProjOptions& opts = {});

enum class EmbedScheme { grid, seeded };

struct Embedding {
  NormedSpace ambient;  // sup-norm space on m coordinates
  NormContext copy;     // image of the embedded space inside the ambient
  Matrix functionals;   // m x dim rows; each a dual-unit functional
  // Distortion: (1 - eta) * ||y|| <= max_i |f_i(y)| <= ||y||.
  double eta = 0.0;
  bool eta_certified = false;  // mesh-certified (dim <= 3) vs sampled estimate
};

// Represents `y` inside linf^m by evaluating m dual-unit functionals.
// grid: coordinate functionals for sup-norm spaces, equal angles in dim 2,
// spiral directions in dim 3; seeded: uniform dual-sphere samples.
Embedding embed_into_linf(const NormedSpace& y, Index m, EmbedScheme scheme,
                          std::uint64_t seed = 1);

struct AbsoluteEstimate {
  Index m = 0;
  double eta = 0.0;
  bool eta_certified = false;
  MinProjResult result;
};

// Relative constants of embedded copies of `y` at increasing resolution;
// the sequence approaches the absolute constant as eta shrinks.
std::vector<AbsoluteEstimate> lambda_absolute_approx(
    const NormedSpace& y, const std::vector<Index>& m_list,
    EmbedScheme scheme = EmbedScheme::grid, const MinProjOptions& opts = {});

}  // namespace projlab
