// Linear maps between normed spaces (or subspaces carrying the induced
// norm) and certified operator-norm computation.
//
// Maps are stored in coordinates: a subspace context of dimension k uses
// coefficients relative to its basis columns, a whole-space context uses
// standard coordinates. The norm engine picks, per (domain, codomain) pair,
// the cheapest exact strategy (enumerating domain ball vertices, enumerating
// codomain dual-ball vertices, or power iteration for Euclidean pairs) and
// otherwise falls back to a certified sampling/relaxation bracket.
#pragma once

#include "projlab/space.hpp"

namespace projlab {

class NormContext {
 public:
  explicit NormContext(NormedSpace space);
  // Induced norm on span(basis); coordinates are relative to basis columns.
  NormContext(NormedSpace ambient, Matrix basis);
  NormContext(NormedSpace ambient, Matrix basis, std::string label);

  std::string label;

  Index dim() const { return is_subspace_ ? basis_.cols() : ambient_.dim(); }
  Index ambient_dim() const { return ambient_.dim(); }
  bool is_subspace() const { return is_subspace_; }
  const NormedSpace& ambient() const { return ambient_; }
  // Basis as an ambient x dim matrix; identity for whole-space contexts.
  Matrix basis_matrix() const;

  double norm(const Vector& coords) const;
  Vector to_ambient(const Vector& coords) const;
  // Coordinates of an ambient vector lying in the span (least squares).
  Vector from_ambient(const Vector& x) const;

 private:
  NormedSpace ambient_;
  Matrix basis_;
  bool is_subspace_ = false;
};

struct LinearMap {
  NormContext domain;
  NormContext codomain;
  Matrix a;  // codomain.dim() x domain.dim()

  LinearMap(NormContext dom, NormContext cod, Matrix coeff);
  Vector apply(const Vector& coords) const { return a * coords; }
};

LinearMap compose(const LinearMap& s, const LinearMap& t);  // s after t
LinearMap identity_map(const NormContext& ctx);

struct NormCertificate {
  enum class Kind { exact, bracket };
  Kind kind = Kind::exact;
  double lower = 0.0;
  double upper = 0.0;
};

struct OperatorNorm {
  double value = 0.0;  // best certified lower bound; equals upper when exact
  NormCertificate certificate;
  Vector witness;  // domain coordinates, domain norm 1, attaining `value`
};

struct NormOptions {
  Index max_enum_dim = 20;     // cap for 2^n sign enumerations
  Index sample_count = 10000;  // bracket fallback sampling
  std::uint64_t seed = 1;
  bool require_exact = false;  // throw instead of returning a bracket
};

OperatorNorm operator_norm(const LinearMap& t, const NormOptions& opts = {});

// Norm of a functional given in coordinates against the context norm
// (minimal extension norm for subspace contexts).
double dual_norm_on(const NormContext& ctx, const Vector& g);

// A coordinate vector of context norm 1 maximizing h (exact for polyhedral
// and Euclidean geometries).
Vector norm_attaining_vector(const NormContext& ctx, const Vector& h);

// A subgradient of the context norm at y: a functional g in coordinates with
// dual norm at most 1 and g.y = ||y||.
Vector norm_subgradient(const NormContext& ctx, const Vector& y);

// Certified comparison constants against the Euclidean norm on coordinates:
// ||x||_ctx <= euclidean_to_norm_constant(ctx) * ||x||_2 and
// ||x||_2 <= norm_to_euclidean_constant(ctx) * ||x||_ctx.
double euclidean_to_norm_constant(const NormContext& ctx);
double norm_to_euclidean_constant(const NormContext& ctx);

// Enumeration hooks shared with other modules. Both return false when the
// relevant vertex set is not enumerable under the caps. Callbacks receive
// coordinate vectors.
bool for_each_ball_vertex(const NormContext& ctx,
                          const std::function<void(const Vector&)>& f,
                          Index max_enum_dim = 20);
bool for_each_dual_vertex(const NormContext& ctx,
                          const std::function<void(const Vector&)>& f,
                          Index max_enum_dim = 20);

// Facet functionals of the context unit ball (rows act on coordinates),
// when available: lp(inf), polytope_facets, lp(1) via sign vectors (capped),
// polytope_vertices at dim <= 6, and sections of all of these.
std::optional<Matrix> ball_facet_functionals(const NormContext& ctx,
                                             Index max_enum_dim = 20);

}  // namespace projlab
