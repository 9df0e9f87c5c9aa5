// Certified projections and factorization through an intermediate subspace.
//
// A projection is stored as an endomorphism of its domain context together
// with a basis of its image (in domain coordinates). Construction verifies
// idempotence and that the map fixes its image pointwise; residuals are kept
// on the object so callers can report them.
#pragma once

#include "projlab/operator.hpp"

namespace projlab {

struct Projection {
  LinearMap map;       // domain context == codomain context
  Matrix image_basis;  // domain coordinates, one column per image dimension
  double idempotency_residual = 0.0;  // ||P*P - P||, certified upper bound
  double image_residual = 0.0;        // fix-image and map-into-image residual

  Index rank() const { return image_basis.cols(); }
  // The image as a context of its own (basis mapped through the domain).
  NormContext image_context() const;
  // The same projection viewed as a map onto its image context.
  LinearMap as_map_onto_image() const;
};

// Verifies that `coeff` is a projection of `domain` onto span(image_basis)
// within tol; throws InvalidArgument otherwise.
Projection certify_projection(NormContext domain, Matrix coeff,
                              Matrix image_basis, double tol = 1e-9);

// Projection onto span(target) along span(kernel), both in domain
// coordinates; the two spans must decompose the space.
Projection make_projection(const NormContext& domain, const Matrix& target,
                           const Matrix& kernel, double tol = 1e-9);

// Kernel chosen orthogonal to the target in the ambient Euclidean sense.
Projection orthogonal_projection(const NormContext& domain,
                                 const Matrix& target, double tol = 1e-9);

struct Factorization {
  Projection through;  // endomorphism of the middle context, image unchanged
  Projection outer;    // endomorphism of p's context, image = the middle span
  double residual = 0.0;  // certified ||P - P1*P2|| on the outer context
};

// Splits a projection P through an intermediate span `middle` (domain
// coordinates) with im(P) inside span(middle): P1 is P restricted to the
// middle, its kernel is ker(P) intersected with the middle, and P2 projects
// onto the middle along the Euclidean-orthogonal complement of ker(P1)
// inside ker(P). The product P1*P2 reproduces P.
Factorization factor_through(const Projection& p, const Matrix& middle,
                             double tol = 1e-9);

}  // namespace projlab
