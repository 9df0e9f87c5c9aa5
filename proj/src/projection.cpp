#include "projlab/projection.hpp"

#include <algorithm>
#include <cmath>

namespace projlab {

namespace {

// Certified upper bound on the operator norm of an endomorphism difference;
// exact routes when available, bracket upper otherwise.
double norm_upper(const NormContext& ctx, const Matrix& a) {
  NormOptions opts;
  opts.sample_count = 200;  // the upper bound does not depend on sampling
  auto r = operator_norm(LinearMap(ctx, ctx, a), opts);
  return r.certificate.upper;
}

// Basis of span(a) intersected with span(b), columns orthonormal.
Matrix span_intersection(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
  Matrix stacked(a.rows(), a.cols() + b.cols());
  stacked.leftCols(a.cols()) = a;
  stacked.rightCols(b.cols()) = -b;
  Matrix k = kernel_basis(stacked);
  if (k.cols() == 0) return Matrix(a.rows(), 0);
  Matrix inter = a * k.topRows(a.cols());
  return orthonormal_columns(inter);
}

}  // namespace

NormContext Projection::image_context() const {
  const NormContext& d = map.domain;
  Matrix ambient_basis = d.basis_matrix() * image_basis;
  return NormContext(d.ambient(), std::move(ambient_basis));
}

LinearMap Projection::as_map_onto_image() const {
  // Coordinates of P x relative to the image basis.
  Matrix coords = least_squares(image_basis, map.a);
  return LinearMap(map.domain, image_context(), std::move(coords));
}

Projection certify_projection(NormContext domain, Matrix coeff,
                              Matrix image_basis, double tol) {
  const Index d = domain.dim();
  if (coeff.rows() != d || coeff.cols() != d)
    throw DimensionMismatch("projection coefficients must be square");
  if (image_basis.rows() != d)
    throw DimensionMismatch("image basis rows must match domain dimension");
  const Index r = image_basis.cols();
  if (r < 0 || r > d) throw InvalidArgument("image basis has invalid rank");
  if (r > 0 && numeric_rank(image_basis) != r)
    throw InvalidArgument("image basis is not linearly independent");

  Projection p{LinearMap(domain, domain, coeff), std::move(image_basis), 0.0, 0.0};
  p.idempotency_residual = norm_upper(domain, coeff * coeff - coeff);
  double img_res = 0.0;
  // P fixes its image pointwise.
  if (r > 0) {
    Matrix fix = coeff * p.image_basis - p.image_basis;
    img_res = fix.lpNorm<Eigen::Infinity>();
  }
  // P maps into the image span.
  for (Index j = 0; j < d; ++j)
    img_res = std::max(img_res, r == 0
                                    ? coeff.col(j).lpNorm<Eigen::Infinity>()
                                    : span_distance(p.image_basis, coeff.col(j)));
  p.image_residual = img_res;
  if (p.idempotency_residual > tol)
    throw InvalidArgument("projection is not idempotent within tolerance");
  if (p.image_residual > tol)
    throw InvalidArgument("projection does not certify against its image");
  return p;
}

Projection make_projection(const NormContext& domain, const Matrix& target,
                           const Matrix& kernel, double tol) {
  const Index d = domain.dim();
  const Index r = target.cols();
  if (target.rows() != d || kernel.rows() != d)
    throw DimensionMismatch("target/kernel rows must match domain dimension");
  if (r + kernel.cols() != d)
    throw InvalidArgument("target and kernel dimensions do not decompose the space");
  Matrix m(d, d);
  m.leftCols(r) = target;
  m.rightCols(kernel.cols()) = kernel;
  if (numeric_rank(m) != d)
    throw InvalidArgument("target and kernel overlap or do not span");
  Matrix sel = Matrix::Zero(r, d);
  sel.leftCols(r) = Matrix::Identity(r, r);
  Matrix coeff = target * sel * m.fullPivLu().inverse();
  return certify_projection(domain, std::move(coeff), target, tol);
}

Projection orthogonal_projection(const NormContext& domain,
                                 const Matrix& target, double tol) {
  const Matrix b = domain.basis_matrix();
  // Complement orthogonal to the target in ambient Euclidean coordinates.
  Matrix kernel = kernel_basis(target.transpose() * (b.transpose() * b));
  return make_projection(domain, target, kernel, tol);
}

Factorization factor_through(const Projection& p, const Matrix& middle,
                             double tol) {
  const NormContext& outer_ctx = p.map.domain;
  const Index d = outer_ctx.dim();
  if (middle.rows() != d)
    throw DimensionMismatch("middle basis rows must match domain dimension");
  const Index r2 = middle.cols();
  if (numeric_rank(middle) != r2)
    throw InvalidArgument("middle basis is not linearly independent");
  if (!span_contains(middle, p.image_basis))
    throw InvalidArgument("projection image does not lie in the middle span");

  // Kernel split: ker(P1) = ker(P) ∩ middle; its Euclidean-orthogonal
  // complement inside ker(P) becomes the kernel of the outer factor.
  Matrix n = kernel_basis(p.map.a);
  Matrix n1 = span_intersection(n, middle);
  Matrix c;
  if (n1.cols() == 0) {
    c = n;
  } else {
    Matrix rest = n - n1 * (n1.transpose() * n);
    // Relative rank detection misreads an all-zero residual, so short it out.
    if (rest.norm() <= 1e-10 * std::max(1.0, n.norm()))
      c = Matrix(d, 0);
    else
      c = orthonormal_columns(rest);
  }
  if (c.cols() != d - r2)
    throw InvalidArgument("kernel split does not complement the middle span");

  Factorization out{
      // placeholder objects replaced below; C++ lacks named late init here
      Projection{LinearMap(outer_ctx, outer_ctx, Matrix::Identity(d, d)),
                 Matrix::Identity(d, d), 0.0, 0.0},
      make_projection(outer_ctx, middle, c, tol), 0.0};

  // Restrict P to the middle span, in middle coordinates.
  Matrix a1 = least_squares(middle, Matrix(p.map.a * middle));
  Matrix image_mid = least_squares(middle, p.image_basis);
  NormContext mid_ctx(outer_ctx.ambient(), outer_ctx.basis_matrix() * middle);
  out.through = certify_projection(mid_ctx, std::move(a1), std::move(image_mid), tol);

  // Certified reconstruction residual ||P - P1 P2|| on the outer context.
  Matrix down = least_squares(middle, out.outer.map.a);
  Matrix recon = middle * out.through.map.a * down;
  out.residual = norm_upper(outer_ctx, p.map.a - recon);
  if (out.residual > std::max(tol, 1e-9))
    throw InvalidArgument("factorization residual exceeds tolerance");
  return out;
}

}  // namespace projlab
