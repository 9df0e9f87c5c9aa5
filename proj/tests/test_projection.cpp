#include <doctest.h>

#include <cmath>

#include "projlab/projection.hpp"

using namespace projlab;

namespace {

NormContext linf(Index n) { return NormContext(NormedSpace::lp(n, kInfExponent)); }

NormContext l2(Index n) { return NormContext(NormedSpace::lp(n, 2.0)); }

Matrix cols(std::initializer_list<Vector> vs) {
  Matrix m(vs.begin()->size(), static_cast<Index>(vs.size()));
  Index j = 0;
  for (const auto& v : vs) m.col(j++) = v;
  return m;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("coordinate projection onto span{e1} along span{e2}") {
  auto ctx = linf(2);
  auto p = make_projection(ctx, cols({vec2(1, 0)}), cols({vec2(0, 1)}));
  Matrix expect(2, 2);
  expect << 1, 0, 0, 0;
  CHECK((p.map.a - expect).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(p.rank() == 1);
  CHECK(p.idempotency_residual <= 1e-12);
}

TEST_CASE("averaging projection in linf2 has norm 1") {
  auto ctx = linf(2);
  auto p = make_projection(ctx, cols({vec2(1, 1)}), cols({vec2(1, -1)}));
  Matrix expect(2, 2);
  expect << 0.5, 0.5, 0.5, 0.5;
  CHECK((p.map.a - expect).cwiseAbs().maxCoeff() <= 1e-12);
  auto norm = operator_norm(p.map);
  CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(norm.certificate.kind == NormCertificate::Kind::exact);
}

TEST_CASE("orthogonal projections in l2n have norm 1") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(5));
    const Index k = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - 1)));
    auto ctx = l2(n);
    Matrix target = rng.normal_matrix(n, k);
    auto p = orthogonal_projection(ctx, target);
    auto norm = operator_norm(p.map);
    CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-9));
    // Fixes its image pointwise.
    CHECK((p.map.a * target - target).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("make_projection rejects overlapping or deficient complements") {
  auto ctx = linf(3);
  Matrix target(3, 1), kernel_bad(3, 1), kernel_small(3, 1);
  target << 1, 0, 0;
  kernel_bad << 1, 0, 0;
  kernel_small << 0, 1, 0;
  CHECK_THROWS_AS(make_projection(ctx, target, kernel_bad), InvalidArgument);
  CHECK_THROWS_AS(make_projection(ctx, target, kernel_small), InvalidArgument);
}

TEST_CASE("certify_projection rejects non-idempotent coefficients") {
  auto ctx = linf(2);
  Matrix a(2, 2);
  a << 1, 1, 0, 1;  // invertible, not a projection
  Matrix image = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(certify_projection(ctx, a, image), InvalidArgument);
}

TEST_CASE("certify_projection rejects a wrong image basis") {
  auto ctx = linf(2);
  Matrix a(2, 2);
  a << 1, 0, 0, 0;
  Matrix image(2, 1);
  image << 0, 1;  // P kills e2 instead of fixing it
  CHECK_THROWS_AS(certify_projection(ctx, a, image), InvalidArgument);
}

TEST_CASE("factor_through with middle equal to the image") {
  auto ctx = linf(3);
  Matrix target(3, 1), kernel(3, 2);
  target << 1, 1, 0;
  kernel << 1, 0, -1, 0, 0, 1;
  auto p = make_projection(ctx, target, kernel);
  auto f = factor_through(p, p.image_basis);
  CHECK(f.residual <= 1e-9);
  // Inner factor degenerates to the identity on the image.
  CHECK((f.through.map.a - Matrix::Identity(1, 1)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((f.outer.map.a - p.map.a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("factor_through with middle equal to the whole space") {
  auto ctx = linf(3);
  Matrix target(3, 1), kernel(3, 2);
  target << 1, 1, 0;
  kernel << 1, 0, -1, 0, 0, 1;
  auto p = make_projection(ctx, target, kernel);
  auto f = factor_through(p, Matrix::Identity(3, 3));
  CHECK(f.residual <= 1e-9);
  CHECK((f.outer.map.a - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((f.through.map.a - p.map.a).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("factor_through on the coordinate triple is exact") {
  auto ctx = linf(3);
  Matrix target(3, 1);
  target << 1, 0, 0;
  Matrix kernel(3, 2);
  kernel << 0, 0, 1, 0, 0, 1;
  auto p = make_projection(ctx, target, kernel);
  Matrix middle(3, 2);
  middle << 1, 0, 0, 1, 0, 0;
  auto f = factor_through(p, middle);
  CHECK(f.residual <= 1e-12);
  Matrix expect_outer(3, 3);
  expect_outer << 1, 0, 0, 0, 1, 0, 0, 0, 0;
  CHECK((f.outer.map.a - expect_outer).cwiseAbs().maxCoeff() <= 1e-12);
  Matrix expect_through(2, 2);
  expect_through << 1, 0, 0, 0;
  CHECK((f.through.map.a - expect_through).cwiseAbs().maxCoeff() <= 1e-12);
}

namespace {

// Random projection onto a k-dim target with an independent complement.
Projection random_projection(const NormContext& ctx, Index k, Rng& rng) {
  const Index n = ctx.dim();
  for (;;) {
    Matrix target = rng.normal_matrix(n, k);
    Matrix kernel = rng.normal_matrix(n, n - k);
    Matrix both(n, n);
    both << target, kernel;
    if (numeric_rank(both) < n) continue;
    return make_projection(ctx, target, kernel);
  }
}

}  // namespace

TEST_CASE("factor_through reconstructs random projections through random middles") {
  auto ctx = linf(8);
  Rng rng(417);
  int done = 0;
  while (done < 40) {
    const Index r1 = 1 + static_cast<Index>(rng.below(3));       // image dim
    const Index r2 = r1 + 1 + static_cast<Index>(rng.below(3));  // middle dim
    if (r2 > 6) continue;
    auto p = random_projection(ctx, r1, rng);
    // Grow the image to a middle subspace containing it.
    Matrix middle(8, r2);
    middle.leftCols(r1) = p.image_basis;
    middle.rightCols(r2 - r1) = rng.normal_matrix(8, r2 - r1);
    if (numeric_rank(middle) < r2) continue;
    auto f = factor_through(p, middle);
    CHECK(f.residual <= 1e-8);
    // Direct reconstruction: lift the inner factor back to ambient coords.
    Matrix lift = middle * f.through.map.a *
                  least_squares(middle, f.outer.map.a);
    CHECK((lift - p.map.a).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(f.through.idempotency_residual <= 1e-9);
    CHECK(f.outer.idempotency_residual <= 1e-9);
    // ker(inner factor) = ker P intersected with the middle subspace.
    Matrix n_all = kernel_basis(p.map.a);
    Matrix joint(8, n_all.cols() + r2);
    joint << n_all, middle;
    const Index expected_kdim =
        n_all.cols() + r2 - numeric_rank(joint);
    const Index through_kdim = r2 - f.through.rank();
    CHECK(through_kdim == expected_kdim);
    Matrix through_kernel = kernel_basis(f.through.map.a);
    if (through_kernel.cols() > 0)
      CHECK((p.map.a * (middle * through_kernel)).cwiseAbs().maxCoeff() <= 1e-8);
    ++done;
  }
}

TEST_CASE("factor_through rejects middles that miss the image") {
  auto ctx = linf(3);
  Matrix target(3, 1), kernel(3, 2);
  target << 1, 0, 0;
  kernel << 0, 0, 1, 0, 0, 1;
  auto p = make_projection(ctx, target, kernel);
  Matrix middle(3, 1);
  middle << 0, 1, 0;
  CHECK_THROWS_AS(factor_through(p, middle), InvalidArgument);
}
