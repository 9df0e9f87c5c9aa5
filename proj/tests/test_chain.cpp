#include <doctest.h>

#include <cmath>
#include <vector>

#include "projlab/chain.hpp"

using namespace projlab;

namespace {

// b_j = e_j + gamma * (b_1 + ... + b_{j-1}); nearly dependent for gamma
// close to 1.
Matrix skewed_basis(Index n, double gamma) {
  Matrix b = Matrix::Zero(n, n);
  Vector partial = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    Vector col = gamma * partial;
    col(j) += 1.0;
    b.col(j) = col;
    partial += col;
  }
  return b;
}

Chain prefix_chain(const NormedSpace& ambient, const Matrix& full, Index levels) {
  std::vector<Matrix> bases;
  for (Index i = 0; i < levels; ++i) bases.push_back(full.leftCols(i + 1));
  return make_chain(ambient, std::move(bases));
}

// Levels are spans of the last 1, 2, ..., `levels` columns. Prefix spans of a
// triangular family collapse to coordinate subspaces; the suffix spans keep
// the slant, which is what makes Euclidean-orthogonal steps expensive in the
// sup norm.
Chain suffix_chain(const NormedSpace& ambient, const Matrix& full, Index levels) {
  std::vector<Matrix> bases;
  for (Index i = 0; i < levels; ++i) bases.push_back(full.rightCols(i + 1));
  return make_chain(ambient, std::move(bases));
}

}  // namespace

TEST_CASE("make_chain validates nesting and dimension growth") {
  auto ambient = NormedSpace::lp(3, kInfExponent);
  Matrix a(3, 1), b(3, 2), c(3, 1);
  a << 1, 0, 0;
  b << 1, 0, 0, 1, 0, 0;
  c << 0, 0, 1;
  CHECK_NOTHROW(make_chain(ambient, {a, b}));
  CHECK_THROWS_AS(make_chain(ambient, {c, b}), InvalidArgument);   // not nested
  CHECK_THROWS_AS(make_chain(ambient, {b, b}), InvalidArgument);   // not increasing
  CHECK_THROWS_AS(make_chain(ambient, {}), InvalidArgument);
}

TEST_CASE("coordinate chain in linf8 composes to norm one everywhere") {
  auto ambient = NormedSpace::lp(8, kInfExponent);
  auto chain = prefix_chain(ambient, Matrix::Identity(8, 8), 8);
  attach_default_steps(chain);
  auto table = composition_table(chain);
  CHECK(table.entries.size() == 28);
  for (const auto& e : table.entries)
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(table.sup == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("orthogonal decomposition chain in l2 has an all-ones table") {
  auto ambient = NormedSpace::lp(6, 2.0);
  Rng rng(91);
  Matrix full = orthonormal_columns(rng.normal_matrix(6, 6));
  auto chain = prefix_chain(ambient, full, 5);
  attach_default_steps(chain);
  auto table = composition_table(chain);
  for (const auto& e : table.entries)
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single-step chain reports the step norm") {
  auto ambient = NormedSpace::lp(2, kInfExponent);
  Matrix lower(2, 1);
  lower << 1, 0.5;
  auto chain = make_chain(ambient, {lower, Matrix::Identity(2, 2)});
  attach_default_steps(chain);
  auto table = composition_table(chain);
  REQUIRE(table.entries.size() == 1);
  CHECK(table.entries[0].k == 1);
  CHECK(table.entries[0].l == 1);
  auto direct = operator_norm(chain.steps[0].map);
  CHECK(table.entries[0].value == doctest::Approx(direct.value).epsilon(1e-9));
  // Euclidean-orthogonal projection onto span{(1, 1/2)} in sup norm: the
  // worst row sum is (1 + 1/2) / (1 + 1/4).
  CHECK(table.entries[0].value == doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("composition table entries never drop below one") {
  auto ambient = NormedSpace::lp(6, kInfExponent);
  Rng rng(533);
  for (int trial = 0; trial < 6; ++trial) {
    Matrix full = rng.normal_matrix(6, 6);
    if (numeric_rank(full) < 6) continue;
    std::vector<Matrix> bases = {full.leftCols(1), full.leftCols(2),
                                 full.leftCols(4), full.leftCols(6)};
    auto chain = make_chain(ambient, bases);
    attach_default_steps(chain);
    // Replace one step with a random (non-orthogonal) choice of kernel.
    const Index i = static_cast<Index>(rng.below(3));
    auto ctx = chain.context(i + 1);
    const Matrix target = chain.lower_in_upper(i);
    for (;;) {
      Matrix kernel = rng.normal_matrix(ctx.dim(), ctx.dim() - target.cols());
      Matrix both(ctx.dim(), ctx.dim());
      both << target, kernel;
      if (numeric_rank(both) < ctx.dim()) continue;
      auto p = make_projection(ctx, target, kernel);
      attach_step(chain, i, p.map.a);
      break;
    }
    auto table = composition_table(chain);
    for (const auto& e : table.entries) CHECK(e.value >= 1.0 - 1e-9);
  }
}

TEST_CASE("extending a chain preserves existing table entries") {
  auto ambient = NormedSpace::lp(8, kInfExponent);
  Matrix full = skewed_basis(8, 0.9);
  auto chain3 = suffix_chain(ambient, full, 3);
  auto chain4 = suffix_chain(ambient, full, 4);
  attach_default_steps(chain3);
  attach_default_steps(chain4);
  auto t3 = composition_table(chain3);
  auto t4 = composition_table(chain4);
  for (const auto& e : t3.entries) {
    bool found = false;
    for (const auto& f : t4.entries) {
      if (f.k == e.k && f.l == e.l) {
        CHECK(f.value == doctest::Approx(e.value).epsilon(1e-12));
        found = true;
      }
    }
    CHECK(found);
  }
  CHECK(t4.sup >= t3.sup - 1e-12);
}

TEST_CASE("skewed chain blows up strictly with length under default steps") {
  auto ambient = NormedSpace::lp(8, kInfExponent);
  Matrix full = skewed_basis(8, 0.9);
  std::vector<double> sups;
  for (Index levels = 2; levels <= 8; ++levels) {
    auto chain = suffix_chain(ambient, full, levels);
    attach_default_steps(chain);
    sups.push_back(composition_table(chain).sup);
  }
  for (size_t i = 1; i < sups.size(); ++i) CHECK(sups[i] > sups[i - 1] + 1e-9);
  CHECK(sups.back() / sups.front() >= 1.05);
  // Frozen endpoints of the growth curve.
  CHECK(sups.front() == doctest::Approx(1.001666741923).epsilon(1e-9));
  CHECK(sups.back() == doctest::Approx(1.794602698651).epsilon(1e-9));
}

TEST_CASE("attach_step rejects coefficients that are not projections") {
  auto ambient = NormedSpace::lp(3, kInfExponent);
  Matrix full = Matrix::Identity(3, 3);
  auto chain = prefix_chain(ambient, full, 3);
  attach_default_steps(chain);
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 1) = 0.3;
  bad(1, 0) = 0.2;  // invertible, not idempotent
  CHECK_THROWS_AS(attach_step(chain, 1, bad), InvalidArgument);
}

TEST_CASE("blow-up search leaves coordinate chains at one") {
  auto ambient = NormedSpace::lp(5, kInfExponent);
  auto chain = prefix_chain(ambient, Matrix::Identity(5, 5), 5);
  auto r = minimize_chain_blowup(chain, 3, 1, 10);
  CHECK(r.initial_sup == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.final_sup == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("blow-up search finds the cheap projection onto a slanted line") {
  auto ambient = NormedSpace::lp(2, kInfExponent);
  Matrix lower(2, 1);
  lower << 1, 0.5;
  auto chain = make_chain(ambient, {lower, Matrix::Identity(2, 2)});
  auto r = minimize_chain_blowup(chain, 6, 1, 40);
  CHECK(r.initial_sup == doctest::Approx(1.2).epsilon(1e-9));
  // The coordinate functional x -> x_1 gives a projection of norm exactly 1.
  CHECK(r.final_sup <= 1.05);
  CHECK(r.final_sup >= 1.0 - 1e-9);
}

TEST_CASE("blow-up search improves the skewed chain") {
  auto ambient = NormedSpace::lp(8, kInfExponent);
  Matrix full = skewed_basis(8, 0.9);
  auto chain = suffix_chain(ambient, full, 4);
  auto r = minimize_chain_blowup(chain, 3, 1, 20);
  CHECK(r.final_sup < r.initial_sup - 1e-3);
  // The optimized steps still certify: rebuild the table from the chain.
  auto table = composition_table(r.chain);
  CHECK(table.sup == doctest::Approx(r.final_sup).epsilon(1e-9));
  for (const auto& e : table.entries) CHECK(e.value >= 1.0 - 1e-9);
}
