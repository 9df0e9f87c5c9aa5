// Shared linear-algebra aliases, small helpers, and the deterministic RNG
// used everywhere a seed is taken.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace projlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidArgument : std::runtime_error {
  explicit InvalidArgument(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceFailure : std::runtime_error {
  double best_lower = 0.0;
  double best_upper = 0.0;
  ConvergenceFailure(const std::string& what, double lo, double hi)
      : std::runtime_error(what), best_lower(lo), best_upper(hi) {}
};

// Numeric rank with an absolute singular-value floor relative to the largest.
Index numeric_rank(const Matrix& a, double tol = 1e-10);

// Orthonormal basis (columns) of the column span of `a`.
Matrix orthonormal_columns(const Matrix& a, double tol = 1e-12);

// Orthonormal basis (columns) of the kernel of `a` (null space of a*x = 0).
Matrix kernel_basis(const Matrix& a, double tol = 1e-12);

// Least-squares solve a*x = b (minimum-norm when rank deficient).
Vector least_squares(const Matrix& a, const Vector& b);
Matrix least_squares(const Matrix& a, const Matrix& b);

// Moore-Penrose pseudo-inverse.
Matrix pseudo_inverse(const Matrix& a, double tol = 1e-12);

// Distance of x to the column span of basis (Euclidean).
double span_distance(const Matrix& basis, const Vector& x);

// True when every column of `inner` lies in the span of `outer` within tol.
bool span_contains(const Matrix& outer, const Matrix& inner, double tol = 1e-10);

// Coordinates on the Euclidean-orthogonal complement of span(y): a k x n
// matrix phi with phi * y = 0 and phi * w = identity coordinates for the
// orthonormal complement basis w returned by kernel_basis(y').
Matrix quotient_map(const Matrix& y_basis);

// Deterministic 64-bit RNG. We do not use std::uniform_real_distribution:
// its output is not pinned by the standard and reports must be byte-stable
// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller (deterministic, no cached spare).
  double normal();

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  Vector normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);

  // Derive an independent child stream (for per-instance seeding).
  Rng child(std::uint64_t salt) const;

 private:
  std::uint64_t state_;
};

// All ±1 sign vectors of length n in Gray-code order; f is called with the
// current vector and, after the first call, the index of the flipped entry.
// n is capped by the caller (2^n enumeration).
void for_each_sign_vector(Index n, const std::function<void(const Vector&, Index)>& f);

}  // namespace projlab
