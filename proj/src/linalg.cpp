#include "projlab/linalg.hpp"

#include <cmath>

namespace projlab {

Index numeric_rank(const Matrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

Matrix orthonormal_columns(const Matrix& a, double tol) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix kernel_basis(const Matrix& a, double tol) {
  if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(0) > 0.0 && s(i) > tol * s(0)) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

Vector least_squares(const Matrix& a, const Vector& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

Matrix least_squares(const Matrix& a, const Matrix& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

Matrix pseudo_inverse(const Matrix& a, double tol) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(0) > 0.0 && s(i) > tol * s(0)) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double span_distance(const Matrix& basis, const Vector& x) {
  if (basis.cols() == 0) return x.norm();
  Vector c = least_squares(basis, x);
  return (x - basis * c).norm();
}

bool span_contains(const Matrix& outer, const Matrix& inner, double tol) {
  for (Index j = 0; j < inner.cols(); ++j) {
    double scale = std::max(1.0, inner.col(j).norm());
    if (span_distance(outer, inner.col(j)) > tol * scale) return false;
  }
  return true;
}

double Rng::normal() {
  // Box-Muller; draws two uniforms per call.
  double u1 = uniform01(), u2 = uniform01();
  while (u1 <= 1e-300) u1 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

Vector Rng::normal_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Rng Rng::child(std::uint64_t salt) const {
  Rng c(state_ ^ (salt * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
  c.next_u64();
  return c;
}

void for_each_sign_vector(Index n, const std::function<void(const Vector&, Index)>& f) {
  if (n < 0 || n > 30) throw InvalidArgument("sign-vector enumeration out of range");
  Vector v = Vector::Ones(n);
  f(v, -1);
  const std::uint64_t total = 1ull << n;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    std::uint64_t next = i ^ (i >> 1);
    std::uint64_t diff = gray ^ next;
    Index bit = 0;
    while (!((diff >> bit) & 1ull)) ++bit;
    gray = next;
    v(bit) = -v(bit);
    f(v, bit);
  }
}


Matrix quotient_map(const Matrix& y_basis) {
  const Index n = y_basis.rows();
  const Index r = y_basis.cols();
  Matrix w = kernel_basis(y_basis.transpose());
  const Index k = w.cols();
  if (r + k != n) throw InvalidArgument("quotient_map: basis is rank deficient");
  Matrix m(n, n);
  m.leftCols(r) = y_basis;
  m.rightCols(k) = w;
  Matrix inv = m.fullPivLu().inverse();
  return inv.bottomRows(k);
}

}  // namespace projlab
