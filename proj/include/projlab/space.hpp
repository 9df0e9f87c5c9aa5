// Finite-dimensional normed spaces with exactly evaluable norms.
//
// Three representations are supported: lp norms (p in [1, inf]), unit balls
// given as the convex hull of a centrally symmetric vertex list, and unit
// balls given as an intersection of halfspaces from a centrally symmetric
// functional list. Vertex and facet lists are stored column-wise.
#pragma once

#include <limits>
#include <optional>
#include <string>

#include "projlab/linalg.hpp"

namespace projlab {

enum class NormKind { lp, polytope_vertices, polytope_facets };

// Sentinel exponent for the max norm.
inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

class NormedSpace {
 public:
  static NormedSpace lp(Index dim, double p, std::string label = "");
  // Columns of `vertices` are the extreme-point candidates of the unit ball.
  static NormedSpace from_ball_vertices(Matrix vertices, std::string label = "");
  // Columns of `facets` are functionals f with ball = {x : f.x <= 1 for all f}.
  static NormedSpace from_ball_facets(Matrix facets, std::string label = "");

  Index dim() const { return dim_; }
  NormKind kind() const { return kind_; }
  double exponent() const;        // lp only
  const Matrix& vertices() const; // polytope_vertices only
  const Matrix& facets() const;   // polytope_facets only
  const std::string& label() const { return label_; }

  double norm(const Vector& x) const;
  // Norm of a functional acting on this space, i.e. the support function of
  // the unit ball.
  double dual_norm(const Vector& f) const;

  bool is_lp(double p) const;

 private:
  NormedSpace() = default;
  void check_polytope_invariants() const;

  Index dim_ = 0;
  NormKind kind_ = NormKind::lp;
  double p_ = 2.0;
  Matrix body_;  // vertices or facets, column-wise
  std::string label_;
};

// Columns +-e_i, the extreme points of the l1 ball.
Matrix cross_polytope_vertices(Index n);

// Vertex <-> facet conversion for centrally symmetric full-dimensional
// polytopes, by enumerating dim-subsets. Only supported for dim <= 6 and
// subset counts below an internal work cap; throws InvalidArgument beyond.
Matrix polytope_vertices_to_facets(const Matrix& vertices);
Matrix polytope_facets_to_vertices(const Matrix& facets);

// Removes columns that are convex combinations of the others (non-extreme
// points of conv of the columns). Used to canonicalize vertex lists.
Matrix drop_non_extreme_columns(const Matrix& points);

struct QuotientDistance {
  double value = 0.0;
  Vector minimizer;  // nearest point of span(y_basis), ambient coordinates
};

// Distance of z to span(y_basis) in the norm of `z_space`: LP for the
// polyhedral kinds, closed form for l2, damped gradient descent for other
// exponents (throws ConvergenceFailure with the best bracket on failure).
QuotientDistance quotient_norm(const NormedSpace& z_space, const Matrix& y_basis,
                               const Vector& z);

}  // namespace projlab
