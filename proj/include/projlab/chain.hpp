// Increasing chains of subspaces, composition-norm tables along their
// projection steps, and a search for steps with small composition blow-up.
#pragma once

#include "projlab/projection.hpp"

namespace projlab {

struct Chain {
  NormedSpace ambient;
  // bases[i]: ambient.dim() x dim_i with strictly increasing nested spans.
  std::vector<Matrix> bases;
  // steps[i]: projection of context(i+1) onto the span of bases[i] (image
  // given in level-(i+1) coordinates). Populated by attach_* helpers.
  std::vector<Projection> steps;

  Index levels() const { return static_cast<Index>(bases.size()); }
  bool has_steps() const { return !steps.empty(); }
  NormContext context(Index i) const;
  // Coordinates of bases[i] inside bases[i+1].
  Matrix lower_in_upper(Index i) const;
};

// Verifies nesting (each basis lies in the span of the next within 1e-10)
// and increasing dimensions.
Chain make_chain(NormedSpace ambient, std::vector<Matrix> bases);

// Steps projecting along the ambient-Euclidean-orthogonal complement.
void attach_default_steps(Chain& chain, double tol = 1e-9);

// Attach a caller-supplied step at level i (coefficients are an endomorphism
// of context(i+1)); certified before storing.
void attach_step(Chain& chain, Index i, Matrix coeff, double tol = 1e-9);

struct TableEntry {
  Index k = 0;  // 1-based, k <= l <= levels-1
  Index l = 0;
  double value = 0.0;
  NormCertificate certificate;
};

struct CompositionTable {
  std::vector<TableEntry> entries;
  double sup = 0.0;
  Index arg_k = 0;
  Index arg_l = 0;
};

// M(k, l) = norm of steps[k] o ... o steps[l] as a map from level l+1 with
// its induced norm onto level k (1-based labels in the result).
CompositionTable composition_table(const Chain& chain,
                                   const NormOptions& opts = {});

struct BlowupSearchResult {
  Chain chain;  // optimized steps attached
  double initial_sup = 0.0;  // orthogonal-default starting point
  double final_sup = 0.0;
  bool budget_exhausted = false;  // still improving when sweeps ran out
};

// Cyclic coordinate descent over the steps: each visit re-optimizes one
// step over its affine family (all projections onto the same image) by
// projected subgradient on the current worst table entry, accepting only
// strict improvements of the sup. Deterministic for a fixed seed.
BlowupSearchResult minimize_chain_blowup(const Chain& chain, Index sweeps = 50,
                                         std::uint64_t seed = 1,
                                         Index inner_iterations = 30,
                                         const NormOptions& opts = {});

}  // namespace projlab
