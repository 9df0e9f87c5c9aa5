#include "projlab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace projlab {

NormContext Chain::context(Index i) const {
  if (i < 0 || i >= levels()) throw InvalidArgument("chain level out of range");
  NormContext ctx(ambient, bases[static_cast<size_t>(i)]);
  ctx.label = "level " + std::to_string(i + 1);
  return ctx;
}

Matrix Chain::lower_in_upper(Index i) const {
  if (i < 0 || i + 1 >= levels()) throw InvalidArgument("chain level out of range");
  return least_squares(bases[static_cast<size_t>(i) + 1],
                       bases[static_cast<size_t>(i)]);
}

Chain make_chain(NormedSpace ambient, std::vector<Matrix> bases) {
  if (bases.empty()) throw InvalidArgument("chain needs at least one level");
  Chain c{std::move(ambient), std::move(bases), {}};
  Index prev = 0;
  for (size_t i = 0; i < c.bases.size(); ++i) {
    const Matrix& b = c.bases[i];
    if (b.rows() != c.ambient.dim())
      throw DimensionMismatch("chain basis rows must match ambient dimension");
    if (b.cols() <= prev)
      throw InvalidArgument("chain dimensions must strictly increase");
    if (numeric_rank(b) != b.cols())
      throw InvalidArgument("chain basis is not linearly independent");
    if (i > 0) {
      for (Index j = 0; j < c.bases[i - 1].cols(); ++j)
        if (span_distance(b, c.bases[i - 1].col(j)) > 1e-10)
          throw InvalidArgument("chain spans are not nested");
    }
    prev = b.cols();
  }
  return c;
}

void attach_default_steps(Chain& chain, double tol) {
  chain.steps.clear();
  for (Index i = 0; i + 1 < chain.levels(); ++i)
    chain.steps.push_back(
        orthogonal_projection(chain.context(i + 1), chain.lower_in_upper(i), tol));
}

void attach_step(Chain& chain, Index i, Matrix coeff, double tol) {
  if (static_cast<Index>(chain.steps.size()) != chain.levels() - 1)
    throw InvalidArgument("attach_step requires a fully populated step list");
  if (i < 0 || i + 1 >= chain.levels())
    throw InvalidArgument("chain level out of range");
  chain.steps[static_cast<size_t>(i)] = certify_projection(
      chain.context(i + 1), std::move(coeff), chain.lower_in_upper(i), tol);
}

namespace {

// Step i as a map from level-(i+1) coordinates to level-i coordinates.
Matrix step_down_coords(const Chain& chain, Index i) {
  const Matrix c = chain.lower_in_upper(i);
  return least_squares(c, chain.steps[static_cast<size_t>(i)].map.a);
}

}  // namespace

CompositionTable composition_table(const Chain& chain, const NormOptions& opts) {
  const Index l_count = chain.levels();
  if (!chain.has_steps() ||
      static_cast<Index>(chain.steps.size()) != l_count - 1)
    throw InvalidArgument("composition_table requires chain steps");
  std::vector<Matrix> down;
  for (Index i = 0; i + 1 < l_count; ++i) down.push_back(step_down_coords(chain, i));

  CompositionTable table;
  table.sup = 0.0;
  for (Index k = 0; k + 1 < l_count; ++k) {
    Matrix acc = down[static_cast<size_t>(k)];
    for (Index l = k; l + 1 < l_count; ++l) {
      if (l > k) acc = acc * down[static_cast<size_t>(l)];
      auto norm = operator_norm(
          LinearMap(chain.context(l + 1), chain.context(k), acc), opts);
      TableEntry e;
      e.k = k + 1;
      e.l = l + 1;
      e.value = norm.value;
      e.certificate = norm.certificate;
      table.entries.push_back(e);
      if (norm.value > table.sup) {
        table.sup = norm.value;
        table.arg_k = e.k;
        table.arg_l = e.l;
      }
    }
  }
  return table;
}

namespace {

struct EntryEval {
  double value = 0.0;
  Index k = 0, l = 0;  // 0-based level indices
  Vector witness;
};

}  // namespace

BlowupSearchResult minimize_chain_blowup(const Chain& chain, Index sweeps,
                                         std::uint64_t seed,
                                         Index inner_iterations,
                                         const NormOptions& opts) {
  BlowupSearchResult out{chain, 0.0, 0.0, false};
  Chain& work = out.chain;
  const Index levels = work.levels();
  if (static_cast<Index>(work.steps.size()) != levels - 1)
    attach_default_steps(work);
  out.initial_sup = composition_table(work, opts).sup;
  double current_sup = out.initial_sup;
  Rng rng(seed);

  auto entry_norm = [&](const Matrix& m, Index k, Index l) {
    return operator_norm(LinearMap(work.context(l + 1), work.context(k), m), opts);
  };

  bool improved_on_last_sweep = false;
  for (Index sweep = 0; sweep < sweeps; ++sweep) {
    bool sweep_improved = false;
    for (Index n = 0; n + 1 < levels; ++n) {
      std::vector<Matrix> down;
      for (Index i = 0; i + 1 < levels; ++i)
        down.push_back(step_down_coords(work, i));

      // Max over table entries that do not involve step n.
      double other_max = 0.0;
      for (Index k = 0; k + 1 < levels; ++k) {
        Matrix acc = down[static_cast<size_t>(k)];
        for (Index l = k; l + 1 < levels; ++l) {
          if (l > k) acc = acc * down[static_cast<size_t>(l)];
          if (k <= n && n <= l) continue;
          other_max = std::max(other_max, entry_norm(acc, k, l).value);
        }
      }

      // Affine family of the down-coordinate step: G C = I.
      const Matrix c = work.lower_in_upper(n);
      const Matrix kern = kernel_basis(c.transpose());
      if (kern.cols() == 0) continue;  // step is forced (full-rank target)
      const Matrix g0 = down[static_cast<size_t>(n)];
      Matrix theta = 1e-8 * rng.normal_matrix(g0.rows(), kern.cols());

      // Pre/post products for the involved entries.
      struct Involved {
        Index k, l;
        Matrix pre, post;
      };
      std::vector<Involved> involved;
      for (Index k = 0; k <= n; ++k) {
        const Index rk = down[static_cast<size_t>(k)].rows();
        Matrix pre = Matrix::Identity(rk, rk);
        for (Index i = k; i < n; ++i) pre = pre * down[static_cast<size_t>(i)];
        for (Index l = n; l + 1 < levels; ++l) {
          Matrix post = Matrix::Identity(g0.cols(), g0.cols());
          for (Index i = n + 1; i <= l; ++i) post = post * down[static_cast<size_t>(i)];
          involved.push_back({k, l, pre, post});
        }
      }

      auto eval_involved = [&](const Matrix& g, EntryEval* worst) {
        double mx = 0.0;
        for (const auto& e : involved) {
          Matrix m = e.pre * g * e.post;
          auto norm = entry_norm(m, e.k, e.l);
          if (norm.value > mx) {
            mx = norm.value;
            if (worst) {
              worst->value = norm.value;
              worst->k = e.k;
              worst->l = e.l;
              worst->witness = norm.witness;
            }
          }
        }
        return mx;
      };

      double best_inner = eval_involved(g0 + theta * kern.transpose(), nullptr);
      Matrix best_theta = theta;
      for (Index it = 1; it <= inner_iterations; ++it) {
        const Matrix g = g0 + theta * kern.transpose();
        EntryEval worst;
        const double val = eval_involved(g, &worst);
        if (val < best_inner) {
          best_inner = val;
          best_theta = theta;
        }
        if (val <= other_max || worst.witness.size() == 0) break;
        // Subgradient of the worst entry at its attaining pair.
        const auto& e = *std::find_if(involved.begin(), involved.end(),
                                      [&](const Involved& iv) {
                                        return iv.k == worst.k && iv.l == worst.l;
                                      });
        Vector img = e.pre * g * (e.post * worst.witness);
        Vector f = norm_subgradient(work.context(e.k), img);
        Matrix grad = (e.pre.transpose() * f) *
                      (kern.transpose() * (e.post * worst.witness)).transpose();
        const double gn2 = grad.squaredNorm();
        if (gn2 <= 1e-18) break;
        const double target = std::max(other_max, 0.9 * val);
        const double eta = std::max(val - target, 1e-6 * val) / gn2;
        theta -= eta * grad;
      }

      const double cand_sup = std::max(other_max, best_inner);
      if (cand_sup < current_sup - 1e-12) {
        const Matrix g = g0 + best_theta * kern.transpose();
        attach_step(work, n, Matrix(c * g));
        current_sup = cand_sup;
        sweep_improved = true;
      }
    }
    improved_on_last_sweep = sweep_improved;
    if (!sweep_improved) break;
  }
  out.budget_exhausted = improved_on_last_sweep;
  out.final_sup = composition_table(work, opts).sup;
  return out;
}

}  // namespace projlab
