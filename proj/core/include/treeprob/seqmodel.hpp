#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "treeprob/bayes.hpp"
#include "treeprob/distribution.hpp"
#include "treeprob/mode.hpp"
#include "treeprob/tree.hpp"

namespace treeprob {

using Symbol = std::uint32_t;

/// Context of the next symbol: the base-tree leaf addressed by the last
/// d_max symbols, most recent first. Short histories are padded.
NodeId context_path(std::span<const Symbol> history, std::uint32_t d_max,
                    std::uint32_t alphabet_size, Symbol pad = 0);

/// Krichevsky-Trofimov predictive (count + 1/2) / (total + alphabet/2).
double kt_predictive(const std::vector<std::uint64_t>& counts, Symbol next_symbol,
                     std::uint32_t alphabet_size);

/// Bayesian context-tree model of a symbol stream: every incoming symbol
/// drives one path-restricted posterior update, with per-node KT
/// estimators supplying the likelihood along the context path.
class ContextTreeModel {
public:
  // alphabet size = shape.k()
  explicit ContextTreeModel(BaseShape shape, double inner_alpha = 0.5);
  explicit ContextTreeModel(TreeDistribution dist);

  std::uint32_t alphabet_size() const { return dist_.shape().k(); }
  const TreeDistribution& posterior() const { return dist_; }
  const std::vector<Symbol>& history() const { return history_; }

  // log predictive probability of x (nats); O(d_max) per symbol
  double process_symbol(Symbol x);

  // folds process_symbol; returns added code length in bits
  double evaluate_sequence(std::span<const Symbol> xs);

  double total_code_length_bits() const { return code_length_bits_; }

  ModeResult map_context_tree() const { return mode(dist_); }

  const std::vector<std::uint64_t>& counts_at(const NodeId& v) const;

private:
  TreeDistribution dist_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> counts_;
  std::vector<Symbol> history_;
  double code_length_bits_ = 0.0;
};

/// Brute-force mixture probability sum_tau p(tau) * p(x^N | tau), where each
/// tree scores the sequence with independent KT estimators at its leaves.
/// Ground truth for the sequential code; never touches the posterior
/// machinery.
double ctw_mixture_probability(const TreeDistribution& prior,
                               std::span<const Symbol> xs,
                               std::uint64_t cap = kDefaultSubtreeCap);

}  // namespace treeprob
