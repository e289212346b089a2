#pragma once

#include <random>
#include <vector>

#include "treeprob/tree.hpp"

namespace treeprob {

enum class LeafAlphaPolicy {
  Strict,  // nonzero alpha at depth d_max is a constraint error
  Clamp,   // silently stored as 0
};

struct NodeEventProbs {
  double in_tree;  // Pr{v in V_T}
  double inner;    // Pr{v in I_T}
  double leaf;     // Pr{v in L_T}
};

/// The parametric distribution p(tau) over full rooted subtrees:
///   p(tau) = prod_{v in I_tau} alpha_v * prod_{v' in L_tau} (1 - alpha_{v'})
/// with alpha_v = 0 at every base-tree leaf.
class TreeDistribution {
public:
  // alpha is indexed by BaseShape dense index and must cover every node
  TreeDistribution(BaseShape shape, std::vector<double> alpha,
                   LeafAlphaPolicy policy = LeafAlphaPolicy::Strict);

  // every inner base node gets the same alpha, base leaves 0
  static TreeDistribution constant(const BaseShape& shape, double inner_alpha);

  const BaseShape& shape() const { return shape_; }
  double alpha(const NodeId& v) const { return alpha_[shape_.index_of(v)]; }
  double alpha_at(std::uint64_t index) const { return alpha_[index]; }
  const std::vector<double>& alpha_values() const { return alpha_; }

  // validated in-place update; used by sequential posterior machinery
  void set_alpha(const NodeId& v, double value);
  void set_alpha_at(std::uint64_t index, double value);

  double prob(const FullSubtree& t) const;

  // phi(root) of the normalization recursion; mathematically 1, returned
  // for numerical verification
  double total_mass() const;

  NodeEventProbs node_event_probs(const NodeId& v) const;

  // Pr{v in I_T | v in V_T} = alpha_v; errors when Pr{v in V_T} = 0
  double conditional_expand_prob(const NodeId& v) const;

  FullSubtree sample(std::mt19937_64& rng) const;

private:
  BaseShape shape_;
  std::vector<double> alpha_;
};

}  // namespace treeprob
