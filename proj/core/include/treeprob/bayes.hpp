#pragma once

#include <cstdint>
#include <vector>

#include "treeprob/distribution.hpp"
#include "treeprob/recursions.hpp"
#include "treeprob/tree.hpp"

namespace treeprob {

/// Per-node Beta(beta_v, gamma_v) hyperparameters for the conjugate prior
/// on the expansion parameters alpha_v.
class BetaHyperparams {
public:
  BetaHyperparams(BaseShape shape, std::vector<double> beta, std::vector<double> gamma);
  static BetaHyperparams uniform(const BaseShape& shape, double beta = 1.0,
                                 double gamma = 1.0);

  const BaseShape& shape() const { return shape_; }
  double beta(const NodeId& v) const { return beta_[shape_.index_of(v)]; }
  double gamma(const NodeId& v) const { return gamma_[shape_.index_of(v)]; }
  const std::vector<double>& beta_values() const { return beta_; }
  const std::vector<double>& gamma_values() const { return gamma_; }

private:
  BaseShape shape_;
  std::vector<double> beta_;
  std::vector<double> gamma_;
};

/// Conjugate update given an observed tree: beta_v += 1 on inner nodes,
/// gamma_v += 1 on leaves, everything else untouched.
BetaHyperparams beta_posterior(const BetaHyperparams& h, const FullSubtree& t);

/// Likelihood of product form p(x|tau) = prod_{I_tau} g(x,v) * prod_{L_tau} h(x,v),
/// with the observation x already bound into g and h. Neither needs to be
/// a normalized density.
struct LikelihoodSpec {
  NodeFunction g;
  NodeFunction h;
};

/// Path-restricted likelihood: g == 1 everywhere and h differs from 1 only
/// on the root-to-v_end path, where it equals h_prime.
struct PathLikelihoodSpec {
  NodeId v_end;  // must be a base-tree leaf
  NodeFunction h_prime;
};

struct PosteriorResult {
  TreeDistribution posterior;
  double log_marginal;  // log q(x|root) = log p(x)
  // inner nodes whose whole subtree got zero posterior mass; their
  // alpha was pinned to 0
  std::vector<NodeId> zero_mass_nodes;

  double marginal() const;
};

/// Exact posterior over trees under a product-form likelihood,
/// O(k^{d_max+1}) cost. Throws ZeroEvidenceError when p(x) = 0.
PosteriorResult posterior_general(const TreeDistribution& d, const LikelihoodSpec& like);

struct PathPosteriorResult {
  TreeDistribution posterior;
  double log_marginal;
  std::size_t nodes_touched;  // q evaluations; always d_max + 1

  double marginal() const;
};

/// Posterior under a path-restricted likelihood; touches only the
/// d_max + 1 nodes on the root-to-v_end path.
PathPosteriorResult posterior_path(const TreeDistribution& d,
                                   const PathLikelihoodSpec& like);

namespace detail {

struct PathUpdateStats {
  double log_marginal;
  std::size_t nodes_touched;
};

// In-place variant used by sequential processing; updates alpha only on
// strict ancestors of v_end.
PathUpdateStats posterior_path_inplace(TreeDistribution& d,
                                       const PathLikelihoodSpec& like);

}  // namespace detail

struct SequentialResult {
  TreeDistribution posterior;
  double total_log_marginal;
};

/// Left-to-right fold of posterior_path over a stream of observations,
/// each with its own v_end. Zero evidence at step n reports n.
SequentialResult sequential_update(const TreeDistribution& d,
                                   const std::vector<PathLikelihoodSpec>& observations);

}  // namespace treeprob
