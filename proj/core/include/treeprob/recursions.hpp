#pragma once

#include <functional>

#include "treeprob/distribution.hpp"
#include "treeprob/tree.hpp"

namespace treeprob {

/// Per-node evaluation contract; must be deterministic and side-effect free.
using NodeFunction = std::function<double(const NodeId&)>;

/// Sum_{tau in T} prod_{v in I_tau} G(v) * prod_{v' in L_tau} H(v'),
/// computed as the generic tree fold in O(k^{d_max+1}) node visits.
double tree_sum(const BaseShape& shape, const NodeFunction& G, const NodeFunction& H);

/// E[f(T)] for f(tau) = prod_{I_tau} g * prod_{L_tau} h.
double expect_product(const TreeDistribution& d, const NodeFunction& g,
                      const NodeFunction& h);

/// E[f(T)] for f(tau) = sum_{I_tau} g + sum_{L_tau} h.
double expect_sum(const TreeDistribution& d, const NodeFunction& g,
                  const NodeFunction& h);

enum class LogBase { Nats, Bits };

/// Shannon entropy H[T] >= 0, with the 0*log 0 = 0 convention.
double entropy(const TreeDistribution& d, LogBase base = LogBase::Nats);

/// KL(d || d2); +infinity when d puts mass where d2 does not.
double kl_divergence(const TreeDistribution& d, const TreeDistribution& d2);

/// max_{tau in T} p(tau), via the max-fold psi.
double tree_max_value(const TreeDistribution& d);

namespace detail {

// The xi recursion of the sum-form expectation, with 0-weight guards so
// infinite g/h values at alpha in {0,1} contribute nothing. No finiteness
// policy; entropy and KL reuse this code path directly.
double xi_fold(const TreeDistribution& d, const NodeFunction& g, const NodeFunction& h);

}  // namespace detail

}  // namespace treeprob
