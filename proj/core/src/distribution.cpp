#include "treeprob/distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "treeprob/fold.hpp"

namespace treeprob {

namespace {

std::string node_str(const NodeId& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.path().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.path()[i]);
  }
  return s + "]";
}

}  // namespace

TreeDistribution::TreeDistribution(BaseShape shape, std::vector<double> alpha,
                                   LeafAlphaPolicy policy)
    : shape_(shape), alpha_(std::move(alpha)) {
  if (alpha_.size() != shape_.node_count()) {
    throw std::invalid_argument("alpha must assign a value to every node: expected " +
                                std::to_string(shape_.node_count()) + " values, got " +
                                std::to_string(alpha_.size()));
  }
  const std::uint64_t leaf_offset = shape_.level_offset(shape_.d_max());
  for (std::uint64_t i = 0; i < alpha_.size(); ++i) {
    double a = alpha_[i];
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("alpha out of [0,1] at node " +
                                  node_str(shape_.node_at(i)));
    }
    if (i >= leaf_offset && a != 0.0) {
      if (policy == LeafAlphaPolicy::Strict) {
        throw std::invalid_argument("alpha must be 0 at base-leaf node " +
                                    node_str(shape_.node_at(i)));
      }
      alpha_[i] = 0.0;
    }
  }
}

TreeDistribution TreeDistribution::constant(const BaseShape& shape, double inner_alpha) {
  std::vector<double> alpha(shape.node_count(), inner_alpha);
  for (std::uint64_t i = shape.level_offset(shape.d_max()); i < alpha.size(); ++i)
    alpha[i] = 0.0;
  return TreeDistribution(shape, std::move(alpha));
}

void TreeDistribution::set_alpha(const NodeId& v, double value) {
  set_alpha_at(shape_.index_of(v), value);
}

void TreeDistribution::set_alpha_at(std::uint64_t index, double value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument("alpha out of [0,1]");
  if (index >= shape_.level_offset(shape_.d_max()) && value != 0.0)
    throw std::invalid_argument("alpha must be 0 at base-leaf nodes");
  alpha_[index] = value;
}

double TreeDistribution::prob(const FullSubtree& t) const {
  if (!(t.shape() == shape_))
    throw std::invalid_argument("subtree shape does not match distribution shape");
  if (auto res = validate_subtree(t); !res)
    throw std::invalid_argument("invalid subtree: " + res.message);

  const std::vector<NodeId> leaves = t.leaves();
  // log-space for long products; Definition-1 factors shrink geometrically
  if (t.inner_nodes().size() + leaves.size() > 64) {
    double log_p = 0.0;
    for (const NodeId& v : t.inner_nodes()) log_p += std::log(alpha(v));
    for (const NodeId& v : leaves) log_p += std::log1p(-alpha(v));
    return std::exp(log_p);
  }
  double p = 1.0;
  for (const NodeId& v : t.inner_nodes()) p *= alpha(v);
  for (const NodeId& v : leaves) p *= 1.0 - alpha(v);
  return p;
}

double TreeDistribution::total_mass() const {
  return fold_base_tree<double>(
      shape_,
      [&](const NodeId& v) { return 1.0 - alpha(v); },
      [&](const NodeId& v, const std::vector<double>& child) {
        double prod = 1.0;
        for (double c : child) prod *= c;
        const double a = alpha(v);
        return (1.0 - a) + a * prod;
      });
}

NodeEventProbs TreeDistribution::node_event_probs(const NodeId& v) const {
  if (!shape_.contains(v))
    throw std::invalid_argument("node outside base tree: " + node_str(v));
  double anc = 1.0;  // empty ancestor product at the root
  NodeId cur = NodeId::root();
  for (std::uint32_t digit : v.path()) {
    anc *= alpha(cur);
    cur = cur.child(digit);
  }
  const double a = alpha(v);
  return {anc, a * anc, (1.0 - a) * anc};
}

double TreeDistribution::conditional_expand_prob(const NodeId& v) const {
  if (node_event_probs(v).in_tree == 0.0)
    throw std::domain_error("conditional expansion probability undefined: Pr{v in V_T} = 0 at " +
                            node_str(v));
  return alpha(v);
}

FullSubtree TreeDistribution::sample(std::mt19937_64& rng) const {
  std::vector<NodeId> inner;
  std::vector<NodeId> stack{NodeId::root()};
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (!stack.empty()) {
    NodeId v = std::move(stack.back());
    stack.pop_back();
    if (shape_.is_base_leaf(v)) continue;
    if (unif(rng) < alpha(v)) {
      for (std::uint32_t i = 0; i < shape_.k(); ++i) stack.push_back(v.child(i));
      inner.push_back(std::move(v));
    }
  }
  return FullSubtree(shape_, std::move(inner));
}

}  // namespace treeprob
