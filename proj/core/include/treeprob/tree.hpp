#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "treeprob/errors.hpp"

namespace treeprob {

/// Address of a node of the base tree as a child-index path from the root.
/// The empty path is the root.
class NodeId {
public:
  NodeId() = default;
  explicit NodeId(std::vector<std::uint32_t> path) : path_(std::move(path)) {}

  static NodeId root() { return NodeId{}; }

  const std::vector<std::uint32_t>& path() const { return path_; }
  std::size_t depth() const { return path_.size(); }
  bool is_root() const { return path_.empty(); }

  NodeId parent() const;
  NodeId child(std::uint32_t index) const;

  // strict: v > v' iff v.path is a strict prefix of v'.path
  bool is_ancestor_of(const NodeId& other) const;
  bool is_ancestor_or_self_of(const NodeId& other) const;

  auto operator<=>(const NodeId&) const = default;

private:
  std::vector<std::uint32_t> path_;
};

/// Geometry of the perfect k-ary base tree of depth d_max.
class BaseShape {
public:
  BaseShape(std::uint32_t k, std::uint32_t d_max);

  std::uint32_t k() const { return k_; }
  std::uint32_t d_max() const { return d_max_; }

  // total number of nodes, (k^{d_max+1}-1)/(k-1)
  std::uint64_t node_count() const { return node_count_; }

  // index of the first node at a given depth in breadth-first order
  std::uint64_t level_offset(std::uint32_t depth) const;

  // dense breadth-first index, usable for array-backed per-node storage
  std::uint64_t index_of(const NodeId& v) const;
  NodeId node_at(std::uint64_t index) const;

  bool is_base_leaf(const NodeId& v) const { return v.depth() == d_max_; }
  bool contains(const NodeId& v) const;

  // |T|, saturating at UINT64_MAX; recursion t(0)=1, t(d+1)=t(d)^k+1
  std::uint64_t subtree_count() const;

  bool operator==(const BaseShape& other) const {
    return k_ == other.k_ && d_max_ == other.d_max_;
  }

private:
  std::uint32_t k_;
  std::uint32_t d_max_;
  std::uint64_t node_count_;
};

NodeId parent(const NodeId& v);
std::vector<NodeId> children(const NodeId& v, const BaseShape& shape);

/// One realized full rooted subtree, represented by its inner-node set.
/// An empty inner set is the root-only tree.
class FullSubtree {
public:
  FullSubtree(BaseShape shape, std::vector<NodeId> inner_nodes);

  const BaseShape& shape() const { return shape_; }
  const std::vector<NodeId>& inner_nodes() const { return inner_; }  // sorted

  bool is_inner(const NodeId& v) const;
  bool contains(const NodeId& v) const;  // v in V_tau
  bool is_leaf(const NodeId& v) const { return contains(v) && !is_inner(v); }

  // children of inner nodes that are not themselves inner, or {root}
  std::vector<NodeId> leaves() const;

  bool operator==(const FullSubtree& other) const {
    return shape_ == other.shape_ && inner_ == other.inner_;
  }

private:
  BaseShape shape_;
  std::vector<NodeId> inner_;
};

struct ValidationResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

ValidationResult validate_subtree(const FullSubtree& t);

inline constexpr std::uint64_t kDefaultSubtreeCap = 1'000'000;

/// Visits every full rooted subtree exactly once, in a deterministic order.
/// Throws CapExceededError if |T| > cap.
void for_each_subtree(const BaseShape& shape,
                      const std::function<void(const FullSubtree&)>& fn,
                      std::uint64_t cap = kDefaultSubtreeCap);

/// All of T, sorted lexicographically on the sorted inner-node sets.
std::vector<FullSubtree> enumerate_subtrees(const BaseShape& shape,
                                            std::uint64_t cap = kDefaultSubtreeCap);

}  // namespace treeprob
