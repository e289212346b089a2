#include "treeprob/tree.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace treeprob {

namespace {

std::string path_to_debug_string(const NodeId& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.path().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.path()[i]);
  }
  return s + "]";
}

// a*b, saturating at UINT64_MAX
std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    return std::numeric_limits<std::uint64_t>::max();
  return a + b;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r = mul_sat(r, base);
  return r;
}

}  // namespace

NodeId NodeId::parent() const {
  if (is_root()) throw std::invalid_argument("root has no parent");
  std::vector<std::uint32_t> p(path_.begin(), path_.end() - 1);
  return NodeId{std::move(p)};
}

NodeId NodeId::child(std::uint32_t index) const {
  std::vector<std::uint32_t> p = path_;
  p.push_back(index);
  return NodeId{std::move(p)};
}

bool NodeId::is_ancestor_of(const NodeId& other) const {
  return path_.size() < other.path_.size() &&
         std::equal(path_.begin(), path_.end(), other.path_.begin());
}

bool NodeId::is_ancestor_or_self_of(const NodeId& other) const {
  return path_.size() <= other.path_.size() &&
         std::equal(path_.begin(), path_.end(), other.path_.begin());
}

BaseShape::BaseShape(std::uint32_t k, std::uint32_t d_max) : k_(k), d_max_(d_max) {
  if (k < 1) throw std::invalid_argument("branching factor k must be >= 1");
  if (k == 1) {
    node_count_ = static_cast<std::uint64_t>(d_max) + 1;
    return;
  }
  // (k^{d_max+1}-1)/(k-1), rejected on overflow
  std::uint64_t count = 0;
  std::uint64_t level = 1;
  for (std::uint32_t d = 0; d <= d_max; ++d) {
    count = add_sat(count, level);
    if (d < d_max) level = mul_sat(level, k);
    if (count == std::numeric_limits<std::uint64_t>::max() ||
        level == std::numeric_limits<std::uint64_t>::max()) {
      throw std::invalid_argument(
          "base tree node count overflows 64-bit range for k=" + std::to_string(k) +
          ", d_max=" + std::to_string(d_max));
    }
  }
  node_count_ = count;
}

std::uint64_t BaseShape::level_offset(std::uint32_t depth) const {
  if (k_ == 1) return depth;
  // (k^depth - 1) / (k - 1); fits because node_count_ does
  std::uint64_t off = 0;
  std::uint64_t level = 1;
  for (std::uint32_t d = 0; d < depth; ++d) {
    off += level;
    level *= k_;
  }
  return off;
}

std::uint64_t BaseShape::index_of(const NodeId& v) const {
  std::uint64_t within = 0;
  for (std::uint32_t digit : v.path()) within = within * k_ + digit;
  return level_offset(static_cast<std::uint32_t>(v.depth())) + within;
}

NodeId BaseShape::node_at(std::uint64_t index) const {
  if (index >= node_count_) throw std::invalid_argument("node index out of range");
  std::uint32_t depth = 0;
  while (level_offset(depth + 1) <= index && depth < d_max_) ++depth;
  std::uint64_t within = index - level_offset(depth);
  std::vector<std::uint32_t> path(depth);
  for (std::uint32_t i = depth; i-- > 0;) {
    path[i] = static_cast<std::uint32_t>(within % k_);
    within /= k_;
  }
  return NodeId{std::move(path)};
}

bool BaseShape::contains(const NodeId& v) const {
  if (v.depth() > d_max_) return false;
  for (std::uint32_t digit : v.path())
    if (digit >= k_) return false;
  return true;
}

std::uint64_t BaseShape::subtree_count() const {
  std::uint64_t t = 1;
  for (std::uint32_t d = 0; d < d_max_; ++d) t = add_sat(pow_sat(t, k_), 1);
  return t;
}

NodeId parent(const NodeId& v) { return v.parent(); }

std::vector<NodeId> children(const NodeId& v, const BaseShape& shape) {
  if (shape.is_base_leaf(v))
    throw std::invalid_argument("base-tree leaf has no children: " +
                                path_to_debug_string(v));
  std::vector<NodeId> out;
  out.reserve(shape.k());
  for (std::uint32_t i = 0; i < shape.k(); ++i) out.push_back(v.child(i));
  return out;
}

FullSubtree::FullSubtree(BaseShape shape, std::vector<NodeId> inner_nodes)
    : shape_(shape), inner_(std::move(inner_nodes)) {
  std::sort(inner_.begin(), inner_.end());
  inner_.erase(std::unique(inner_.begin(), inner_.end()), inner_.end());
}

bool FullSubtree::is_inner(const NodeId& v) const {
  return std::binary_search(inner_.begin(), inner_.end(), v);
}

bool FullSubtree::contains(const NodeId& v) const {
  if (v.is_root()) return true;
  return is_inner(v.parent());
}

std::vector<NodeId> FullSubtree::leaves() const {
  if (inner_.empty()) return {NodeId::root()};
  std::vector<NodeId> out;
  for (const NodeId& v : inner_) {
    for (std::uint32_t i = 0; i < shape_.k(); ++i) {
      NodeId c = v.child(i);
      if (!is_inner(c)) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidationResult validate_subtree(const FullSubtree& t) {
  const BaseShape& shape = t.shape();
  for (const NodeId& v : t.inner_nodes()) {
    if (!shape.contains(v)) {
      return {false, "node outside base tree: " + path_to_debug_string(v)};
    }
    if (v.depth() >= shape.d_max()) {
      return {false, "inner node at base-leaf depth: " + path_to_debug_string(v)};
    }
    if (!v.is_root() && !t.is_inner(v.parent())) {
      return {false, "not prefix-closed: missing " + path_to_debug_string(v.parent())};
    }
  }
  return {};
}

namespace {

// Enumerates subtrees rooted at `v` by emitting the "v is a leaf" case first,
// then all combinations in which v expands.
void enum_at(const BaseShape& shape, const NodeId& v, std::vector<NodeId>& inner,
             const std::function<void()>& emit);

void enum_children(const BaseShape& shape, const NodeId& v, std::uint32_t i,
                   std::vector<NodeId>& inner, const std::function<void()>& emit) {
  if (i == shape.k()) {
    emit();
    return;
  }
  NodeId c = v.child(i);
  enum_at(shape, c, inner,
          [&] { enum_children(shape, v, i + 1, inner, emit); });
}

void enum_at(const BaseShape& shape, const NodeId& v, std::vector<NodeId>& inner,
             const std::function<void()>& emit) {
  emit();  // v stays a leaf
  if (v.depth() < shape.d_max()) {
    inner.push_back(v);
    enum_children(shape, v, 0, inner, emit);
    inner.pop_back();
  }
}

}  // namespace

void for_each_subtree(const BaseShape& shape,
                      const std::function<void(const FullSubtree&)>& fn,
                      std::uint64_t cap) {
  const std::uint64_t total = shape.subtree_count();
  if (total > cap) {
    throw CapExceededError("|T| = " + std::to_string(total) +
                           " exceeds the enumeration cap " + std::to_string(cap));
  }
  std::vector<NodeId> inner;
  enum_at(shape, NodeId::root(), inner,
          [&] { fn(FullSubtree(shape, inner)); });
}

std::vector<FullSubtree> enumerate_subtrees(const BaseShape& shape, std::uint64_t cap) {
  std::vector<FullSubtree> out;
  for_each_subtree(shape, [&](const FullSubtree& t) { out.push_back(t); }, cap);
  std::sort(out.begin(), out.end(), [](const FullSubtree& a, const FullSubtree& b) {
    return a.inner_nodes() < b.inner_nodes();
  });
  return out;
}

}  // namespace treeprob
