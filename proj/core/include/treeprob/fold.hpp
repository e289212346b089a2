#pragma once

#include <cstdint>
#include <vector>

#include "treeprob/tree.hpp"

namespace treeprob {

// Post-order fold over the whole base tree with an explicit stack, so deep
// chains (k=1, large d_max) cannot overflow the call stack. Each node is
// visited exactly once: O(k^{d_max+1}) evaluations total.
//
//   leaf(const NodeId&) -> Value                          at depth d_max
//   inner(const NodeId&, const std::vector<Value>&) -> Value   elsewhere
template <class Value, class LeafFn, class InnerFn>
Value fold_base_tree(const BaseShape& shape, LeafFn&& leaf, InnerFn&& inner) {
  struct Frame {
    std::vector<Value> child_vals;
    std::uint32_t next_child = 0;
  };

  const std::uint32_t k = shape.k();
  const std::uint32_t d_max = shape.d_max();

  std::vector<Frame> stack;
  stack.emplace_back();
  std::vector<std::uint32_t> path;
  Value result{};

  while (!stack.empty()) {
    const std::size_t depth = stack.size() - 1;
    Frame& f = stack.back();

    if (depth == d_max) {
      Value v = leaf(NodeId{path});
      stack.pop_back();
      if (stack.empty()) {
        result = std::move(v);
      } else {
        stack.back().child_vals.push_back(std::move(v));
        path.pop_back();
      }
    } else if (f.next_child < k) {
      path.push_back(f.next_child);
      ++f.next_child;
      stack.emplace_back();
      stack.back().child_vals.reserve(k);
    } else {
      Value v = inner(NodeId{path}, f.child_vals);
      stack.pop_back();
      if (stack.empty()) {
        result = std::move(v);
      } else {
        stack.back().child_vals.push_back(std::move(v));
        path.pop_back();
      }
    }
  }
  return result;
}

}  // namespace treeprob
