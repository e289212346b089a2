#pragma once

#include <cstdint>
#include <vector>

#include "treeprob/distribution.hpp"
#include "treeprob/tree.hpp"

namespace treeprob {

/// Per-node flag variables and memoized psi values from the MAP search.
/// delta_v = 1 iff expanding v is strictly better than stopping; ties
/// keep delta_v = 0, preferring the shallower tree.
struct FlagAssignment {
  BaseShape shape;
  std::vector<double> psi;          // dense index
  std::vector<std::uint8_t> delta;  // dense index

  double psi_root() const { return psi[0]; }
  bool flag(const NodeId& v) const { return delta[shape.index_of(v)] != 0; }
};

/// Single post-order pass computing psi and delta at every node;
/// psi(root) equals tree_max_value.
FlagAssignment flag_calculation(const TreeDistribution& d);

struct ModeResult {
  FullSubtree tree;
  double value;  // = p(tree) = psi(root)
};

/// The argmax tree, built by backtracking from the root through delta=1 nodes.
ModeResult mode(const TreeDistribution& d);

}  // namespace treeprob
