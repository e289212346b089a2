#pragma once

#include <random>
#include <vector>

#include "treeprob/distribution.hpp"
#include "treeprob/tree.hpp"

namespace fixtures {

// The worked k=2, d_max=2 instance:
// alpha(root)=0.7, alpha(0)=0.4, alpha(1)=0.8, base leaves 0.
// Tree probabilities: root-only 0.3, depth-1 0.084, {root,0} 0.056,
// {root,1} 0.336 (the mode), full 0.224.
inline treeprob::TreeDistribution fig2() {
  treeprob::BaseShape shape(2, 2);
  std::vector<double> alpha(7, 0.0);
  alpha[0] = 0.7;
  alpha[1] = 0.4;
  alpha[2] = 0.8;
  return treeprob::TreeDistribution(shape, std::move(alpha));
}

inline treeprob::TreeDistribution random_distribution(const treeprob::BaseShape& shape,
                                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> alpha(shape.node_count());
  const std::uint64_t leaf_offset = shape.level_offset(shape.d_max());
  for (std::uint64_t i = 0; i < alpha.size(); ++i)
    alpha[i] = i < leaf_offset ? unif(rng) : 0.0;
  return treeprob::TreeDistribution(shape, std::move(alpha));
}

inline treeprob::NodeId node(std::vector<std::uint32_t> path) {
  return treeprob::NodeId{std::move(path)};
}

}  // namespace fixtures
