#include "treeprob/mode.hpp"

#include "treeprob/fold.hpp"

namespace treeprob {

FlagAssignment flag_calculation(const TreeDistribution& d) {
  const BaseShape& shape = d.shape();
  FlagAssignment out{shape, std::vector<double>(shape.node_count(), 0.0),
                     std::vector<std::uint8_t>(shape.node_count(), 0)};
  fold_base_tree<double>(
      shape,
      [&](const NodeId& v) {
        out.psi[shape.index_of(v)] = 1.0;  // 1 - alpha_v with alpha_v = 0
        return 1.0;
      },
      [&](const NodeId& v, const std::vector<double>& child) {
        double prod = 1.0;
        for (double c : child) prod *= c;
        const double a = d.alpha(v);
        const std::uint64_t idx = shape.index_of(v);
        double psi;
        if (1.0 - a < a * prod) {
          out.delta[idx] = 1;
          psi = a * prod;
        } else {
          psi = 1.0 - a;
        }
        out.psi[idx] = psi;
        return psi;
      });
  return out;
}

ModeResult mode(const TreeDistribution& d) {
  const FlagAssignment flags = flag_calculation(d);
  std::vector<NodeId> inner;
  std::vector<NodeId> stack{NodeId::root()};
  while (!stack.empty()) {
    NodeId v = std::move(stack.back());
    stack.pop_back();
    if (!flags.flag(v)) continue;
    for (std::uint32_t i = 0; i < d.shape().k(); ++i) stack.push_back(v.child(i));
    inner.push_back(std::move(v));
  }
  return {FullSubtree(d.shape(), std::move(inner)), flags.psi_root()};
}

}  // namespace treeprob
