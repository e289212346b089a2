#include "treeprob/seqmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace treeprob {

NodeId context_path(std::span<const Symbol> history, std::uint32_t d_max,
                    std::uint32_t alphabet_size, Symbol pad) {
  if (pad >= alphabet_size)
    throw std::invalid_argument("pad symbol outside alphabet");
  std::vector<std::uint32_t> path(d_max, pad);
  const std::size_t n = history.size();
  for (std::uint32_t i = 0; i < d_max && i < n; ++i) {
    const Symbol s = history[n - 1 - i];
    if (s >= alphabet_size)
      throw std::invalid_argument("symbol outside alphabet: " + std::to_string(s));
    path[i] = s;  // most recent symbol first
  }
  return NodeId{std::move(path)};
}

double kt_predictive(const std::vector<std::uint64_t>& counts, Symbol next_symbol,
                     std::uint32_t alphabet_size) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  const double c = next_symbol < counts.size()
                       ? static_cast<double>(counts[next_symbol])
                       : 0.0;
  return (c + 0.5) / (static_cast<double>(total) + 0.5 * alphabet_size);
}

ContextTreeModel::ContextTreeModel(BaseShape shape, double inner_alpha)
    : dist_(TreeDistribution::constant(shape, inner_alpha)) {
  if (shape.k() < 2)
    throw std::invalid_argument("alphabet size must be >= 2");
}

ContextTreeModel::ContextTreeModel(TreeDistribution dist) : dist_(std::move(dist)) {
  if (dist_.shape().k() < 2)
    throw std::invalid_argument("alphabet size must be >= 2");
}

const std::vector<std::uint64_t>& ContextTreeModel::counts_at(const NodeId& v) const {
  static const std::vector<std::uint64_t> empty;
  auto it = counts_.find(dist_.shape().index_of(v));
  return it == counts_.end() ? empty : it->second;
}

double ContextTreeModel::process_symbol(Symbol x) {
  const BaseShape& shape = dist_.shape();
  if (x >= shape.k())
    throw std::invalid_argument("symbol outside alphabet: " + std::to_string(x));

  const NodeId v_end = context_path(history_, shape.d_max(), shape.k());
  PathLikelihoodSpec spec{
      v_end,
      [&](const NodeId& v) { return kt_predictive(counts_at(v), x, shape.k()); }};
  const double log_pred = detail::posterior_path_inplace(dist_, spec).log_marginal;

  // bump counts along the realized context path
  NodeId cur = NodeId::root();
  for (std::uint32_t i = 0;; ++i) {
    auto& c = counts_[shape.index_of(cur)];
    if (c.empty()) c.assign(shape.k(), 0);
    ++c[x];
    if (i == shape.d_max()) break;
    cur = cur.child(v_end.path()[i]);
  }

  history_.push_back(x);
  code_length_bits_ -= log_pred / std::numbers::ln2;
  return log_pred;
}

double ContextTreeModel::evaluate_sequence(std::span<const Symbol> xs) {
  double bits = 0.0;
  for (Symbol x : xs) bits -= process_symbol(x) / std::numbers::ln2;
  return bits;
}

double ctw_mixture_probability(const TreeDistribution& prior,
                               std::span<const Symbol> xs, std::uint64_t cap) {
  const BaseShape& shape = prior.shape();
  const std::uint32_t k = shape.k();
  double mixture = 0.0;
  for_each_subtree(
      shape,
      [&](const FullSubtree& t) {
        // per-leaf symbol counts of this tree
        std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> counts;
        double lik = 1.0;
        for (std::size_t n = 0; n < xs.size(); ++n) {
          const NodeId ctx = context_path(xs.subspan(0, n), shape.d_max(), k);
          // descend to the leaf of t lying on the context path
          NodeId leaf = NodeId::root();
          for (std::uint32_t digit : ctx.path()) {
            if (!t.is_inner(leaf)) break;
            leaf = leaf.child(digit);
          }
          auto& c = counts[shape.index_of(leaf)];
          if (c.empty()) c.assign(k, 0);
          lik *= kt_predictive(c, xs[n], k);
          ++c[xs[n]];
        }
        double p = 1.0;
        for (const NodeId& v : t.inner_nodes()) p *= prior.alpha(v);
        for (const NodeId& v : t.leaves()) p *= 1.0 - prior.alpha(v);
        mixture += p * lik;
      },
      cap);
  return mixture;
}

}  // namespace treeprob
