#include "treeprob/bayes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "treeprob/errors.hpp"
#include "treeprob/fold.hpp"

namespace treeprob {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

std::string node_str(const NodeId& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.path().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.path()[i]);
  }
  return s + "]";
}

double checked_log(double x, const char* what, const NodeId& v) {
  if (!(x >= 0.0))
    throw std::invalid_argument(std::string(what) +
                                " must be nonnegative at node " + node_str(v));
  return std::log(x);
}

}  // namespace

BetaHyperparams::BetaHyperparams(BaseShape shape, std::vector<double> beta,
                                 std::vector<double> gamma)
    : shape_(shape), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (beta_.size() != shape_.node_count() || gamma_.size() != shape_.node_count())
    throw std::invalid_argument("hyperparameters must cover every node");
  for (std::uint64_t i = 0; i < beta_.size(); ++i) {
    if (!(beta_[i] > 0.0) || !(gamma_[i] > 0.0))
      throw std::invalid_argument("Beta hyperparameters must be positive at node " +
                                  node_str(shape_.node_at(i)));
  }
}

BetaHyperparams BetaHyperparams::uniform(const BaseShape& shape, double beta,
                                         double gamma) {
  return BetaHyperparams(shape,
                         std::vector<double>(shape.node_count(), beta),
                         std::vector<double>(shape.node_count(), gamma));
}

BetaHyperparams beta_posterior(const BetaHyperparams& h, const FullSubtree& t) {
  if (!(t.shape() == h.shape()))
    throw std::invalid_argument("subtree shape does not match hyperparameter shape");
  std::vector<double> beta = h.beta_values();
  std::vector<double> gamma = h.gamma_values();
  for (const NodeId& v : t.inner_nodes()) beta[h.shape().index_of(v)] += 1.0;
  for (const NodeId& v : t.leaves()) gamma[h.shape().index_of(v)] += 1.0;
  return BetaHyperparams(h.shape(), std::move(beta), std::move(gamma));
}

double PosteriorResult::marginal() const { return std::exp(log_marginal); }
double PathPosteriorResult::marginal() const { return std::exp(log_marginal); }

PosteriorResult posterior_general(const TreeDistribution& d, const LikelihoodSpec& like) {
  const BaseShape& shape = d.shape();
  std::vector<double> alpha_post(shape.node_count(), 0.0);
  std::vector<NodeId> zero_mass;

  // log q(x|v) bottom-up; alpha_{v|x} from a stable log-sum-exp of the
  // stop and expand branches
  const double log_q_root = fold_base_tree<double>(
      shape,
      [&](const NodeId& v) { return checked_log(like.h(v), "h", v); },
      [&](const NodeId& v, const std::vector<double>& child_log_q) {
        const double a = d.alpha(v);
        double stop = kNegInf;
        if (a < 1.0) stop = std::log1p(-a) + checked_log(like.h(v), "h", v);
        double expand = kNegInf;
        if (a > 0.0) {
          expand = std::log(a) + checked_log(like.g(v), "g", v);
          for (double c : child_log_q) expand += c;
        }
        const double log_q = log_sum_exp(stop, expand);
        const std::uint64_t idx = shape.index_of(v);
        if (log_q == kNegInf) {
          // whole subtree has zero posterior mass; pin alpha and flag
          alpha_post[idx] = 0.0;
          zero_mass.push_back(v);
        } else {
          alpha_post[idx] = std::exp(expand - log_q);
        }
        return log_q;
      });

  if (log_q_root == kNegInf)
    throw ZeroEvidenceError("observation has zero probability under every tree");
  return {TreeDistribution(shape, std::move(alpha_post)), log_q_root,
          std::move(zero_mass)};
}

namespace detail {

PathUpdateStats posterior_path_inplace(TreeDistribution& d,
                                       const PathLikelihoodSpec& like) {
  const BaseShape& shape = d.shape();
  if (!shape.contains(like.v_end) || !shape.is_base_leaf(like.v_end))
    throw std::invalid_argument("v_end must be a base-tree leaf");

  const std::uint32_t depth = shape.d_max();
  // path nodes root..v_end
  std::vector<NodeId> path;
  path.reserve(depth + 1);
  NodeId cur = NodeId::root();
  path.push_back(cur);
  for (std::uint32_t digit : like.v_end.path()) {
    cur = cur.child(digit);
    path.push_back(cur);
  }

  std::size_t touched = 0;
  std::vector<double> log_q(depth + 1);
  log_q[depth] = checked_log(like.h_prime(path[depth]), "h'", path[depth]);
  ++touched;
  std::vector<double> new_alpha(depth);  // for strict ancestors of v_end
  for (std::uint32_t i = depth; i-- > 0;) {
    const double a = d.alpha(path[i]);
    double stop = kNegInf;
    if (a < 1.0) stop = std::log1p(-a) + checked_log(like.h_prime(path[i]), "h'", path[i]);
    double expand = kNegInf;
    if (a > 0.0) expand = std::log(a) + log_q[i + 1];
    log_q[i] = log_sum_exp(stop, expand);
    ++touched;
    new_alpha[i] = log_q[i] == kNegInf ? 0.0 : std::exp(expand - log_q[i]);
  }

  if (log_q[0] == kNegInf)
    throw ZeroEvidenceError("observation has zero probability under every tree");
  for (std::uint32_t i = 0; i < depth; ++i) d.set_alpha(path[i], new_alpha[i]);
  return {log_q[0], touched};
}

}  // namespace detail

PathPosteriorResult posterior_path(const TreeDistribution& d,
                                   const PathLikelihoodSpec& like) {
  TreeDistribution posterior = d;
  auto stats = detail::posterior_path_inplace(posterior, like);
  return {std::move(posterior), stats.log_marginal, stats.nodes_touched};
}

SequentialResult sequential_update(const TreeDistribution& d,
                                   const std::vector<PathLikelihoodSpec>& observations) {
  TreeDistribution posterior = d;
  double total = 0.0;
  for (std::size_t n = 0; n < observations.size(); ++n) {
    try {
      total += detail::posterior_path_inplace(posterior, observations[n]).log_marginal;
    } catch (const ZeroEvidenceError&) {
      throw ZeroEvidenceError("zero evidence at observation " + std::to_string(n));
    }
  }
  return {std::move(posterior), total};
}

}  // namespace treeprob
