// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "treeprob/bayes.hpp"
#include "treeprob/distribution.hpp"
#include "treeprob/mode.hpp"
#include "treeprob/oracle.hpp"
#include "treeprob/recursions.hpp"
#include "treeprob/seqmodel.hpp"
#include "treeprob/tree.hpp"

using namespace treeprob;

namespace {

int failures = 0;

struct Criterion {
  int id;
  const char* name;
  bool ok = true;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void expect(bool cond, const char* what) {
    if (!cond) {
      ok = false;
      std::printf("  criterion %d: FAILED check: %s\n", id, what);
    }
  }
  ~Criterion() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, name, secs);
    if (!ok) ++failures;
  }
};

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kShapes{
    {1, 5}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}};

NodeFunction random_fn(const BaseShape& shape, std::mt19937_64& rng, double lo,
                       double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  auto values = std::make_shared<std::vector<double>>(shape.node_count());
  for (double& x : *values) x = unif(rng);
  return [values, shape](const NodeId& v) { return (*values)[shape.index_of(v)]; };
}

void criterion1() {
  Criterion c{1, "worked-instance reproduction"};
  auto d = fixtures::fig2();
  auto rep = oracle_summary(d);
  c.expect(rep.rows.size() == 5, "|T| = 5");

  std::map<std::vector<NodeId>, double> expected{
      {{}, 0.3},
      {{NodeId::root()}, 0.084},
      {{NodeId::root(), fixtures::node({0})}, 0.056},
      {{NodeId::root(), fixtures::node({1})}, 0.336},
      {{NodeId::root(), fixtures::node({0}), fixtures::node({1})}, 0.224}};
  double sum = 0.0;
  for (const auto& row : rep.rows) {
    auto it = expected.find(row.tree.inner_nodes());
    c.expect(it != expected.end(), "enumerated tree is one of the five");
    if (it != expected.end())
      c.expect(std::abs(row.prob - it->second) < 1e-12, "tree probability");
    sum += row.prob;
  }
  c.expect(std::abs(sum - 1.0) < 1e-12, "probabilities sum to 1");

  c.expect(std::abs(d.node_event_probs(fixtures::node({0, 1})).in_tree - 0.28) < 1e-15,
           "Pr{v01 in V_T} = 0.28");
  c.expect(std::abs(d.node_event_probs(fixtures::node({1})).inner - 0.56) < 1e-15,
           "Pr{v1 in I_T} = 0.56");
  c.expect(std::abs(d.node_event_probs(fixtures::node({0})).leaf - 0.42) < 1e-15,
           "Pr{v0 in L_T} = 0.42");
}

void criterion2() {
  Criterion c{2, "normalization on 200 random instances"};
  std::mt19937_64 rng(1002);
  for (int rep = 0; rep < 200; ++rep) {
    auto [k, dm] = kShapes[rep % kShapes.size()];
    auto d = fixtures::random_distribution(BaseShape(k, dm), rng);
    const double mass = d.total_mass();
    c.expect(std::abs(mass - 1.0) < 1e-12, "total_mass = 1");
    c.expect(std::abs(mass - oracle_summary(d).sum) < 1e-12, "matches oracle sum");
  }
}

void criterion3() {
  Criterion c{3, "mode matches the enumerated argmax"};
  std::mt19937_64 rng(1002);  // same instances as criterion 2
  for (int rep = 0; rep < 200; ++rep) {
    auto [k, dm] = kShapes[rep % kShapes.size()];
    auto d = fixtures::random_distribution(BaseShape(k, dm), rng);
    auto [tree, value] = mode(d);
    auto orep = oracle_summary(d);
    c.expect(std::abs(value - orep.max) < 1e-12, "mode value = oracle max");
    c.expect(std::abs(d.prob(tree) - orep.max) < 1e-12, "mode tree attains the max");
  }
  auto d = fixtures::fig2();
  auto [tree, value] = mode(d);
  c.expect(tree.inner_nodes() ==
               std::vector<NodeId>{NodeId::root(), fixtures::node({1})},
           "worked-instance mode tree");
  c.expect(std::abs(value - 0.336) < 1e-15, "worked-instance mode value 0.336");
}

void criterion4() {
  Criterion c{4, "expectations match the oracle"};
  std::mt19937_64 rng(1004);
  for (const auto& [k, dm] : kShapes) {
    BaseShape shape(k, dm);
    for (int rep = 0; rep < 100; ++rep) {
      auto d = fixtures::random_distribution(shape, rng);
      auto g = random_fn(shape, rng, -1.5, 1.5);
      auto h = random_fn(shape, rng, -1.5, 1.5);

      const double prod = expect_product(d, g, h);
      const double prod_oracle = oracle_expectation(d, [&](const FullSubtree& t) {
        double f = 1.0;
        for (const NodeId& v : t.inner_nodes()) f *= g(v);
        for (const NodeId& v : t.leaves()) f *= h(v);
        return f;
      });
      c.expect(std::abs(prod - prod_oracle) <=
                   1e-10 * std::max(1.0, std::abs(prod_oracle)),
               "expect_product vs oracle");

      const double sum = expect_sum(d, g, h);
      const double sum_oracle = oracle_expectation(d, [&](const FullSubtree& t) {
        double f = 0.0;
        for (const NodeId& v : t.inner_nodes()) f += g(v);
        for (const NodeId& v : t.leaves()) f += h(v);
        return f;
      });
      c.expect(std::abs(sum - sum_oracle) <= 1e-10 * std::max(1.0, std::abs(sum_oracle)),
               "expect_sum vs oracle");
    }
  }
  auto d = fixtures::fig2();
  const double inner_count = expect_sum(d, [](const NodeId&) { return 1.0; },
                                        [](const NodeId&) { return 0.0; });
  c.expect(std::abs(inner_count - 1.54) < 1e-12, "E[|I_T|] = 1.54");
}

void criterion5() {
  Criterion c{5, "entropy and KL divergence"};
  std::mt19937_64 rng(1005);
  for (const auto& [k, dm] : kShapes) {
    BaseShape shape(k, dm);
    for (int rep = 0; rep < 15; ++rep) {
      auto d = fixtures::random_distribution(shape, rng);
      c.expect(std::abs(entropy(d) - oracle_summary(d).entropy) < 1e-12,
               "entropy vs oracle");
      c.expect(kl_divergence(d, d) == 0.0, "KL(d,d) = 0");

      auto d2 = fixtures::random_distribution(shape, rng);
      const double kl = kl_divergence(d, d2);
      c.expect(kl >= 0.0, "Gibbs nonnegativity");
      double oracle = 0.0;
      for (const auto& t : enumerate_subtrees(shape))
        oracle += d.prob(t) * std::log(d.prob(t) / d2.prob(t));
      c.expect(std::abs(kl - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)),
               "KL vs oracle");
    }
  }
}

void criterion6() {
  Criterion c{6, "general posterior matches literal Bayes rule"};
  std::mt19937_64 rng(1006);
  for (auto [k, dm] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {1u, 5u}}) {
    BaseShape shape(k, dm);
    for (int rep = 0; rep < 25; ++rep) {
      auto d = fixtures::random_distribution(shape, rng);
      auto g = random_fn(shape, rng, 0.05, 3.0);
      auto h = random_fn(shape, rng, 0.05, 3.0);
      auto res = posterior_general(d, {g, h});
      auto orep = oracle_posterior(d, [&](const FullSubtree& t) {
        double lik = 1.0;
        for (const NodeId& v : t.inner_nodes()) lik *= g(v);
        for (const NodeId& v : t.leaves()) lik *= h(v);
        return lik;
      });
      c.expect(std::abs(res.marginal() - *orep.marginal) <=
                   1e-10 * std::max(1.0, *orep.marginal),
               "marginal = sum p(x|tau)p(tau)");
      for (const auto& row : orep.rows)
        c.expect(std::abs(res.posterior.prob(row.tree) - *row.posterior) < 1e-10,
                 "per-tree posterior probability");
    }
  }
}

void criterion7() {
  Criterion c{7, "path posterior equals general posterior in O(d_max)"};
  std::mt19937_64 rng(1007);
  for (auto [k, dm] : {std::pair{2u, 2u}, {2u, 4u}, {3u, 3u}}) {
    BaseShape shape(k, dm);
    for (int rep = 0; rep < 20; ++rep) {
      auto d = fixtures::random_distribution(shape, rng);
      // random base-tree leaf
      std::vector<std::uint32_t> path(dm);
      for (auto& digit : path)
        digit = static_cast<std::uint32_t>(rng() % k);
      NodeId v_end{path};
      auto hp = random_fn(shape, rng, 0.05, 3.0);

      auto pres = posterior_path(d, {v_end, hp});
      c.expect(pres.nodes_touched == static_cast<std::size_t>(dm) + 1,
               "node-touch count = d_max + 1");

      auto one = [](const NodeId&) { return 1.0; };
      auto h_full = [&](const NodeId& v) {
        return v.is_ancestor_or_self_of(v_end) ? hp(v) : 1.0;
      };
      auto gres = posterior_general(d, {one, h_full});
      c.expect(std::abs(pres.log_marginal - gres.log_marginal) < 1e-12,
               "marginals agree");
      for (std::uint64_t i = 0; i < shape.node_count(); ++i)
        c.expect(std::abs(pres.posterior.alpha_at(i) - gres.posterior.alpha_at(i)) <
                     1e-12,
                 "parameter-wise agreement");
    }
  }
}

void criterion8() {
  Criterion c{8, "conjugate update increments exactly I_tau and L_tau"};
  std::mt19937_64 rng(1008);
  BaseShape shape(2, 3);
  auto d = fixtures::random_distribution(shape, rng);
  auto prior = BetaHyperparams::uniform(shape);
  for (int rep = 0; rep < 50; ++rep) {
    FullSubtree t = d.sample(rng);
    auto post = beta_posterior(prior, t);
    auto leaves = t.leaves();
    for (std::uint64_t i = 0; i < shape.node_count(); ++i) {
      NodeId v = shape.node_at(i);
      const double db = post.beta_values()[i] - prior.beta_values()[i];
      const double dg = post.gamma_values()[i] - prior.gamma_values()[i];
      c.expect(db == (t.is_inner(v) ? 1.0 : 0.0), "beta increment iff inner");
      const bool is_leaf =
          std::binary_search(leaves.begin(), leaves.end(), v);
      c.expect(dg == (is_leaf ? 1.0 : 0.0), "gamma increment iff leaf");
    }
  }
}

void criterion9() {
  Criterion c{9, "sampling goodness of fit"};
  auto d = fixtures::fig2();
  auto trees = enumerate_subtrees(d.shape());
  std::map<std::vector<NodeId>, int> freq;
  std::mt19937_64 rng(90210);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++freq[d.sample(rng).inner_nodes()];
  double chi2 = 0.0;
  for (const auto& t : trees) {
    const double expected = n * d.prob(t);
    const double observed = freq[t.inner_nodes()];
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  // chi-square critical value, 4 degrees of freedom, significance 0.001
  c.expect(chi2 < 18.467, "chi-square below the 0.001 critical value");
}

void criterion10() {
  Criterion c{10, "sequential code matches the CTW mixture; Markov source compresses"};
  BaseShape shape(2, 2);
  auto prior = TreeDistribution::constant(shape, 0.5);
  for (int pattern = 0; pattern < 256; ++pattern) {
    std::vector<Symbol> xs(8);
    for (int i = 0; i < 8; ++i) xs[i] = static_cast<Symbol>((pattern >> i) & 1);
    ContextTreeModel m(shape, 0.5);
    double log_marginal = 0.0;
    for (Symbol x : xs) log_marginal += m.process_symbol(x);
    const double mixture = ctw_mixture_probability(prior, xs);
    c.expect(std::abs(std::exp(log_marginal) - mixture) <= 1e-10 * mixture,
             "sequential marginal = brute-force mixture");
  }

  // order-1 Markov source with transition flip probability 0.1
  std::mt19937_64 rng(4096);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Symbol> xs;
  Symbol state = 0;
  for (int i = 0; i < 4096; ++i) {
    if (unif(rng) < 0.1) state ^= 1u;
    xs.push_back(state);
  }
  ContextTreeModel m(BaseShape(2, 3), 0.5);
  const double bits = m.evaluate_sequence(xs);
  c.expect(bits / 4096.0 <= 0.57, "<= 0.57 bits/symbol on the Markov(0.9) source");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
