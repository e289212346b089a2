#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "treeprob/distribution.hpp"
#include "treeprob/oracle.hpp"

using namespace treeprob;
using fixtures::fig2;
using fixtures::node;

TEST_CASE("construction validates alpha") {
  BaseShape shape(2, 2);
  CHECK_NOTHROW(fig2());
  CHECK_NOTHROW(TreeDistribution(shape, std::vector<double>(7, 0.0)));

  std::vector<double> bad(7, 0.0);
  bad[0] = 1.2;
  CHECK_THROWS_AS(TreeDistribution(shape, bad), std::invalid_argument);

  std::vector<double> leaf_nonzero(7, 0.0);
  leaf_nonzero[3] = 0.5;
  CHECK_THROWS_AS(TreeDistribution(shape, leaf_nonzero), std::invalid_argument);
  // lenient mode clamps instead
  TreeDistribution clamped(shape, leaf_nonzero, LeafAlphaPolicy::Clamp);
  CHECK(clamped.alpha(node({0, 0})) == 0.0);

  CHECK_THROWS_AS(TreeDistribution(shape, std::vector<double>(6, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("pointwise probabilities on the worked instance") {
  auto d = fig2();
  BaseShape shape = d.shape();
  CHECK(d.prob(FullSubtree(shape, {})) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(d.prob(FullSubtree(shape, {NodeId::root(), node({1})})) ==
        doctest::Approx(0.336).epsilon(1e-14));
  CHECK(d.prob(FullSubtree(shape, {NodeId::root(), node({0}), node({1})})) ==
        doctest::Approx(0.224).epsilon(1e-14));
  CHECK_THROWS_AS(d.prob(FullSubtree(shape, {node({1})})), std::invalid_argument);
}

TEST_CASE("total mass is 1") {
  CHECK(fig2().total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  BaseShape shape(2, 2);
  CHECK(TreeDistribution(shape, std::vector<double>(7, 0.0)).total_mass() == 1.0);

  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto d = fixtures::random_distribution(BaseShape(3, 3), rng);
    CHECK(std::abs(d.total_mass() - 1.0) < 1e-12);
    CHECK(std::abs(oracle_summary(d).sum - 1.0) < 1e-12);
  }
}

TEST_CASE("node event probabilities") {
  auto d = fig2();
  auto p01 = d.node_event_probs(node({0, 1}));
  CHECK(p01.in_tree == doctest::Approx(0.28).epsilon(1e-14));
  auto p1 = d.node_event_probs(node({1}));
  CHECK(p1.inner == doctest::Approx(0.56).epsilon(1e-14));
  auto p0 = d.node_event_probs(node({0}));
  CHECK(p0.leaf == doctest::Approx(0.42).epsilon(1e-14));
  CHECK(d.node_event_probs(NodeId::root()).in_tree == 1.0);
}

TEST_CASE("node events match oracle sums and decompose exactly") {
  std::mt19937_64 rng(11);
  auto d = fixtures::random_distribution(BaseShape(2, 3), rng);
  for (std::uint64_t i = 0; i < d.shape().node_count(); ++i) {
    NodeId v = d.shape().node_at(i);
    auto pr = d.node_event_probs(v);
    CHECK(pr.inner + pr.leaf == pr.in_tree);
    double oracle_in = oracle_expectation(
        d, [&](const FullSubtree& t) { return t.contains(v) ? 1.0 : 0.0; });
    double oracle_inner = oracle_expectation(
        d, [&](const FullSubtree& t) { return t.is_inner(v) ? 1.0 : 0.0; });
    CHECK(std::abs(pr.in_tree - oracle_in) < 1e-12);
    CHECK(std::abs(pr.inner - oracle_inner) < 1e-12);
  }
}

TEST_CASE("conditional expansion probability") {
  auto d = fig2();
  CHECK(d.conditional_expand_prob(node({1})) == 0.8);
  CHECK(d.conditional_expand_prob(node({1, 0})) == 0.0);  // base leaf

  BaseShape shape(2, 2);
  std::vector<double> alpha(7, 0.0);  // root never expands
  TreeDistribution blocked(shape, std::move(alpha));
  CHECK_THROWS_AS(blocked.conditional_expand_prob(node({0, 1})), std::domain_error);
}

TEST_CASE("sampling degenerate cases and determinism") {
  BaseShape shape(2, 1);
  TreeDistribution point(shape, std::vector<double>(3, 0.0));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) CHECK(point.sample(rng).inner_nodes().empty());

  std::vector<double> forced{1.0, 0.0, 0.0};
  TreeDistribution depth1(shape, std::move(forced));
  for (int i = 0; i < 10; ++i)
    CHECK(depth1.sample(rng).inner_nodes() == std::vector<NodeId>{NodeId::root()});

  auto d = fig2();
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    auto ta = d.sample(a);
    CHECK(ta == d.sample(b));
    CHECK(validate_subtree(ta));
  }
}

TEST_CASE("sampled frequencies track exact probabilities") {
  auto d = fig2();
  auto trees = enumerate_subtrees(d.shape());
  std::map<std::vector<NodeId>, int> freq;
  std::mt19937_64 rng(2024);
  const int n = 20000;
  for (int i = 0; i < n; ++i) ++freq[d.sample(rng).inner_nodes()];
  for (const auto& t : trees) {
    const double p = d.prob(t);
    const double observed = freq[t.inner_nodes()] / static_cast<double>(n);
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(observed - p) < 4 * sigma + 1e-9);
  }
}
