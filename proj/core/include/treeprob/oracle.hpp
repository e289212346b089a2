#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "treeprob/distribution.hpp"
#include "treeprob/tree.hpp"

namespace treeprob {

// Brute-force ground truth: literal enumeration of T with direct evaluation
// of the defining sums. Never calls the recursive fold implementations.

struct OracleRow {
  FullSubtree tree;
  double prob;
  std::optional<double> likelihood;
  std::optional<double> posterior;
};

struct OracleReport {
  std::vector<OracleRow> rows;  // covers T exactly once, enumeration order
  double sum = 0.0;
  double max = 0.0;
  std::size_t argmax = 0;
  double entropy = 0.0;                   // nats
  std::optional<double> marginal;         // posterior reports only
};

OracleReport oracle_summary(const TreeDistribution& d,
                            std::uint64_t cap = kDefaultSubtreeCap);

double oracle_expectation(const TreeDistribution& d,
                          const std::function<double(const FullSubtree&)>& f,
                          std::uint64_t cap = kDefaultSubtreeCap);

OracleReport oracle_posterior(const TreeDistribution& d,
                              const std::function<double(const FullSubtree&)>& likelihood,
                              std::uint64_t cap = kDefaultSubtreeCap);

}  // namespace treeprob
