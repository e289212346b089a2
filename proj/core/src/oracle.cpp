#include "treeprob/oracle.hpp"

#include <cmath>

#include "treeprob/errors.hpp"

namespace treeprob {

namespace {

// p(tau) evaluated straight from the definition, independent of the
// library's own prob() path
double literal_prob(const TreeDistribution& d, const FullSubtree& t) {
  double p = 1.0;
  for (const NodeId& v : t.inner_nodes()) p *= d.alpha(v);
  for (const NodeId& v : t.leaves()) p *= 1.0 - d.alpha(v);
  return p;
}

}  // namespace

OracleReport oracle_summary(const TreeDistribution& d, std::uint64_t cap) {
  OracleReport report;
  for_each_subtree(
      d.shape(),
      [&](const FullSubtree& t) {
        const double p = literal_prob(d, t);
        report.rows.push_back({t, p, std::nullopt, std::nullopt});
        report.sum += p;
        if (p > 0.0) report.entropy -= p * std::log(p);
        if (report.rows.size() == 1 || p > report.max) {
          report.max = p;
          report.argmax = report.rows.size() - 1;
        }
      },
      cap);
  return report;
}

double oracle_expectation(const TreeDistribution& d,
                          const std::function<double(const FullSubtree&)>& f,
                          std::uint64_t cap) {
  double acc = 0.0;
  for_each_subtree(
      d.shape(),
      [&](const FullSubtree& t) { acc += f(t) * literal_prob(d, t); }, cap);
  return acc;
}

OracleReport oracle_posterior(const TreeDistribution& d,
                              const std::function<double(const FullSubtree&)>& likelihood,
                              std::uint64_t cap) {
  OracleReport report;
  double normalizer = 0.0;
  for_each_subtree(
      d.shape(),
      [&](const FullSubtree& t) {
        const double p = literal_prob(d, t);
        const double lik = likelihood(t);
        report.rows.push_back({t, p, lik, std::nullopt});
        normalizer += lik * p;
      },
      cap);
  if (normalizer <= 0.0)
    throw ZeroEvidenceError("zero evidence: sum of p(x|tau) p(tau) is not positive");
  report.marginal = normalizer;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    OracleRow& row = report.rows[i];
    const double post = *row.likelihood * row.prob / normalizer;
    row.posterior = post;
    report.sum += post;
    if (i == 0 || post > report.max) {
      report.max = post;
      report.argmax = i;
    }
  }
  return report;
}

}  // namespace treeprob
