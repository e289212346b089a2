#include "treeprob/recursions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "treeprob/errors.hpp"
#include "treeprob/fold.hpp"

namespace treeprob {

namespace {

std::string node_str(const NodeId& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.path().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.path()[i]);
  }
  return s + "]";
}

void check_finite(double x, const NodeId& v) {
  if (!std::isfinite(x))
    throw NumericError("non-finite intermediate at node " + node_str(v));
}

double xi_fold_impl(const TreeDistribution& d, const NodeFunction& g,
                    const NodeFunction& h, bool require_finite) {
  return fold_base_tree<double>(
      d.shape(),
      [&](const NodeId& v) {
        double x = h(v);
        if (require_finite) check_finite(x, v);
        return x;
      },
      [&](const NodeId& v, const std::vector<double>& child) {
        const double a = d.alpha(v);
        double x = 0.0;
        if (a < 1.0) x += (1.0 - a) * h(v);
        if (a > 0.0) {
          double sum = g(v);
          for (double c : child) sum += c;
          x += a * sum;
        }
        if (require_finite) check_finite(x, v);
        return x;
      });
}

}  // namespace

namespace detail {

double xi_fold(const TreeDistribution& d, const NodeFunction& g, const NodeFunction& h) {
  return xi_fold_impl(d, g, h, false);
}

}  // namespace detail

double tree_sum(const BaseShape& shape, const NodeFunction& G, const NodeFunction& H) {
  return fold_base_tree<double>(
      shape,
      [&](const NodeId& v) {
        double x = H(v);
        check_finite(x, v);
        return x;
      },
      [&](const NodeId& v, const std::vector<double>& child) {
        double prod = 1.0;
        for (double c : child) prod *= c;
        double x = H(v) + G(v) * prod;
        check_finite(x, v);
        return x;
      });
}

double expect_product(const TreeDistribution& d, const NodeFunction& g,
                      const NodeFunction& h) {
  return fold_base_tree<double>(
      d.shape(),
      [&](const NodeId& v) {
        double x = h(v);
        check_finite(x, v);
        return x;
      },
      [&](const NodeId& v, const std::vector<double>& child) {
        const double a = d.alpha(v);
        double x = 0.0;
        if (a < 1.0) x += (1.0 - a) * h(v);
        if (a > 0.0) {
          double prod = g(v);
          for (double c : child) prod *= c;
          x += a * prod;
        }
        check_finite(x, v);
        return x;
      });
}

double expect_sum(const TreeDistribution& d, const NodeFunction& g,
                  const NodeFunction& h) {
  return xi_fold_impl(d, g, h, true);
}

double entropy(const TreeDistribution& d, LogBase base) {
  const double nats = detail::xi_fold(
      d,
      [&](const NodeId& v) { return -std::log(d.alpha(v)); },
      [&](const NodeId& v) { return -std::log1p(-d.alpha(v)); });
  const double h = std::max(0.0, nats);
  return base == LogBase::Bits ? h / std::numbers::ln2 : h;
}

double kl_divergence(const TreeDistribution& d, const TreeDistribution& d2) {
  if (!(d.shape() == d2.shape()))
    throw std::invalid_argument("KL divergence requires matching base shapes");
  // g, h only ever weighted by positive factors inside the fold, so the
  // log(0/0) cases at alpha in {0,1} never surface
  const double kl = detail::xi_fold(
      d,
      [&](const NodeId& v) { return std::log(d.alpha(v)) - std::log(d2.alpha(v)); },
      [&](const NodeId& v) {
        return std::log1p(-d.alpha(v)) - std::log1p(-d2.alpha(v));
      });
  return std::max(0.0, kl);
}

double tree_max_value(const TreeDistribution& d) {
  return fold_base_tree<double>(
      d.shape(),
      [](const NodeId&) { return 1.0; },
      [&](const NodeId& v, const std::vector<double>& child) {
        double prod = 1.0;
        for (double c : child) prod *= c;
        const double a = d.alpha(v);
        return std::max(1.0 - a, a * prod);
      });
}

}  // namespace treeprob
