#pragma once

#include <optional>
#include <string>

#include "treeprob/bayes.hpp"
#include "treeprob/distribution.hpp"
#include "treeprob/tree.hpp"

namespace treeprob {

/// Parsed contents of a model file: the distribution plus optional
/// Beta hyperparameters.
struct ParsedModel {
  TreeDistribution dist;
  std::optional<BetaHyperparams> hyper;
};

// Node path string: digits 0..k-1 without separator for k <= 10,
// comma-separated indices for larger k. "" is the root.
NodeId parse_node_path(const std::string& s, const BaseShape& shape);
std::string format_node_path(const NodeId& v, const BaseShape& shape);

// Model files are JSON:
//   {
//     "shape": {"k": 2, "d_max": 2},
//     "alpha": {"": 0.7, "0": 0.4, "1": 0.8},
//     "default_alpha": 0.5,              // optional, for unlisted inner nodes
//     "beta": {...}, "gamma": {...},     // optional hyperparameters
//     "default_beta": 1.0, "default_gamma": 1.0
//   }
// Base-leaf nodes are always alpha = 0 and are never serialized.
ParsedModel parse_model_text(const std::string& text);
ParsedModel load_model_file(const std::string& path);
std::string serialize_model(const TreeDistribution& d,
                            const BetaHyperparams* hyper = nullptr);

}  // namespace treeprob
