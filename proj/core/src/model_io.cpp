#include "treeprob/model_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace treeprob {

using nlohmann::json;

NodeId parse_node_path(const std::string& s, const BaseShape& shape) {
  std::vector<std::uint32_t> path;
  if (shape.k() <= 10) {
    for (char c : s) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad character '" + std::string(1, c) +
                                    "' in node path \"" + s + "\"");
      path.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  } else if (!s.empty()) {
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        path.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad index \"" + part + "\" in node path \"" + s + "\"");
      }
    }
  }
  NodeId v{std::move(path)};
  if (!shape.contains(v))
    throw std::invalid_argument("node path \"" + s + "\" outside base tree (k=" +
                                std::to_string(shape.k()) + ", d_max=" +
                                std::to_string(shape.d_max()) + ")");
  return v;
}

std::string format_node_path(const NodeId& v, const BaseShape& shape) {
  std::string s;
  for (std::size_t i = 0; i < v.path().size(); ++i) {
    if (shape.k() > 10 && i) s += ",";
    s += std::to_string(v.path()[i]);
  }
  return s;
}

namespace {

// fills dense per-node values from a {path: value} object
std::vector<double> read_node_map(const json& obj, const BaseShape& shape,
                                  std::optional<double> fallback, const char* field,
                                  double leaf_value, bool leaf_fixed) {
  const std::uint64_t leaf_offset = shape.level_offset(shape.d_max());
  std::vector<double> values(shape.node_count(),
                             std::numeric_limits<double>::quiet_NaN());
  if (obj.is_object()) {
    for (const auto& [key, val] : obj.items()) {
      if (!val.is_number())
        throw std::invalid_argument(std::string(field) + " entry \"" + key +
                                    "\" is not a number");
      values[shape.index_of(parse_node_path(key, shape))] = val.get<double>();
    }
  }
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    if (leaf_fixed && i >= leaf_offset) {
      if (!std::isnan(values[i]) && values[i] != leaf_value)
        throw std::invalid_argument(std::string(field) + " must be " +
                                    std::to_string(leaf_value) + " at base-leaf node \"" +
                                    format_node_path(shape.node_at(i), shape) + "\"");
      values[i] = leaf_value;
    } else if (std::isnan(values[i])) {
      if (!fallback)
        throw std::invalid_argument(std::string(field) + " missing for node \"" +
                                    format_node_path(shape.node_at(i), shape) +
                                    "\" and no default given");
      values[i] = *fallback;
    }
  }
  return values;
}

}  // namespace

ParsedModel parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("shape"))
    throw std::invalid_argument("model file must be an object with a \"shape\" field");
  const json& js = doc["shape"];
  if (!js.contains("k") || !js.contains("d_max"))
    throw std::invalid_argument("\"shape\" must contain integer fields \"k\" and \"d_max\"");
  BaseShape shape(js["k"].get<std::uint32_t>(), js["d_max"].get<std::uint32_t>());

  std::optional<double> default_alpha;
  if (doc.contains("default_alpha")) default_alpha = doc["default_alpha"].get<double>();
  std::vector<double> alpha =
      read_node_map(doc.value("alpha", json::object()), shape, default_alpha, "alpha",
                    0.0, /*leaf_fixed=*/true);
  TreeDistribution dist(shape, std::move(alpha));

  std::optional<BetaHyperparams> hyper;
  if (doc.contains("beta") || doc.contains("gamma") || doc.contains("default_beta") ||
      doc.contains("default_gamma")) {
    const double db = doc.value("default_beta", 1.0);
    const double dg = doc.value("default_gamma", 1.0);
    hyper.emplace(shape,
                  read_node_map(doc.value("beta", json::object()), shape, db, "beta",
                                0.0, false),
                  read_node_map(doc.value("gamma", json::object()), shape, dg, "gamma",
                                0.0, false));
  }
  return {std::move(dist), std::move(hyper)};
}

ParsedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_text(ss.str());
}

std::string serialize_model(const TreeDistribution& d, const BetaHyperparams* hyper) {
  const BaseShape& shape = d.shape();
  json doc;
  doc["shape"] = {{"k", shape.k()}, {"d_max", shape.d_max()}};
  json alpha = json::object();
  const std::uint64_t leaf_offset = shape.level_offset(shape.d_max());
  for (std::uint64_t i = 0; i < leaf_offset; ++i)
    alpha[format_node_path(shape.node_at(i), shape)] = d.alpha_at(i);
  doc["alpha"] = std::move(alpha);
  if (hyper) {
    json beta = json::object(), gamma = json::object();
    for (std::uint64_t i = 0; i < shape.node_count(); ++i) {
      const std::string key = format_node_path(shape.node_at(i), shape);
      beta[key] = hyper->beta_values()[i];
      gamma[key] = hyper->gamma_values()[i];
    }
    doc["beta"] = std::move(beta);
    doc["gamma"] = std::move(gamma);
  }
  return doc.dump(2);
}

}  // namespace treeprob
