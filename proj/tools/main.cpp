#include <cctype>
#include <cmath>
#include <fstream>
#include <memory>
#include <unordered_map>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeprob/bayes.hpp"
#include "treeprob/distribution.hpp"
#include "treeprob/errors.hpp"
#include "treeprob/mode.hpp"
#include "treeprob/model_io.hpp"
#include "treeprob/oracle.hpp"
#include "treeprob/recursions.hpp"
#include "treeprob/seqmodel.hpp"
#include "treeprob/tree.hpp"

using nlohmann::json;
using namespace treeprob;

namespace {

struct GlobalOpts {
  std::string format = "human";
  std::uint64_t cap = kDefaultSubtreeCap;
  bool bits = true;  // entropy unit; --nats switches
};

bool machine(const GlobalOpts& g) { return g.format == "machine"; }

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(15);
  ss << x;
  return ss.str();
}

// tree spec token: "-" is the root, otherwise a node path string;
// a tree spec line is space-separated tokens, "." for the root-only tree
std::string tree_spec(const FullSubtree& t) {
  if (t.inner_nodes().empty()) return ".";
  std::string out;
  for (const NodeId& v : t.inner_nodes()) {
    if (!out.empty()) out += " ";
    out += v.is_root() ? "-" : format_node_path(v, t.shape());
  }
  return out;
}

NodeId parse_path_token(const std::string& tok, const BaseShape& shape) {
  if (tok == "-" || tok.empty()) return NodeId::root();
  return parse_node_path(tok, shape);
}

std::vector<Symbol> read_bit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::vector<Symbol> xs;
  char c;
  while (in.get(c)) {
    if (c == '0' || c == '1')
      xs.push_back(static_cast<Symbol>(c - '0'));
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw std::invalid_argument(std::string("non-binary character '") + c +
                                  "' in input");
  }
  return xs;
}

int cmd_info(const std::string& model_path, const GlobalOpts& g, bool oracle_check) {
  ParsedModel m = load_model_file(model_path);
  const TreeDistribution& d = m.dist;
  const BaseShape& shape = d.shape();

  const std::uint64_t count = shape.subtree_count();
  const double mass = d.total_mass();
  const double ent = entropy(d, g.bits ? LogBase::Bits : LogBase::Nats);
  ModeResult mr = mode(d);

  if (machine(g)) {
    json out;
    out["k"] = shape.k();
    out["d_max"] = shape.d_max();
    out["node_count"] = shape.node_count();
    if (count <= g.cap)
      out["subtree_count"] = count;
    else
      out["subtree_count_lower_bound"] = g.cap;
    out["total_mass"] = mass;
    out["entropy"] = ent;
    out["entropy_unit"] = g.bits ? "bits" : "nats";
    out["mode_tree"] = tree_spec(mr.tree);
    out["mode_probability"] = mr.value;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "base tree: k=" << shape.k() << " d_max=" << shape.d_max()
              << " (" << shape.node_count() << " nodes)\n";
    if (count <= g.cap)
      std::cout << "|T| = " << count << "\n";
    else
      std::cout << "|T| > " << g.cap << " (cap; not enumerated)\n";
    std::cout << "total mass = " << fmt(mass) << "\n";
    std::cout << "entropy = " << fmt(ent) << (g.bits ? " bits" : " nats") << "\n";
    std::cout << "mode tree: " << tree_spec(mr.tree) << "\n";
    std::cout << "mode probability = " << fmt(mr.value) << "\n";
  }

  if (oracle_check) {
    OracleReport rep = oracle_summary(d, g.cap);
    const bool ok = std::abs(rep.sum - mass) < 1e-10 &&
                    std::abs(rep.max - mr.value) < 1e-10;
    std::cout << "oracle check: " << (ok ? "PASS" : "FAIL")
              << " (enumerated " << rep.rows.size() << " trees, sum "
              << fmt(rep.sum) << ", max " << fmt(rep.max) << ")\n";
    if (!ok) return 3;
  }
  return 0;
}

int cmd_query(const std::string& model_path, const GlobalOpts& g,
              const std::string& node_opt, const std::vector<std::string>& tree_opt) {
  ParsedModel m = load_model_file(model_path);
  const TreeDistribution& d = m.dist;

  if (!tree_opt.empty()) {
    std::vector<NodeId> inner;
    for (const std::string& tok : tree_opt) {
      if (tok == ".") continue;  // root-only tree
      inner.push_back(parse_path_token(tok, d.shape()));
    }
    FullSubtree t(d.shape(), std::move(inner));
    if (auto res = validate_subtree(t); !res)
      throw std::invalid_argument("invalid tree: " + res.message);
    const double p = d.prob(t);
    if (machine(g))
      std::cout << json{{"tree", tree_spec(t)}, {"prob", p}}.dump(2) << "\n";
    else
      std::cout << "p(tau) = " << fmt(p) << "\n";
    return 0;
  }

  NodeId v = parse_path_token(node_opt, d.shape());
  NodeEventProbs pr = d.node_event_probs(v);
  if (machine(g)) {
    json out{{"node", format_node_path(v, d.shape())},
             {"p_in_tree", pr.in_tree},
             {"p_inner", pr.inner},
             {"p_leaf", pr.leaf}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "Pr{v in V_T} = " << fmt(pr.in_tree) << "\n";
    std::cout << "Pr{v in I_T} = " << fmt(pr.inner) << "\n";
    std::cout << "Pr{v in L_T} = " << fmt(pr.leaf) << "\n";
  }
  return 0;
}

int cmd_sample(const std::string& model_path, const GlobalOpts& g, std::uint64_t n,
               std::uint64_t seed) {
  ParsedModel m = load_model_file(model_path);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < n; ++i)
    std::cout << tree_spec(m.dist.sample(rng)) << "\n";
  (void)g;
  return 0;
}

NodeFunction table_fn(const json& table, double fallback, const BaseShape& shape) {
  auto values = std::make_shared<std::unordered_map<std::uint64_t, double>>();
  for (const auto& [key, val] : table.items()) {
    if (key == "default") continue;
    (*values)[shape.index_of(parse_node_path(key, shape))] = val.get<double>();
  }
  return [values, fallback, shape](const NodeId& v) {
    auto it = values->find(shape.index_of(v));
    return it == values->end() ? fallback : it->second;
  };
}

int cmd_posterior(const std::string& model_path, const GlobalOpts& g,
                  const std::string& gh_path, const std::string& vend,
                  const std::string& hprime_path, const std::string& out_path) {
  ParsedModel m = load_model_file(model_path);
  const BaseShape& shape = m.dist.shape();

  TreeDistribution posterior = m.dist;
  double log_marginal = 0.0;
  if (!gh_path.empty()) {
    std::ifstream in(gh_path);
    if (!in) throw std::invalid_argument("cannot open likelihood file: " + gh_path);
    json doc = json::parse(in, nullptr, true, true);
    LikelihoodSpec like{
        table_fn(doc.value("g", json::object()), doc.value("default_g", 1.0), shape),
        table_fn(doc.value("h", json::object()), doc.value("default_h", 1.0), shape)};
    PosteriorResult res = posterior_general(m.dist, like);
    posterior = res.posterior;
    log_marginal = res.log_marginal;
  } else {
    std::ifstream in(hprime_path);
    if (!in) throw std::invalid_argument("cannot open h' file: " + hprime_path);
    json doc = json::parse(in, nullptr, true, true);
    PathLikelihoodSpec like{parse_path_token(vend, shape),
                            table_fn(doc, doc.value("default", 1.0), shape)};
    PathPosteriorResult res = posterior_path(m.dist, like);
    posterior = res.posterior;
    log_marginal = res.log_marginal;
  }

  const std::string serialized = serialize_model(posterior);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << serialized << "\n";
  }
  if (machine(g)) {
    json out{{"marginal", std::exp(log_marginal)}, {"log_marginal", log_marginal}};
    if (out_path.empty()) out["posterior"] = json::parse(serialized);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "marginal p(x) = " << fmt(std::exp(log_marginal)) << "\n";
    if (out_path.empty()) std::cout << serialized << "\n";
  }
  return 0;
}

int cmd_ctw(const std::string& input_path, const GlobalOpts& g, std::uint32_t d_max,
            double alpha, bool oracle_check) {
  const std::vector<Symbol> xs = read_bit_file(input_path);
  BaseShape shape(2, d_max);
  ContextTreeModel model(shape, alpha);
  const double bits = model.evaluate_sequence(xs);
  ModeResult mr = model.map_context_tree();

  const double per_symbol = xs.empty() ? 0.0 : bits / static_cast<double>(xs.size());
  if (machine(g)) {
    json out{{"symbols", xs.size()},
             {"code_length_bits", bits},
             {"bits_per_symbol", per_symbol},
             {"map_context_tree", tree_spec(mr.tree)},
             {"map_tree_posterior", mr.value}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "symbols: " << xs.size() << "\n";
    std::cout << "code length = " << fmt(bits) << " bits\n";
    std::cout << "bits/symbol = " << fmt(per_symbol) << "\n";
    std::cout << "MAP context tree: " << tree_spec(mr.tree)
              << " (posterior " << fmt(mr.value) << ")\n";
  }

  if (oracle_check) {
    if (xs.size() > 10 || d_max > 2) {
      std::cout << "oracle check: skipped (needs N <= 10 and d_max <= 2)\n";
      return 0;
    }
    const double mixture =
        ctw_mixture_probability(TreeDistribution::constant(shape, alpha), xs, g.cap);
    const double seq = std::exp2(-bits);
    const double rel = mixture == 0.0 ? std::abs(seq - mixture)
                                      : std::abs(seq - mixture) / mixture;
    const bool ok = rel < 1e-10;
    std::cout << "oracle check: " << (ok ? "PASS" : "FAIL")
              << " (rel err " << fmt(rel) << ")\n";
    if (!ok) return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treeprob: probability distributions on full rooted subtrees"};
  app.require_subcommand(1);

  GlobalOpts g;
  bool nats = false;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--cap", g.cap, "enumeration cap on |T|");
  app.add_flag("--nats", nats, "report entropy in nats instead of bits");
  bool oracle_flag = false;
  app.add_flag("--oracle", oracle_flag, "cross-check against brute-force enumeration");

  std::string model_path, input_path;

  auto* info = app.add_subcommand("info", "summarize a model file");
  info->add_option("model", model_path, "model file")->required();

  auto* query = app.add_subcommand("query", "query node events or a tree probability");
  std::string node_opt;
  std::vector<std::string> tree_opt;
  query->add_option("model", model_path, "model file")->required();
  query->add_option("--node", node_opt, "node path ('-' or '' for the root)");
  query->add_option("--tree", tree_opt,
                    "inner-node paths of a tree ('.' alone for root-only)");

  auto* sample = app.add_subcommand("sample", "draw trees from the distribution");
  std::uint64_t n = 1, seed = 0;
  sample->add_option("model", model_path, "model file")->required();
  sample->add_option("-n,--count", n, "number of samples");
  sample->add_option("--seed", seed, "rng seed");

  auto* posterior = app.add_subcommand("posterior", "posterior update from a likelihood");
  std::string gh_path, vend, hprime_path, out_path;
  posterior->add_option("model", model_path, "model file")->required();
  posterior->add_option("--gh", gh_path, "JSON file with g/h tables (general form)");
  posterior->add_option("--vend", vend, "v_end path (path-restricted form)");
  posterior->add_option("--hprime", hprime_path, "JSON table of h' values on the path");
  posterior->add_option("--out", out_path, "write posterior model here");

  auto* ctw = app.add_subcommand("ctw", "context-tree compression demo on a 0/1 file");
  std::uint32_t d_max = 3;
  double alpha = 0.5;
  ctw->add_option("input", input_path, "file of 0/1 characters")->required();
  ctw->add_option("--dmax", d_max, "context depth");
  ctw->add_option("--alpha", alpha, "prior expansion parameter")
      ->check(CLI::Range(0.0, 1.0));

  CLI11_PARSE(app, argc, argv);
  g.bits = !nats;

  try {
    if (*info) return cmd_info(model_path, g, oracle_flag);
    if (*query) {
      if (tree_opt.empty() && !query->count("--node"))
        throw std::invalid_argument("query needs --node or --tree");
      return cmd_query(model_path, g, node_opt, tree_opt);
    }
    if (*sample) return cmd_sample(model_path, g, n, seed);
    if (*posterior) {
      const bool general = !gh_path.empty();
      const bool path = posterior->count("--vend") > 0;
      if (general == path)
        throw std::invalid_argument(
            "posterior needs exactly one of --gh or --vend/--hprime");
      if (path && hprime_path.empty())
        throw std::invalid_argument("--vend requires --hprime");
      return cmd_posterior(model_path, g, gh_path, vend, hprime_path, out_path);
    }
    if (*ctw) return cmd_ctw(input_path, g, d_max, alpha, oracle_flag);
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ZeroEvidenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
