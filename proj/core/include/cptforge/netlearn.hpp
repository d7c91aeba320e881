#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cptforge/dirichlet.hpp"
#include "cptforge/dist.hpp"
#include "cptforge/finset.hpp"

namespace cptforge {

struct GraphNode {
  std::string name;
  std::size_t arity;
};

// A DAG of finite variables. Text format, one directive per line:
//   node <name> <arity>
//   edge <parent> <child>
// Blank lines and lines starting with '#' are ignored.
class GraphSpec {
 public:
  GraphSpec(std::vector<GraphNode> nodes, std::vector<std::pair<std::string, std::string>> edges);

  static GraphSpec parse(std::istream& in, const std::string& source = "<graph>");
  static GraphSpec load(const std::filesystem::path& path);

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;
  // Parents of a node in declared edge order.
  std::vector<std::string> parents(const std::string& name) const;
  // Nodes in a topological order (parents first), ties by declaration order.
  std::vector<std::string> topological_order() const;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::vector<std::string> topo_;
};

// Aggregated counts over full joint outcomes. Data format is long CSV with
// header `var1,...,vark,count`, 0-based outcome indices, '#' comments.
class CountTable {
 public:
  CountTable(std::vector<std::string> variables, std::vector<std::size_t> arities);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::size_t>& arities() const { return arities_; }
  const std::map<std::vector<std::size_t>, Integer>& records() const { return records_; }
  Integer total() const;

  void add(const std::vector<std::size_t>& outcome, const Integer& count);

  // Dense multiset over the row-major product of all variables.
  Multiset to_multiset() const;
  // Row-major index map from the full product onto the listed variables.
  FinMap projection(const std::vector<std::string>& onto) const;
  std::size_t position(const std::string& variable) const;

 private:
  std::vector<std::string> variables_;
  std::vector<std::size_t> arities_;
  std::map<std::vector<std::size_t>, Integer> records_;
};

CountTable ingest_counts(std::istream& in, const GraphSpec& graph, const std::string& source = "<data>");
CountTable ingest_counts(const std::filesystem::path& path, const GraphSpec& graph);

struct LearnedCPT {
  std::string node;
  std::size_t arity = 0;
  std::vector<std::string> parents;
  std::vector<std::size_t> parent_arities;
  // One entry per parent configuration, row-major over `parents`.
  std::vector<Dist> rows;
  // Bayesian mode only: the posterior hyperparameters behind each row.
  std::vector<HyperParams> posteriors;

  std::size_t configurations() const { return rows.size(); }
  std::vector<std::size_t> configuration(std::size_t index) const;
};

// Frequentist CPTs, one per node in topological order. Throws kZeroRow
// naming the node and parent configuration when a configuration is unseen.
std::vector<LearnedCPT> learn_mle(const CountTable& table, const GraphSpec& graph);

// Pseudo-counts per node, applied to every parent configuration. Text
// format, one directive per line:
//   default <k>
//   node <name> <a0> <a1> ... <a_{m-1}>
struct PriorPolicy {
  Integer default_count = 1;
  std::map<std::string, std::vector<Integer>> per_node;

  static PriorPolicy ones() { return {}; }
  static PriorPolicy parse(std::istream& in, const std::string& source = "<prior>");
  static PriorPolicy load(const std::filesystem::path& path);

  HyperParams for_node(const GraphNode& node) const;
};

std::vector<LearnedCPT> learn_bayes(const CountTable& table, const GraphSpec& graph,
                                    const PriorPolicy& prior = PriorPolicy::ones());

enum class LearnMode { kMle, kBayes };

// One CSV per node: parent outcome columns, then a0.. (Bayesian mode) and
// p0.. as reduced fractions.
std::string render_cpt_csv(const LearnedCPT& cpt, LearnMode mode);
std::vector<std::filesystem::path> write_cpts(const std::filesystem::path& dir,
                                              const std::vector<LearnedCPT>& cpts, LearnMode mode);

}  // namespace cptforge
