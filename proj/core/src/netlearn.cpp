#include "cptforge/netlearn.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cptforge/bayes.hpp"
#include "cptforge/error.hpp"
#include "cptforge/mle.hpp"

namespace cptforge {

namespace {

constexpr std::size_t kMaxDenseCells = std::size_t{1} << 26;

[[noreturn]] void input_error(const std::string& source, std::size_t line, const std::string& message) {
  throw Error(ErrorKind::kInput, source + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::optional<Integer> parse_natural(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return Integer(s);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInput, "cannot open " + path.string());
  return in;
}

std::size_t product_size(const std::vector<std::size_t>& arities) {
  std::size_t n = 1;
  for (auto a : arities) {
    if (a != 0 && n > kMaxDenseCells / a) throw Error(ErrorKind::kInput, "joint table too large for dense learning");
    n *= a;
  }
  return n;
}

}  // namespace

GraphSpec::GraphSpec(std::vector<GraphNode> nodes, std::vector<std::pair<std::string, std::string>> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.empty()) throw Error(ErrorKind::kInput, "graph has no nodes");
  std::set<std::string> names;
  for (const auto& n : nodes_) {
    if (n.arity < 1) throw Error(ErrorKind::kInput, "node '" + n.name + "' needs arity >= 1");
    if (!names.insert(n.name).second) throw Error(ErrorKind::kInput, "duplicate node '" + n.name + "'");
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [p, c] : edges_) {
    if (!names.count(p)) throw Error(ErrorKind::kInput, "edge from undeclared node '" + p + "'");
    if (!names.count(c)) throw Error(ErrorKind::kInput, "edge to undeclared node '" + c + "'");
    if (!seen.insert({p, c}).second) throw Error(ErrorKind::kInput, "duplicate edge " + p + " -> " + c);
  }

  // Kahn's algorithm, smallest declaration index first.
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  for (const auto& e : edges_) ++indegree[index_of(e.second)];
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    const std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(nodes_[i].name);
    for (const auto& [p, c] : edges_) {
      if (p != nodes_[i].name) continue;
      const std::size_t k = index_of(c);
      if (--indegree[k] == 0) ready.insert(k);
    }
  }
  if (topo_.size() != nodes_.size()) throw Error(ErrorKind::kInput, "graph has a directed cycle");
}

GraphSpec GraphSpec::parse(std::istream& in, const std::string& source) {
  std::vector<GraphNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (skippable(line)) continue;
    const auto w = words(line);
    if (w[0] == "node") {
      if (w.size() != 3) input_error(source, lineno, "expected 'node <name> <arity>'");
      const auto arity = parse_natural(w[2]);
      if (!arity || *arity < 1 || !arity->fits_ulong_p()) input_error(source, lineno, "arity must be a positive integer");
      nodes.push_back({w[1], arity->get_ui()});
    } else if (w[0] == "edge") {
      if (w.size() != 3) input_error(source, lineno, "expected 'edge <parent> <child>'");
      edges.emplace_back(w[1], w[2]);
    } else {
      input_error(source, lineno, "unknown directive '" + w[0] + "'");
    }
  }
  try {
    return GraphSpec(std::move(nodes), std::move(edges));
  } catch (const Error& e) {
    throw Error(ErrorKind::kInput, source + ": " + e.what());
  }
}

GraphSpec GraphSpec::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse(in, path.string());
}

std::optional<std::size_t> GraphSpec::find(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t GraphSpec::index_of(const std::string& name) const {
  const auto i = find(name);
  if (!i) throw Error(ErrorKind::kInput, "unknown node '" + name + "'");
  return *i;
}

std::vector<std::string> GraphSpec::parents(const std::string& name) const {
  std::vector<std::string> out;
  for (const auto& [p, c] : edges_) {
    if (c == name) out.push_back(p);
  }
  return out;
}

std::vector<std::string> GraphSpec::topological_order() const { return topo_; }

CountTable::CountTable(std::vector<std::string> variables, std::vector<std::size_t> arities)
    : variables_(std::move(variables)), arities_(std::move(arities)) {
  if (variables_.size() != arities_.size()) throw Error(ErrorKind::kDimensionMismatch, "variables vs arities");
}

Integer CountTable::total() const {
  Integer t = 0;
  for (const auto& [k, v] : records_) t += v;
  return t;
}

void CountTable::add(const std::vector<std::size_t>& outcome, const Integer& count) {
  if (outcome.size() != variables_.size()) throw Error(ErrorKind::kDimensionMismatch, "outcome width");
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i] >= arities_[i]) throw Error(ErrorKind::kInput, "outcome index out of range");
  }
  if (count < 0) throw Error(ErrorKind::kInput, "negative count");
  records_[outcome] += count;
}

std::size_t CountTable::position(const std::string& variable) const {
  const auto it = std::find(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end()) throw Error(ErrorKind::kInput, "table has no variable '" + variable + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

Multiset CountTable::to_multiset() const {
  std::vector<Integer> dense(product_size(arities_), 0);
  for (const auto& [outcome, count] : records_) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < outcome.size(); ++i) index = index * arities_[i] + outcome[i];
    dense[index] += count;
  }
  return Multiset(std::move(dense));
}

FinMap CountTable::projection(const std::vector<std::string>& onto) const {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> sub_arities;
  for (const auto& v : onto) {
    pos.push_back(position(v));
    sub_arities.push_back(arities_[pos.back()]);
  }
  const std::size_t n = product_size(arities_);
  const std::size_t m = product_size(sub_arities);
  std::vector<std::size_t> targets(n);
  std::vector<std::size_t> digits(arities_.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t t = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) t = t * sub_arities[i] + digits[pos[i]];
    targets[k] = t;
    // Row-major increment of the mixed-radix digits.
    for (std::size_t i = arities_.size(); i-- > 0;) {
      if (++digits[i] < arities_[i]) break;
      digits[i] = 0;
    }
  }
  return FinMap(std::move(targets), m);
}

CountTable ingest_counts(std::istream& in, const GraphSpec& graph, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<CountTable> table;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto fields = csv_fields(line);
    if (!table) {
      if (fields.size() < 2 || fields.back() != "count") {
        input_error(source, lineno, "header must be 'var1,...,vark,count'");
      }
      std::vector<std::string> vars(fields.begin(), fields.end() - 1);
      std::vector<std::size_t> arities;
      std::set<std::string> distinct;
      for (const auto& v : vars) {
        const auto i = graph.find(v);
        if (!i) input_error(source, lineno, "unknown variable '" + v + "'");
        if (!distinct.insert(v).second) input_error(source, lineno, "duplicate variable '" + v + "'");
        arities.push_back(graph.nodes()[*i].arity);
      }
      for (const auto& n : graph.nodes()) {
        if (!distinct.count(n.name)) input_error(source, lineno, "missing variable '" + n.name + "'");
      }
      table.emplace(std::move(vars), std::move(arities));
      continue;
    }
    if (fields.size() != table->variables().size() + 1) {
      input_error(source, lineno,
                  "expected " + std::to_string(table->variables().size() + 1) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<std::size_t> outcome;
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      const auto v = parse_natural(fields[i]);
      if (!v) input_error(source, lineno, "outcome '" + fields[i] + "' is not a non-negative integer");
      if (!v->fits_ulong_p() || v->get_ui() >= table->arities()[i]) {
        input_error(source, lineno,
                    "outcome " + fields[i] + " out of range for '" + table->variables()[i] + "' (arity " +
                        std::to_string(table->arities()[i]) + ")");
      }
      outcome.push_back(v->get_ui());
    }
    const auto count = parse_natural(fields.back());
    if (!count) input_error(source, lineno, "count '" + fields.back() + "' is not a non-negative integer");
    table->add(outcome, *count);
  }
  if (!table) {
    std::vector<std::string> vars;
    std::vector<std::size_t> arities;
    for (const auto& n : graph.nodes()) {
      vars.push_back(n.name);
      arities.push_back(n.arity);
    }
    table.emplace(std::move(vars), std::move(arities));
  }
  return std::move(*table);
}

CountTable ingest_counts(const std::filesystem::path& path, const GraphSpec& graph) {
  auto in = open_input(path);
  return ingest_counts(in, graph, path.string());
}

std::vector<std::size_t> LearnedCPT::configuration(std::size_t index) const {
  std::vector<std::size_t> digits(parent_arities.size(), 0);
  for (std::size_t i = parent_arities.size(); i-- > 0;) {
    digits[i] = index % parent_arities[i];
    index /= parent_arities[i];
  }
  return digits;
}

namespace {

// The family table (parent configurations x node outcomes) of one node.
JointMultiset family_counts(const CountTable& table, const Multiset& full, const GraphSpec& graph,
                            const std::string& node, LearnedCPT& cpt) {
  cpt.node = node;
  cpt.arity = graph.nodes()[graph.index_of(node)].arity;
  cpt.parents = graph.parents(node);
  std::size_t configs = 1;
  for (const auto& p : cpt.parents) {
    cpt.parent_arities.push_back(graph.nodes()[graph.index_of(p)].arity);
    configs *= cpt.parent_arities.back();
  }
  std::vector<std::string> family = cpt.parents;
  family.push_back(node);
  return JointMultiset::from_multiset(configs, cpt.arity, ms_map(table.projection(family), full));
}

std::string describe_configuration(const LearnedCPT& cpt, std::size_t index) {
  const auto digits = cpt.configuration(index);
  std::string s = "(";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += ", ";
    s += cpt.parents[i] + "=" + std::to_string(digits[i]);
  }
  return s + ")";
}

}  // namespace

std::vector<LearnedCPT> learn_mle(const CountTable& table, const GraphSpec& graph) {
  const Multiset full = table.to_multiset();
  std::vector<LearnedCPT> out;
  for (const auto& node : graph.topological_order()) {
    LearnedCPT cpt;
    const JointMultiset family = family_counts(table, full, graph, node, cpt);
    for (std::size_t c = 0; c < family.rows(); ++c) {
      if (family.row_total(c) != 0) continue;
      if (cpt.parents.empty()) {
        throw Error(ErrorKind::kEmptyMultiset, "node '" + node + "': no data to learn from");
      }
      throw Error(ErrorKind::kZeroRow, "node '" + node + "': parent configuration " +
                                           describe_configuration(cpt, c) + " has zero count");
    }
    const Disintegration learned = mle_decompose(family);
    cpt.rows.assign(learned.channel.rows().begin(), learned.channel.rows().end());
    out.push_back(std::move(cpt));
  }
  return out;
}

PriorPolicy PriorPolicy::parse(std::istream& in, const std::string& source) {
  PriorPolicy policy;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (skippable(line)) continue;
    const auto w = words(line);
    if (w[0] == "default") {
      if (w.size() != 2) input_error(source, lineno, "expected 'default <k>'");
      const auto k = parse_natural(w[1]);
      if (!k || *k < 1) input_error(source, lineno, "prior pseudo-counts must be positive integers");
      policy.default_count = *k;
    } else if (w[0] == "node") {
      if (w.size() < 3) input_error(source, lineno, "expected 'node <name> <a0> ...'");
      std::vector<Integer> alphas;
      for (std::size_t i = 2; i < w.size(); ++i) {
        const auto k = parse_natural(w[i]);
        if (!k || *k < 1) input_error(source, lineno, "prior pseudo-counts must be positive integers");
        alphas.push_back(*k);
      }
      if (!policy.per_node.emplace(w[1], std::move(alphas)).second) {
        input_error(source, lineno, "duplicate prior for node '" + w[1] + "'");
      }
    } else {
      input_error(source, lineno, "unknown directive '" + w[0] + "'");
    }
  }
  return policy;
}

PriorPolicy PriorPolicy::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse(in, path.string());
}

HyperParams PriorPolicy::for_node(const GraphNode& node) const {
  if (default_count < 1) throw Error(ErrorKind::kInput, "prior pseudo-counts must be positive integers");
  const auto it = per_node.find(node.name);
  if (it == per_node.end()) return HyperParams(std::vector<Integer>(node.arity, default_count));
  if (it->second.size() != node.arity) {
    throw Error(ErrorKind::kInput, "prior for '" + node.name + "' has " + std::to_string(it->second.size()) +
                                       " entries, node arity is " + std::to_string(node.arity));
  }
  try {
    return HyperParams(it->second);
  } catch (const Error&) {
    throw Error(ErrorKind::kInput, "prior for '" + node.name + "' must be positive integers");
  }
}

std::vector<LearnedCPT> learn_bayes(const CountTable& table, const GraphSpec& graph, const PriorPolicy& prior) {
  for (const auto& [name, alphas] : prior.per_node) {
    if (!graph.find(name)) throw Error(ErrorKind::kInput, "prior names unknown node '" + name + "'");
  }
  const Multiset full = table.to_multiset();
  std::vector<LearnedCPT> out;
  for (const auto& node : graph.topological_order()) {
    LearnedCPT cpt;
    const JointMultiset family = family_counts(table, full, graph, node, cpt);
    const HyperParams alpha = prior.for_node(graph.nodes()[graph.index_of(node)]);
    // Zero rows are fine here: the posterior stays the (proper) prior.
    for (std::size_t c = 0; c < family.rows(); ++c) {
      std::vector<Integer> row(family.cols());
      for (std::size_t j = 0; j < family.cols(); ++j) row[j] = family.at(c, j);
      HyperParams posterior = batch_update(alpha, Multiset(std::move(row)));
      cpt.rows.push_back(dirichlet_mean(posterior));
      cpt.posteriors.push_back(std::move(posterior));
    }
    out.push_back(std::move(cpt));
  }
  return out;
}

std::string render_cpt_csv(const LearnedCPT& cpt, LearnMode mode) {
  std::ostringstream os;
  std::vector<std::string> header = cpt.parents;
  if (mode == LearnMode::kBayes) {
    for (std::size_t j = 0; j < cpt.arity; ++j) header.push_back("a" + std::to_string(j));
  }
  for (std::size_t j = 0; j < cpt.arity; ++j) header.push_back("p" + std::to_string(j));
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (std::size_t c = 0; c < cpt.configurations(); ++c) {
    std::vector<std::string> cells;
    for (auto d : cpt.configuration(c)) cells.push_back(std::to_string(d));
    if (mode == LearnMode::kBayes) {
      if (cpt.posteriors.size() != cpt.rows.size()) {
        throw Error(ErrorKind::kInvalidArgument, "Bayesian output needs posterior hyperparameters");
      }
      for (const auto& a : cpt.posteriors[c].alphas()) cells.push_back(a.get_str());
    }
    for (const auto& p : cpt.rows[c].probs()) cells.push_back(to_fraction_string(p));
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  }
  return os.str();
}

std::vector<std::filesystem::path> write_cpts(const std::filesystem::path& dir,
                                              const std::vector<LearnedCPT>& cpts, LearnMode mode) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kInput, "cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& cpt : cpts) {
    const auto path = dir / (cpt.node + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::kInput, "cannot write " + path.string());
    out << render_cpt_csv(cpt, mode);
    written.push_back(path);
  }
  return written;
}

}  // namespace cptforge
