#include "tgr/exec_graph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "tgr/errors.hpp"

namespace tgr {

NodeId ExecutionGraph::add_node(Rule rule) {
  const NodeId id = next_id_++;
  nodes_.emplace(id, std::move(rule));
  return id;
}

void ExecutionGraph::add_edge(NodeId from, std::uint32_t position, NodeId to) {
  if (!contains(from) || !contains(to)) {
    throw std::invalid_argument("edge " + std::to_string(from) + " -> " + std::to_string(to) +
                                " references an unknown node");
  }
  edges_.insert(EgEdge{from, position, to});
}

void ExecutionGraph::remove_node(NodeId id) {
  nodes_.erase(id);
  std::erase_if(edges_, [id](const EgEdge& e) { return e.from == id || e.to == id; });
}

std::vector<NodeId> ExecutionGraph::node_ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, rule] : nodes_) out.push_back(id);
  return out;
}

std::vector<EgEdge> ExecutionGraph::in_edges(NodeId id) const {
  std::vector<EgEdge> out;
  for (const auto& e : edges_)
    if (e.to == id) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const EgEdge& a, const EgEdge& b) {
    return std::tie(a.position, a.from) < std::tie(b.position, b.from);
  });
  return out;
}

std::vector<EgEdge> ExecutionGraph::out_edges(NodeId id) const {
  std::vector<EgEdge> out;
  auto it = edges_.lower_bound(EgEdge{id, 0, 0});
  for (; it != edges_.end() && it->from == id; ++it) out.push_back(*it);
  return out;
}

std::optional<NodeId> ExecutionGraph::parent(NodeId id, std::uint32_t position) const {
  std::optional<NodeId> best;
  for (const auto& e : edges_)
    if (e.to == id && e.position == position && (!best || e.from < *best)) best = e.from;
  return best;
}

std::optional<std::vector<NodeId>> ExecutionGraph::topological_order() const {
  std::map<NodeId, std::size_t> indegree;
  for (const auto& [id, rule] : nodes_) indegree[id] = 0;
  for (const auto& e : edges_)
    if (indegree.count(e.to)) ++indegree[e.to];
  // Smallest ready id first keeps the order deterministic.
  std::set<NodeId> ready;
  for (const auto& [id, d] : indegree)
    if (d == 0) ready.insert(id);
  std::vector<NodeId> order;
  while (!ready.empty()) {
    const NodeId v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (const auto& e : out_edges(v))
      if (indegree.count(e.to) && --indegree[e.to] == 0) ready.insert(e.to);
  }
  if (order.size() != nodes_.size()) return std::nullopt;
  return order;
}

std::map<NodeId, std::size_t> ExecutionGraph::depths() const {
  auto order = topological_order();
  if (!order) throw std::logic_error("execution graph has a cycle");
  std::map<NodeId, std::size_t> depth;
  for (NodeId v : *order) {
    std::size_t d = 1;
    for (const auto& e : in_edges(v)) d = std::max(d, depth[e.from] + 1);
    depth[v] = d;
  }
  return depth;
}

std::size_t ExecutionGraph::depth() const {
  std::size_t out = 0;
  for (const auto& [id, d] : depths()) out = std::max(out, d);
  return out;
}

std::set<NodeId> ExecutionGraph::ancestors(NodeId id) const {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const auto& e : in_edges(v))
      if (seen.insert(e.from).second) stack.push_back(e.from);
  }
  seen.erase(id);
  return seen;
}

std::set<NodeId> ExecutionGraph::descendants(NodeId id) const {
  std::set<NodeId> seen;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const auto& e : out_edges(v))
      if (seen.insert(e.to).second) stack.push_back(e.to);
  }
  seen.erase(id);
  return seen;
}

nlohmann::ordered_json eg_to_json(const ExecutionGraph& g) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (NodeId id : g.node_ids()) {
    nlohmann::ordered_json n;
    n["id"] = id;
    n["rule"] = g.rule(id).id;
    j["nodes"].push_back(std::move(n));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) {
    nlohmann::ordered_json x;
    x["from"] = e.from;
    x["pos"] = e.position;
    x["to"] = e.to;
    j["edges"].push_back(std::move(x));
  }
  return j;
}

ExecutionGraph eg_from_json(const nlohmann::json& j, const Program& program) {
  // Node ids in the file are kept: create placeholder nodes up to the max id
  // and drop the ones that are not listed.
  std::map<NodeId, const Rule*> listed;
  for (const auto& n : j.at("nodes")) {
    const NodeId id = n.at("id").get<NodeId>();
    if (id == 0) throw std::invalid_argument("node ids start at 1");
    const auto rule_id = n.at("rule").get<std::string>();
    const Rule* rule = program.find_rule(rule_id);
    if (!rule) throw std::invalid_argument("unknown rule '" + rule_id + "' in execution graph");
    if (!listed.emplace(id, rule).second) throw std::invalid_argument("duplicate node id " + std::to_string(id));
  }
  ExecutionGraph g;
  const NodeId max_id = listed.empty() ? 0 : listed.rbegin()->first;
  for (NodeId id = 1; id <= max_id; ++id) {
    auto it = listed.find(id);
    g.add_node(it == listed.end() ? Rule{} : *it->second);
  }
  for (NodeId id = 1; id <= max_id; ++id)
    if (!listed.count(id)) g.remove_node(id);
  for (const auto& e : j.at("edges")) {
    g.add_edge(e.at("from").get<NodeId>(), e.at("pos").get<std::uint32_t>(), e.at("to").get<NodeId>());
  }
  return g;
}

ValidationReport validate_eg(const ExecutionGraph& g, const Program& program) {
  ValidationReport report;
  auto node_name = [&](NodeId v) { return "node " + std::to_string(v) + " (" + g.rule(v).id + ")"; };

  for (NodeId v : g.node_ids()) {
    const Rule* rule = program.find_rule(g.rule(v).id);
    if (!rule || !(*rule == g.rule(v))) report.violations.push_back(node_name(v) + " is not labeled with a program rule");
  }

  std::map<std::pair<NodeId, std::uint32_t>, std::size_t> incoming;
  for (const auto& e : g.edges()) {
    const std::string label = std::to_string(e.from) + " ->_" + std::to_string(e.position) + " " + std::to_string(e.to);
    if (!g.contains(e.from) || !g.contains(e.to)) {
      report.violations.push_back("edge " + label + " references an unknown node");
      continue;
    }
    const Rule& target = g.rule(e.to);
    if (e.position < 1 || e.position > target.body.size()) {
      report.violations.push_back("edge " + label + ": position out of range for " + node_name(e.to));
      continue;
    }
    const Atom& atom = target.body[e.position - 1];
    if (program.is_extensional(atom.predicate)) {
      report.violations.push_back("edge " + label + " feeds extensional atom " + atom.to_string());
    }
    if (g.rule(e.from).head.predicate != atom.predicate) {
      report.violations.push_back("edge " + label + ": head predicate of " + node_name(e.from) +
                                  " does not match body atom " + atom.to_string());
    }
    ++incoming[{e.to, e.position}];
  }
  for (const auto& [key, count] : incoming) {
    if (count > 1) {
      report.violations.push_back(node_name(key.first) + " has " + std::to_string(count) +
                                  " incoming edges at position " + std::to_string(key.second));
    }
  }

  if (!g.topological_order()) report.violations.push_back("execution graph has a cycle");

  for (NodeId v : g.node_ids()) {
    const Rule& rule = g.rule(v);
    if (program.is_extensional_rule(rule)) {
      if (!g.in_edges(v).empty()) report.violations.push_back(node_name(v) + " is extensional but has incoming edges");
      continue;
    }
    for (std::uint32_t i = 1; i <= rule.body.size(); ++i) {
      if (program.is_intensional(rule.body[i - 1].predicate) && !incoming.count({v, i})) {
        report.warnings.push_back(node_name(v) + " has no incoming edge at position " + std::to_string(i));
      }
    }
  }
  return report;
}

const Instance& FactStore::facts(NodeId id) const {
  static const Instance kEmpty;
  auto it = nodes_.find(id);
  return it == nodes_.end() ? kEmpty : it->second;
}

Instance FactStore::union_all() const {
  Instance out = base_;
  for (const auto& [id, facts] : nodes_) out.merge(facts);
  return out;
}

const FactIndex& IndexCache::base() {
  if (!base_) base_.emplace(store_.base());
  return *base_;
}

const FactIndex& IndexCache::node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) it = nodes_.emplace(id, FactIndex(store_.facts(id))).first;
  return it->second;
}

bool for_each_node_trigger(const ExecutionGraph& g, NodeId v, IndexCache& indexes, const TermMapping& fixed,
                           const HomomorphismVisitor& visit) {
  const Rule& rule = g.rule(v);
  // Positions without a parent read from B; an intensional predicate never
  // occurs in B, so a missing parent yields no triggers.
  std::vector<const FactIndex*> targets(rule.body.size());
  for (std::uint32_t i = 1; i <= rule.body.size(); ++i) {
    const auto parent = g.parent(v, i);
    targets[i - 1] = parent ? &indexes.node(*parent) : &indexes.base();
  }
  return for_each_homomorphism(rule.body, targets, fixed, visit);
}

Atom instantiate_head(const Rule& rule, const TermMapping& trigger, NullFactory& nulls) {
  TermMapping ext = trigger;
  for (Term z : rule.existentials()) ext.set(z, nulls.fresh());
  return ext.apply(rule.head);
}

void materialize_nodes(const ExecutionGraph& g, const std::vector<NodeId>& nodes, FactStore& store,
                       NullFactory& nulls, MaterializeStats* stats) {
  IndexCache indexes(store);
  for (NodeId v : nodes) {
    const Rule& rule = g.rule(v);
    Instance out;
    for_each_node_trigger(g, v, indexes, {}, [&](const TermMapping& h) {
      if (stats) ++stats->triggers;
      out.insert(instantiate_head(rule, h, nulls));
      return true;
    });
    store.facts_mut(v) = std::move(out);
    indexes.invalidate(v);
  }
}

FactStore materialize(const ExecutionGraph& g, const Instance& base, NullFactory& nulls, MaterializeStats* stats) {
  FactStore store(base);
  const auto depth = g.depths();
  std::vector<NodeId> order = g.node_ids();
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return depth.at(a) < depth.at(b); });
  materialize_nodes(g, order, store, nulls, stats);
  return store;
}

FactStore materialize(const ExecutionGraph& g, const Instance& base) {
  NullFactory nulls;
  return materialize(g, base, nulls);
}

bool is_tg_for(const ExecutionGraph& g, const Program& program, const Instance& base, const ChaseConfig& config) {
  const ChaseResult chased = chase(program, base, config);
  return equivalent(materialize(g, base).union_all(), chased.final_instance);
}

ExecutionGraph expand_full_eg(const ExecutionGraph& previous, const Program& program, std::size_t k) {
  return expand_full_eg(previous, program, k, [](NodeId) { return true; });
}

ExecutionGraph expand_full_eg(const ExecutionGraph& previous, const Program& program, std::size_t k,
                              const std::function<bool(NodeId)>& eligible) {
  if (!program.is_normalized()) throw UnsupportedProgram("full EG expansion requires a normalized program");
  if (k == 0) throw std::invalid_argument("levels start at 1");
  ExecutionGraph g = previous;
  if (k == 1) {
    if (!g.empty()) return g;
    for (const auto& rule : program.rules())
      if (program.is_extensional_rule(rule)) g.add_node(rule);
    return g;
  }

  const auto depth = previous.depths();
  std::set<std::pair<std::string, std::vector<NodeId>>> existing;
  for (NodeId v : previous.node_ids()) {
    std::vector<NodeId> parents;
    for (const auto& e : previous.in_edges(v)) parents.push_back(e.from);
    existing.insert({previous.rule(v).id, std::move(parents)});
  }
  std::map<Symbol, std::vector<NodeId>> by_head;
  for (NodeId v : previous.node_ids())
    if (depth.at(v) < k && eligible(v)) by_head[previous.rule(v).head.predicate].push_back(v);

  for (const auto& rule : program.rules()) {
    if (program.is_extensional_rule(rule)) continue;
    std::vector<const std::vector<NodeId>*> choices;
    bool feasible = true;
    for (const auto& atom : rule.body) {
      auto it = by_head.find(atom.predicate);
      if (it == by_head.end()) {
        feasible = false;
        break;
      }
      choices.push_back(&it->second);
    }
    if (!feasible) continue;

    std::vector<NodeId> combo(rule.body.size());
    std::function<void(std::size_t, bool)> pick = [&](std::size_t i, bool reaches) {
      if (i == combo.size()) {
        if (!reaches || !existing.insert({rule.id, combo}).second) return;
        const NodeId v = g.add_node(rule);
        for (std::size_t j = 0; j < combo.size(); ++j) g.add_edge(combo[j], static_cast<std::uint32_t>(j + 1), v);
        return;
      }
      for (NodeId u : *choices[i]) {
        combo[i] = u;
        pick(i + 1, reaches || depth.at(u) == k - 1);
      }
    };
    pick(0, false);
  }
  return g;
}

FullEgRun expand_until_fixpoint(const Program& program, const Instance& base, std::size_t cap) {
  FullEgRun run;
  run.store = FactStore(base);
  run.snapshots.push_back(base);
  NullFactory nulls;
  const bool datalog = program.is_datalog();
  for (std::size_t k = 1;; ++k) {
    if (k > cap) {
      throw CapExceeded("full EG expansion did not reach a fixpoint within " + std::to_string(cap) + " levels",
                        run.snapshots.back(), cap);
    }
    const NodeId first_new = run.graph.next_id();
    run.graph = expand_full_eg(run.graph, program, k);
    std::vector<NodeId> fresh;
    for (NodeId v : run.graph.node_ids())
      if (v >= first_new) fresh.push_back(v);
    MaterializeStats stats;
    materialize_nodes(run.graph, fresh, run.store, nulls, &stats);
    run.triggers += stats.triggers;

    Instance level = run.snapshots.back();
    for (NodeId v : fresh) level.merge(run.store.facts(v));
    const Instance& prev = run.snapshots.back();
    const bool fixpoint = datalog ? level == prev : (level.size() == prev.size() || entails(prev, level));
    run.snapshots.push_back(std::move(level));
    if (fixpoint) {
      run.levels = k;
      return run;
    }
  }
}

}  // namespace tgr
