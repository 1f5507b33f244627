#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tgr/chase.hpp"
#include "tgr/homomorphism.hpp"
#include "tgr/program.hpp"

namespace tgr {

using NodeId = std::uint32_t;

// from ->_position to. Positions are 1-based body indexes of the target's rule.
struct EgEdge {
  NodeId from = 0;
  std::uint32_t position = 0;
  NodeId to = 0;
  friend auto operator<=>(const EgEdge&, const EgEdge&) = default;
};

// Acyclic digraph whose nodes are labeled with rules and whose edges say
// which node's facts feed which body atom. Node ids are assigned in creation
// order starting at 1 and never reused.
class ExecutionGraph {
 public:
  NodeId add_node(Rule rule);
  // Throws std::invalid_argument when either endpoint is unknown.
  void add_edge(NodeId from, std::uint32_t position, NodeId to);
  // Removes the node and all incident edges.
  void remove_node(NodeId id);
  void remove_edge(const EgEdge& edge) { edges_.erase(edge); }

  bool contains(NodeId id) const { return nodes_.count(id) > 0; }
  const Rule& rule(NodeId id) const { return nodes_.at(id); }
  std::vector<NodeId> node_ids() const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }
  const std::set<EgEdge>& edges() const { return edges_; }
  NodeId next_id() const { return next_id_; }

  std::vector<EgEdge> in_edges(NodeId id) const;
  std::vector<EgEdge> out_edges(NodeId id) const;
  // The node feeding `position` of `id`'s body, if any (lowest id when the
  // graph is malformed and has several).
  std::optional<NodeId> parent(NodeId id, std::uint32_t position) const;

  // Nodes in an order where every edge goes forward; nullopt on a cycle.
  std::optional<std::vector<NodeId>> topological_order() const;
  // Length, in nodes, of the longest path ending at each node (roots have
  // depth 1). Throws std::logic_error on a cycle.
  std::map<NodeId, std::size_t> depths() const;
  // 0 for the empty graph.
  std::size_t depth() const;

  std::set<NodeId> ancestors(NodeId id) const;
  std::set<NodeId> descendants(NodeId id) const;

 private:
  std::map<NodeId, Rule> nodes_;
  std::set<EgEdge> edges_;
  NodeId next_id_ = 1;
};

// {"nodes":[{"id":1,"rule":"r1"},...],"edges":[{"from":1,"pos":1,"to":3},...]}
nlohmann::ordered_json eg_to_json(const ExecutionGraph& g);
// Resolves rule ids against `program`. Node ids are preserved.
ExecutionGraph eg_from_json(const nlohmann::json& j, const Program& program);

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

// Checks the execution-graph invariants against `program`. Intensional
// nodes lacking a parent for some body position are reported as warnings.
ValidationReport validate_eg(const ExecutionGraph& g, const Program& program);

// Per-node fact sets v(B) plus the base instance B.
class FactStore {
 public:
  FactStore() = default;
  explicit FactStore(Instance base) : base_(std::move(base)) {}

  const Instance& base() const { return base_; }
  // Empty for nodes without facts.
  const Instance& facts(NodeId id) const;
  Instance& facts_mut(NodeId id) { return nodes_[id]; }
  bool has_node(NodeId id) const { return nodes_.count(id) > 0; }
  void erase(NodeId id) { nodes_.erase(id); }
  const std::map<NodeId, Instance>& nodes() const { return nodes_; }

  // B ∪ ⋃ v(B)
  Instance union_all() const;

 private:
  Instance base_;
  std::map<NodeId, Instance> nodes_;
};

// Lazily built indexes over a store's base and node fact sets.
class IndexCache {
 public:
  explicit IndexCache(const FactStore& store) : store_(store) {}
  const FactIndex& base();
  const FactIndex& node(NodeId id);
  void invalidate(NodeId id) { nodes_.erase(id); }

 private:
  const FactStore& store_;
  std::optional<FactIndex> base_;
  std::map<NodeId, FactIndex> nodes_;
};

// Visits the triggers of node v: homomorphisms of the body into B for an
// extensional rule, or mapping body atom i into the facts of the parent at
// position i otherwise. A node missing a parent has no triggers. Returns
// false when the visitor stopped the enumeration.
bool for_each_node_trigger(const ExecutionGraph& g, NodeId v, IndexCache& indexes, const TermMapping& fixed,
                           const HomomorphismVisitor& visit);

// h_s(head): extends the trigger with fresh nulls for existentials.
Atom instantiate_head(const Rule& rule, const TermMapping& trigger, NullFactory& nulls);

struct MaterializeStats {
  std::size_t triggers = 0;
};

// Guided materialization. Nodes are processed in topological order; each
// node's fact set is computed from its parents' sets.
FactStore materialize(const ExecutionGraph& g, const Instance& base);
FactStore materialize(const ExecutionGraph& g, const Instance& base, NullFactory& nulls,
                      MaterializeStats* stats = nullptr);
// Computes the fact sets of `nodes` (which must come after all their
// parents in the given order) into an existing store.
void materialize_nodes(const ExecutionGraph& g, const std::vector<NodeId>& nodes, FactStore& store,
                       NullFactory& nulls, MaterializeStats* stats = nullptr);

// Samples TG status on one base instance: the guided materialization and
// the chase result are homomorphically equivalent. Propagates CapExceeded.
bool is_tg_for(const ExecutionGraph& g, const Program& program, const Instance& base,
               const ChaseConfig& config = {.variant = ChaseVariant::Equivalent});

// Grows the level-(k-1) graph to level k. k = 1 adds a node per
// extensional rule; k >= 2 adds, for every intensional rule and every
// k-compatible parent combination not already present, a fresh node with
// the corresponding edges. Requires a normalized program.
ExecutionGraph expand_full_eg(const ExecutionGraph& previous, const Program& program, std::size_t k);
// Same, drawing parents only from nodes accepted by `eligible`.
ExecutionGraph expand_full_eg(const ExecutionGraph& previous, const Program& program, std::size_t k,
                              const std::function<bool(NodeId)>& eligible);

struct FullEgRun {
  ExecutionGraph graph;
  FactStore store;
  // Level at which the fixpoint was detected.
  std::size_t levels = 0;
  // snapshots[k] = G^k(B); snapshots[0] = B.
  std::vector<Instance> snapshots;
  std::size_t triggers = 0;
};

// Expands and materializes level by level until G^{k-1}(B) = G^k(B)
// (Datalog) or G^{k-1}(B) |= G^k(B) (existential rules). Throws
// CapExceeded after `cap` levels.
FullEgRun expand_until_fixpoint(const Program& program, const Instance& base, std::size_t cap = 32);

}  // namespace tgr
