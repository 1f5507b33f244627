#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tgr/exec_graph.hpp"
#include "tgr/query.hpp"

namespace tgr {

// rew(v): a CQ over extensional predicates whose answers on B are the
// tuples of v(B).
struct NodeRewriting {
  NodeId node = 0;
  ConjunctiveQuery query;
  // origin[i] = (node, 1-based body position) the i-th body atom was
  // spliced from.
  std::vector<std::pair<NodeId, std::uint32_t>> origin;
  // Nodes in the order their rules were spliced in.
  std::vector<NodeId> expanded;
  // A unification step failed on constants: the node derives nothing.
  bool unsatisfiable = false;
};

// Starts from Q(Y) <- R(Y) with R(Y) the head of v's rule, then repeatedly
// replaces the leftmost atom associated with a node u by u's body (renamed
// apart), applying the MGU of u's head and the atom to the whole query.
// Spliced atoms are associated with u's parents at the matching positions.
// Identical body atoms are merged. Throws RewritingError when an
// intensional atom has no parent or the cone contains an existential rule.
NodeRewriting eg_rewriting(NodeId v, const ExecutionGraph& g, const Program& program);

// rew(a) is contained in rew(b). An unsatisfiable rewriting is contained in
// every rewriting of the same head arity.
bool rewriting_contained(const NodeRewriting& a, const NodeRewriting& b);

struct MinDatalogStats {
  std::size_t removed = 0;
  std::size_t containment_tests = 0;
  std::size_t rewritings = 0;
};

// Containment-based node elimination with a rewriting cache that survives
// across calls on a growing graph.
class DatalogMinimizer {
 public:
  explicit DatalogMinimizer(const Program& program) : program_(program) {}

  const NodeRewriting& rewriting(const ExecutionGraph& g, NodeId v);
  void forget(NodeId v) { cache_.erase(v); }

  // Exhaustively removes v in favor of u when depth(v) >= depth(u), both
  // heads share a predicate and rew(v) is contained in rew(u); every
  // v ->_j w becomes u ->_j w. Pairs are tried by (v, u) id order; mutual
  // containment at equal depth removes the higher id. When `candidates` is
  // given only those nodes may be removed. With `strictly_shallower` the
  // keeper must have smaller depth. Returns the removed ids.
  std::vector<NodeId> minimize(ExecutionGraph& g, const std::set<NodeId>* candidates = nullptr,
                               MinDatalogStats* stats = nullptr, bool strictly_shallower = false);

 private:
  const Program& program_;
  std::map<NodeId, NodeRewriting> cache_;
};

ExecutionGraph min_datalog(const ExecutionGraph& g, const Program& program, MinDatalogStats* stats = nullptr);

// Costs follow one model: joining two inputs costs a scan of the smaller,
// a lone scan costs its size, and checking derived facts against the
// existing head relation is a join with it.
struct ExecStats {
  // Full-body homomorphisms enumerated (triggers).
  std::size_t candidates = 0;
  // Answers to the selector query Q' examined by the antijoin.
  std::size_t selector_tuples = 0;
  // New facts returned.
  std::size_t derived = 0;
  std::size_t cost = 0;
  // Body index of the selector within rew(v), or -1 for a multi-atom Q'.
  int selector = -1;

  ExecStats& operator+=(const ExecStats& o);
};

// Plain execution of v over the parents' fact sets, joining body atoms left
// to right, then dropping facts already in `existing`.
Instance exec_node_plain(NodeId v, const ExecutionGraph& g, const FactStore& store, const Instance& existing,
                         ExecStats* stats = nullptr);

// v(B, I): execution restricted to head tuples that answer the selector
// query Q' on B and whose fact is not in I. The selector is the single
// atom of rew(v) covering the head variables with the largest join against
// the head relation in I (first in body order on ties); without such an
// atom, the smallest covering subset in body order. Returns v(B) minus I.
Instance exec_node_under(NodeId v, const ExecutionGraph& g, const NodeRewriting& rewriting, const FactStore& store,
                         const Instance& existing, ExecStats* stats = nullptr);

// Index positions of rew(v)'s body chosen as Q' for the given I.
std::vector<std::size_t> choose_selector(const NodeRewriting& rewriting, const Instance& base,
                                         const Instance& existing, Symbol head_predicate);

struct TgMatOptions {
  bool use_min = true;
  bool use_exec = true;
  std::size_t cap = 64;
  // Guards the full-EG growth when minimization is off.
  std::size_t max_nodes = 200000;
};

struct TgMatRoundTrace {
  std::size_t level = 0;
  std::size_t nodes_added = 0;
  std::size_t nodes_removed = 0;
  std::size_t facts_added = 0;
};

struct TgMatMetrics {
  std::size_t rounds = 0;
  std::size_t triggers = 0;
  std::size_t tuples_examined = 0;
  std::size_t tg_nodes = 0;
  std::size_t tg_edges = 0;
  std::size_t tg_depth = 0;
  std::size_t facts_derived = 0;
  std::vector<TgMatRoundTrace> per_round;
};

struct TgMatResult {
  // B plus every derived fact, without internal predicates.
  Instance final_instance;
  ExecutionGraph graph;
  TgMatMetrics metrics;
};

// Incremental TG-guided materialization for Datalog. Each level grows the
// graph, optionally removes new nodes whose rewriting is contained in that
// of a shallower node, then executes the new nodes in id order against the
// facts derived so far. Only nodes holding
// new facts feed later levels: a node without new facts can contribute
// nothing downstream. Stops after a level that derives nothing. Throws
// UnsupportedProgram for non-Datalog input and CapExceeded past the caps.
TgMatResult tg_mat(const Program& program, const Instance& base, const TgMatOptions& options = {});

// {rounds, triggers, tuples_examined, tg_nodes, tg_edges, tg_depth, facts_derived}
nlohmann::ordered_json tgmat_metrics_json(const TgMatMetrics& m);

struct ExecutionCost {
  std::size_t total = 0;
  // One entry per rule, in program order.
  std::vector<std::size_t> per_rule;
};

// Cost of running the extensional rules of `program` once over `base`, in
// rule order, each seeing the facts derived by the earlier ones. Plain: body
// joins left to right plus the check against the head relation. Antijoin:
// the selector atom minus the head relation, then joins of the survivors with
// the remaining atoms.
ExecutionCost execution_cost(const Program& program, const Instance& base, bool antijoin);

}  // namespace tgr
