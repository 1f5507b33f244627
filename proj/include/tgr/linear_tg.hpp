#pragma once

#include <utility>
#include <vector>

#include "tgr/chase.hpp"
#include "tgr/exec_graph.hpp"
#include "tgr/program.hpp"

namespace tgr {

// H(P): one representative fact per pattern-isomorphism class of every
// extensional predicate.
struct RepresentativeSet {
  // Predicates in program registration order.
  std::vector<std::pair<Symbol, std::vector<Atom>>> by_predicate;

  const std::vector<Atom>* find(Symbol predicate) const;
  // Concatenation in predicate order.
  std::vector<Atom> all() const;
  std::size_t size() const;
};

// Set partitions of {0..n-1} as restricted-growth strings, in lexicographic
// order.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

// One fact per set partition of the argument positions, ordered by number of
// blocks descending (ties in lexicographic order). Blocks get distinct fresh
// constants c1, c2, ... drawn from one counter across all facts, skipping
// names the program already uses. When rules mention constants, partitions
// additionally get every injective assignment of blocks to those constants,
// since such facts can fire rules the fresh ones cannot.
RepresentativeSet representative_facts(const Program& program);

// Builds the union of one execution graph per representative: each edge
// f1 ->_r f2 of the chase graph of {f} becomes a node labeled r, with
// v ->_1 u whenever v derived the fact u consumed. Throws UnsupportedProgram
// for a non-linear program and CapExceeded when a chase does not terminate.
ExecutionGraph tgraph_linear(const Program& program, const ChaseConfig& config = {.variant = ChaseVariant::Equivalent});

// A homomorphism from u(B) into v(B) that fixes every null of u(B) also
// occurring in the fact set of some ancestor of u.
bool preserving_hom_exists(NodeId u, NodeId v, const ExecutionGraph& g, const FactStore& store);

// Materializations of g on every singleton {f}, f in H(P), in H(P) order.
std::vector<FactStore> representative_stores(const ExecutionGraph& g, const RepresentativeSet& reps);

// u is dominated by v: same head predicate and a preserving homomorphism
// from u({f}) into v({f}) for every f in H(P).
bool dominated(NodeId u, NodeId v, const ExecutionGraph& g, const RepresentativeSet& reps);
bool dominated(NodeId u, NodeId v, const ExecutionGraph& g, const std::vector<FactStore>& stores);

struct MinLinearStats {
  std::size_t removed = 0;
  std::size_t pairs_checked = 0;
};

// Repeatedly removes a dominated node v in favor of its dominator v', moving
// every v ->_1 w edge to v' ->_1 w. Pairs are tried by (v, v') id order;
// of two mutually dominating nodes the higher id goes. Dominators that are
// descendants of v are skipped so the graph stays acyclic.
ExecutionGraph min_linear(const ExecutionGraph& g, const Program& program, MinLinearStats* stats = nullptr);

}  // namespace tgr
