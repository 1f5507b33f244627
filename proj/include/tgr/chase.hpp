#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgr/errors.hpp"
#include "tgr/homomorphism.hpp"
#include "tgr/program.hpp"

namespace tgr {

enum class ChaseVariant { Restricted, Skolem, Equivalent };

std::string to_string(ChaseVariant v);
// Accepts "restricted", "skolem", "equivalent".
ChaseVariant parse_chase_variant(std::string_view name);

struct ChaseConfig {
  ChaseVariant variant = ChaseVariant::Restricted;
  std::size_t round_cap = 64;
  bool record_graph = false;
  // Keep a copy of the instance after every round (steps[0] is the base).
  bool record_steps = false;
  // Semi-naive restriction: from round 2 on, every trigger uses at least one
  // fact derived in the previous round.
  bool semi_naive = true;
};

// f1 ->_rule f2: f2 was derived from f1 (and possibly other facts) by rule.
struct ChaseEdge {
  Atom from;
  std::string rule;
  Atom to;
  friend bool operator==(const ChaseEdge&, const ChaseEdge&) = default;
};

struct ChaseGraph {
  Instance nodes;
  std::vector<ChaseEdge> edges;

  std::vector<const ChaseEdge*> incoming(const Atom& fact) const;
  bool has_edge(const Atom& from, std::string_view rule, const Atom& to) const;
  bool is_acyclic() const;
};

struct RoundMetrics {
  std::size_t computed = 0;
  std::size_t applied = 0;
};

struct ChaseResult {
  ChaseVariant variant = ChaseVariant::Restricted;
  Instance final_instance;
  std::size_t base_size = 0;
  std::size_t rounds = 0;
  std::size_t triggers_computed = 0;
  std::size_t triggers_applied = 0;
  std::vector<RoundMetrics> per_round;
  std::optional<ChaseGraph> graph;
  std::vector<Instance> steps;

  std::size_t derived() const { return final_instance.size() - base_size; }
};

// Breadth-first chase. A round computes all triggers over the previous
// round's instance, then applies them in rule order and canonical
// homomorphism order:
//  - restricted: a trigger is applied when its head has no extension into
//    the current instance (including facts applied earlier in the round);
//    stops after a round that applies nothing.
//  - skolem: nulls are keyed by (rule, existential, frontier binding);
//    stops after a round that adds nothing.
//  - equivalent: every trigger fires with fresh nulls; stops at the first
//    round k with Step(k-1) |= Step(k).
// Throws CapExceeded when round_cap rounds pass without termination.
ChaseResult chase(const Program& program, const Instance& base, const ChaseConfig& config = {});

// Provenance graph of the equivalent chase.
ChaseGraph chase_graph(const Program& program, const Instance& base, std::size_t round_cap = 64);

struct TriggerMetrics {
  std::size_t computed = 0;
  std::size_t applied = 0;
  std::vector<RoundMetrics> per_round;
};

TriggerMetrics trigger_count(const ChaseResult& result);

// {variant, rounds, triggers_computed, triggers_applied, facts_base, facts_derived}
std::string chase_metrics_json(const ChaseResult& result);

}  // namespace tgr
