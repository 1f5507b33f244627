#include "tgr/chase.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace tgr {

std::string to_string(ChaseVariant v) {
  switch (v) {
    case ChaseVariant::Restricted:
      return "restricted";
    case ChaseVariant::Skolem:
      return "skolem";
    case ChaseVariant::Equivalent:
      return "equivalent";
  }
  return "?";
}

ChaseVariant parse_chase_variant(std::string_view name) {
  if (name == "restricted") return ChaseVariant::Restricted;
  if (name == "skolem") return ChaseVariant::Skolem;
  if (name == "equivalent") return ChaseVariant::Equivalent;
  throw std::invalid_argument("unknown chase variant '" + std::string(name) + "'");
}

std::vector<const ChaseEdge*> ChaseGraph::incoming(const Atom& fact) const {
  std::vector<const ChaseEdge*> out;
  for (const auto& e : edges)
    if (e.to == fact) out.push_back(&e);
  return out;
}

bool ChaseGraph::has_edge(const Atom& from, std::string_view rule, const Atom& to) const {
  for (const auto& e : edges)
    if (e.from == from && e.rule == rule && e.to == to) return true;
  return false;
}

bool ChaseGraph::is_acyclic() const {
  std::unordered_map<Atom, std::vector<const Atom*>, AtomHash> succ;
  std::unordered_map<Atom, std::size_t, AtomHash> indegree;
  for (const auto& f : nodes) indegree.emplace(f, 0);
  for (const auto& e : edges) {
    succ[e.from].push_back(&e.to);
    ++indegree[e.to];
    indegree.emplace(e.from, 0);
  }
  std::vector<Atom> ready;
  for (const auto& [f, d] : indegree)
    if (d == 0) ready.push_back(f);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Atom f = std::move(ready.back());
    ready.pop_back();
    ++seen;
    for (const Atom* t : succ[f])
      if (--indegree[*t] == 0) ready.push_back(*t);
  }
  return seen == indegree.size();
}

namespace {

struct EdgeKey {
  const Atom* from;
  std::size_t rule;
  const Atom* to;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept {
    return std::hash<const void*>{}(k.from) * 31 + k.rule * 131 + std::hash<const void*>{}(k.to);
  }
};

using SkolemKey = std::tuple<std::size_t, Term, std::vector<Term>>;

std::vector<Term> nulls_of(const Atom& a) {
  std::vector<Term> out;
  for (Term t : a.args)
    if (t.is_null()) out.push_back(t);
  return out;
}

class ChaseRun {
 public:
  ChaseRun(const Program& program, const Instance& base, const ChaseConfig& config)
      : program_(program), config_(config), current_(base), live_(current_) {
    result_.variant = config.variant;
    result_.base_size = base.size();
    if (config_.record_graph) {
      graph_.emplace();
      graph_->nodes = base;
    }
    for (const auto& f : current_) delta_.insert(f);
    if (config_.record_steps) result_.steps.push_back(current_);
  }

  ChaseResult run() {
    if (config_.round_cap == 0) throw std::invalid_argument("round cap must be at least 1");
    for (std::size_t round = 1;; ++round) {
      if (round > config_.round_cap) {
        throw CapExceeded("chase did not terminate within " + std::to_string(config_.round_cap) + " rounds",
                          current_, config_.round_cap);
      }
      const bool done = step();
      result_.rounds = round;
      if (config_.record_steps) result_.steps.push_back(current_);
      if (done) break;
    }
    result_.final_instance = std::move(current_);
    if (graph_) {
      graph_->nodes = result_.final_instance;
      result_.graph = std::move(graph_);
    }
    return std::move(result_);
  }

 private:
  struct Trigger {
    std::size_t rule;
    TermMapping h;
  };

  // One round. Returns true when the chase terminates after it.
  bool step() {
    Instance previous_delta = std::move(delta_);
    delta_ = Instance();

    std::vector<const Atom*> all = current_.sorted_pointers();
    std::vector<const Atom*> old_facts;
    std::vector<const Atom*> new_facts;
    for (const Atom* f : all) (previous_delta.contains(*f) ? new_facts : old_facts).push_back(f);
    const FactIndex full_index(all);
    const FactIndex old_index(old_facts);
    const FactIndex delta_index(new_facts);

    std::vector<Trigger> triggers;
    const auto& rules = program_.rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const auto& body = rules[r].body;
      auto collect = [&](const TermMapping& h) {
        triggers.push_back({r, h});
        return true;
      };
      if (!config_.semi_naive) {
        for_each_homomorphism(body, full_index, {}, collect);
        continue;
      }
      for (std::size_t pivot = 0; pivot < body.size(); ++pivot) {
        std::vector<const FactIndex*> targets(body.size());
        for (std::size_t j = 0; j < body.size(); ++j) {
          targets[j] = j < pivot ? &old_index : (j == pivot ? &delta_index : &full_index);
        }
        for_each_homomorphism(body, targets, {}, collect);
      }
    }

    RoundMetrics metrics;
    for (const auto& t : triggers) {
      ++metrics.computed;
      if (apply(t)) ++metrics.applied;
    }
    result_.triggers_computed += metrics.computed;
    result_.triggers_applied += metrics.applied;
    result_.per_round.push_back(metrics);

    switch (config_.variant) {
      case ChaseVariant::Restricted:
        return metrics.applied == 0;
      case ChaseVariant::Skolem:
        return delta_.empty();
      case ChaseVariant::Equivalent:
        return delta_.empty() || previous_entails_current();
    }
    return true;
  }

  bool apply(const Trigger& t) {
    const Rule& rule = program_.rules()[t.rule];
    const auto existentials = rule.existentials();
    Atom derived;
    switch (config_.variant) {
      case ChaseVariant::Restricted: {
        const Atom partial = t.h.apply(rule.head);
        TermMapping fixed;
        for (Term n : nulls_of(partial)) fixed.set(n, n);
        const std::vector<Atom> head{partial};
        if (exists_homomorphism(head, live_, fixed)) return false;
        TermMapping ext = t.h;
        for (Term z : existentials) ext.set(z, nulls_.fresh());
        derived = ext.apply(rule.head);
        break;
      }
      case ChaseVariant::Skolem: {
        TermMapping ext = t.h;
        const auto frontier = t.h.apply(rule.frontier());
        for (Term z : existentials) {
          auto [it, inserted] = skolem_.try_emplace(SkolemKey{t.rule, z, frontier}, Term());
          if (inserted) it->second = nulls_.fresh();
          ext.set(z, it->second);
        }
        derived = ext.apply(rule.head);
        break;
      }
      case ChaseVariant::Equivalent: {
        TermMapping ext = t.h;
        for (Term z : existentials) ext.set(z, nulls_.fresh());
        derived = ext.apply(rule.head);
        break;
      }
    }

    auto [stored, inserted] = current_.emplace(derived);
    if (!inserted) return false;
    live_.add(stored);
    delta_.insert(*stored);
    if (graph_) {
      for (const auto& b : rule.body) {
        // Body facts live in current_, so their addresses identify them.
        const Atom* from = current_.find(t.h.apply(b));
        if (edge_keys_.insert(EdgeKey{from, t.rule, stored}).second) {
          graph_->edges.push_back({*from, rule.id, *stored});
        }
      }
    }
    return true;
  }

  // Step(k-1) |= Step(k). Tries the cheap witness first: the new facts map
  // into Step(k-1) while every older null stays put.
  bool previous_entails_current() {
    const Instance previous = current_.minus(delta_);
    std::unordered_set<Term> old_nulls;
    for (const auto& f : previous)
      for (Term t : f.args)
        if (t.is_null()) old_nulls.insert(t);
    std::vector<Atom> open;
    TermMapping fixed;
    for (const auto& f : delta_) {
      open.push_back(f);
      for (Term t : f.args)
        if (old_nulls.count(t)) fixed.set(t, t);
    }
    std::sort(open.begin(), open.end(), CanonicalAtomLess{});
    const FactIndex previous_index(previous);
    if (exists_homomorphism(open, previous_index, fixed)) return true;
    return entails(previous, current_);
  }

  const Program& program_;
  ChaseConfig config_;
  Instance current_;
  FactIndex live_;
  Instance delta_;
  NullFactory nulls_;
  std::map<SkolemKey, Term> skolem_;
  std::optional<ChaseGraph> graph_;
  std::unordered_set<EdgeKey, EdgeKeyHash> edge_keys_;
  ChaseResult result_;
};

}  // namespace

ChaseResult chase(const Program& program, const Instance& base, const ChaseConfig& config) {
  return ChaseRun(program, base, config).run();
}

ChaseGraph chase_graph(const Program& program, const Instance& base, std::size_t round_cap) {
  ChaseConfig config;
  config.variant = ChaseVariant::Equivalent;
  config.round_cap = round_cap;
  config.record_graph = true;
  return *chase(program, base, config).graph;
}

TriggerMetrics trigger_count(const ChaseResult& result) {
  return TriggerMetrics{result.triggers_computed, result.triggers_applied, result.per_round};
}

std::string chase_metrics_json(const ChaseResult& result) {
  nlohmann::ordered_json j;
  j["variant"] = to_string(result.variant);
  j["rounds"] = result.rounds;
  j["triggers_computed"] = result.triggers_computed;
  j["triggers_applied"] = result.triggers_applied;
  j["facts_base"] = result.base_size;
  j["facts_derived"] = result.derived();
  return j.dump(2);
}

}  // namespace tgr
