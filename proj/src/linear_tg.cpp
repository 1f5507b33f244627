#include "tgr/linear_tg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tgr {

const std::vector<Atom>* RepresentativeSet::find(Symbol predicate) const {
  for (const auto& [p, facts] : by_predicate)
    if (p == predicate) return &facts;
  return nullptr;
}

std::vector<Atom> RepresentativeSet::all() const {
  std::vector<Atom> out;
  for (const auto& [p, facts] : by_predicate) out.insert(out.end(), facts.begin(), facts.end());
  return out;
}

std::size_t RepresentativeSet::size() const {
  std::size_t n = 0;
  for (const auto& [p, facts] : by_predicate) n += facts.size();
  return n;
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= blocks && (i > 0 || b == 0); ++b) {
      rgs[i] = b;
      fill(i + 1, std::max(blocks, b + 1));
    }
  };
  fill(0, 0);
  return out;
}

namespace {

std::vector<Term> program_constants(const Program& program) {
  std::set<std::string> names;
  auto scan = [&](const Atom& a) {
    for (Term t : a.args)
      if (t.is_constant()) names.insert(std::string(t.name()));
  };
  for (const auto& r : program.rules()) {
    for (const auto& a : r.body) scan(a);
    scan(r.head);
  }
  std::vector<Term> out;
  for (const auto& n : names) out.push_back(Term::constant(n));
  return out;
}

std::size_t block_count(const std::vector<std::size_t>& rgs) {
  std::size_t m = 0;
  for (std::size_t b : rgs) m = std::max(m, b + 1);
  return m;
}

}  // namespace

RepresentativeSet representative_facts(const Program& program) {
  const std::vector<Term> constants = program_constants(program);
  std::unordered_set<std::string> taken;
  for (Term c : constants) taken.insert(std::string(c.name()));
  std::size_t counter = 0;
  auto fresh = [&] {
    std::string name;
    do {
      name = "c" + std::to_string(++counter);
    } while (taken.count(name));
    return Term::constant(name);
  };

  RepresentativeSet reps;
  for (const auto& info : program.predicates()) {
    if (!info.extensional) continue;
    auto partitions = set_partitions(info.arity);
    std::stable_sort(partitions.begin(), partitions.end(),
                     [](const auto& a, const auto& b) { return block_count(a) > block_count(b); });
    std::vector<Atom> facts;
    for (const auto& rgs : partitions) {
      const std::size_t blocks = block_count(rgs);
      // choice[b] = 0 for a fresh constant, i + 1 for constants[i].
      std::vector<std::size_t> choice(blocks, 0);
      std::vector<bool> used(constants.size(), false);
      std::function<void(std::size_t)> assign = [&](std::size_t b) {
        if (b == blocks) {
          std::vector<Term> value(blocks);
          for (std::size_t i = 0; i < blocks; ++i) value[i] = choice[i] == 0 ? fresh() : constants[choice[i] - 1];
          Atom f;
          f.predicate = info.name;
          for (std::size_t pos : rgs) f.args.push_back(value[pos]);
          facts.push_back(std::move(f));
          return;
        }
        choice[b] = 0;
        assign(b + 1);
        for (std::size_t i = 0; i < constants.size(); ++i) {
          if (used[i]) continue;
          used[i] = true;
          choice[b] = i + 1;
          assign(b + 1);
          used[i] = false;
        }
      };
      assign(0);
    }
    reps.by_predicate.emplace_back(info.name, std::move(facts));
  }
  return reps;
}

ExecutionGraph tgraph_linear(const Program& program, const ChaseConfig& config) {
  if (!program.is_linear()) throw UnsupportedProgram("tgraph_linear requires a linear program");
  ChaseConfig cfg = config;
  cfg.record_graph = true;
  ExecutionGraph g;
  for (const Atom& f : representative_facts(program).all()) {
    const ChaseResult result = chase(program, Instance{f}, cfg);
    // Each derived fact has exactly one incoming chase edge for linear rules.
    std::unordered_map<Atom, NodeId, AtomHash> producer;
    for (const auto& e : result.graph->edges) {
      const NodeId v = g.add_node(*program.find_rule(e.rule));
      auto it = producer.find(e.from);
      if (it != producer.end()) g.add_edge(it->second, 1, v);
      producer.emplace(e.to, v);
    }
  }
  return g;
}

bool preserving_hom_exists(NodeId u, NodeId v, const ExecutionGraph& g, const FactStore& store) {
  const Instance& source = store.facts(u);
  std::unordered_set<Term> ancestor_nulls;
  for (NodeId a : g.ancestors(u))
    for (const auto& f : store.facts(a))
      for (Term t : f.args)
        if (t.is_null()) ancestor_nulls.insert(t);
  TermMapping fixed;
  for (const auto& f : source)
    for (Term t : f.args)
      if (ancestor_nulls.count(t)) fixed.set(t, t);
  const std::vector<Atom> atoms = source.sorted();
  return exists_homomorphism(atoms, store.facts(v), fixed);
}

std::vector<FactStore> representative_stores(const ExecutionGraph& g, const RepresentativeSet& reps) {
  std::vector<FactStore> out;
  for (const Atom& f : reps.all()) {
    NullFactory nulls;
    out.push_back(materialize(g, Instance{f}, nulls));
  }
  return out;
}

bool dominated(NodeId u, NodeId v, const ExecutionGraph& g, const std::vector<FactStore>& stores) {
  if (g.rule(u).head.predicate != g.rule(v).head.predicate) return false;
  return std::all_of(stores.begin(), stores.end(),
                     [&](const FactStore& s) { return preserving_hom_exists(u, v, g, s); });
}

bool dominated(NodeId u, NodeId v, const ExecutionGraph& g, const RepresentativeSet& reps) {
  return dominated(u, v, g, representative_stores(g, reps));
}

ExecutionGraph min_linear(const ExecutionGraph& input, const Program& program, MinLinearStats* stats) {
  const RepresentativeSet reps = representative_facts(program);
  ExecutionGraph g = input;
  for (;;) {
    const auto stores = representative_stores(g, reps);
    const auto ids = g.node_ids();
    bool removed = false;
    for (NodeId v : ids) {
      const auto below = g.descendants(v);
      for (NodeId w : ids) {
        if (w == v || below.count(w)) continue;
        if (g.rule(v).head.predicate != g.rule(w).head.predicate) continue;
        if (stats) ++stats->pairs_checked;
        if (!dominated(v, w, g, stores)) continue;
        if (v < w && dominated(w, v, g, stores)) continue;
        for (const auto& e : g.out_edges(v)) g.add_edge(w, e.position, e.to);
        g.remove_node(v);
        if (stats) ++stats->removed;
        removed = true;
        break;
      }
      if (removed) break;
    }
    if (!removed) return g;
  }
}

}  // namespace tgr
