#include "tgr/datalog_opt.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "tgr/errors.hpp"
#include "tgr/normalize.hpp"
#include "tgr/unify.hpp"

namespace tgr {

namespace {

struct RewriteItem {
  Atom atom;
  std::optional<NodeId> node;
  std::pair<NodeId, std::uint32_t> origin;
};

Rule rename_apart(const Rule& rule, std::size_t step) {
  TermMapping renaming;
  const std::string suffix = "~" + std::to_string(step);
  auto visit = [&](const Atom& a) {
    for (Term t : a.args)
      if (t.is_variable() && !renaming.contains(t)) renaming.set(t, Term::variable(std::string(t.name()) + suffix));
  };
  for (const auto& a : rule.body) visit(a);
  visit(rule.head);
  Rule out = rule;
  out.body = renaming.apply(rule.body);
  out.head = renaming.apply(rule.head);
  return out;
}

}  // namespace

NodeRewriting eg_rewriting(NodeId v, const ExecutionGraph& g, const Program& program) {
  NodeRewriting out;
  out.node = v;
  const Rule& top = g.rule(v);
  out.query.head = top.head.args;
  std::vector<RewriteItem> items{{top.head, v, {0, 0}}};

  for (std::size_t step = 0;; ++step) {
    auto it = std::find_if(items.begin(), items.end(), [](const RewriteItem& i) { return i.node.has_value(); });
    if (it == items.end()) break;
    const NodeId u = *it->node;
    if (!g.rule(u).is_datalog()) {
      throw RewritingError("node " + std::to_string(u) + " (" + g.rule(u).id + ") has an existential rule");
    }
    const Rule rule = rename_apart(g.rule(u), step);
    const Atom pair[] = {rule.head, it->atom};
    const auto theta = mgu(pair);
    if (!theta) {
      out.unsatisfiable = true;
      out.expanded.push_back(u);
      out.query.body.clear();
      out.origin.clear();
      return out;
    }

    std::vector<RewriteItem> spliced;
    for (std::uint32_t j = 1; j <= rule.body.size(); ++j) {
      const Atom& b = rule.body[j - 1];
      auto parent = g.parent(u, j);
      if (!parent && program.is_intensional(b.predicate)) {
        throw RewritingError("node " + std::to_string(u) + " (" + rule.id + ") has no parent at position " +
                             std::to_string(j));
      }
      spliced.push_back({b, parent, {u, j}});
    }
    const auto pos = static_cast<std::size_t>(it - items.begin());
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(pos));
    items.insert(items.begin() + static_cast<std::ptrdiff_t>(pos), spliced.begin(), spliced.end());
    for (auto& item : items) item.atom = theta->apply(item.atom);
    out.query.head = theta->apply(out.query.head);
    out.expanded.push_back(u);

    // Identical atoms bound to the same node (or to B) are one constraint.
    std::vector<RewriteItem> unique;
    for (auto& item : items) {
      const bool seen = std::any_of(unique.begin(), unique.end(), [&](const RewriteItem& x) {
        return x.node == item.node && x.atom == item.atom;
      });
      if (!seen) unique.push_back(std::move(item));
    }
    items = std::move(unique);
  }

  for (auto& item : items) {
    out.query.body.push_back(item.atom);
    out.origin.push_back(item.origin);
  }
  return out;
}

bool rewriting_contained(const NodeRewriting& a, const NodeRewriting& b) {
  if (a.query.head.size() != b.query.head.size()) {
    throw std::invalid_argument("containment between rewritings of different head arity");
  }
  if (a.unsatisfiable) return true;
  if (b.unsatisfiable) return false;
  return cq_contained(a.query, b.query);
}

const NodeRewriting& DatalogMinimizer::rewriting(const ExecutionGraph& g, NodeId v) {
  auto it = cache_.find(v);
  if (it == cache_.end()) it = cache_.emplace(v, eg_rewriting(v, g, program_)).first;
  return it->second;
}

std::vector<NodeId> DatalogMinimizer::minimize(ExecutionGraph& g, const std::set<NodeId>* candidates,
                                               MinDatalogStats* stats, bool strictly_shallower) {
  std::vector<NodeId> removed;
  // Containment verdicts for the current rewritings; dropped with them.
  std::map<std::pair<NodeId, NodeId>, bool> verdicts;
  auto contained = [&](NodeId a, NodeId b) {
    auto [it, fresh] = verdicts.try_emplace({a, b}, false);
    if (fresh) {
      const std::size_t cached = cache_.size();
      const NodeRewriting& ra = rewriting(g, a);
      const NodeRewriting& rb = rewriting(g, b);
      if (stats) {
        stats->rewritings += cache_.size() - cached;
        ++stats->containment_tests;
      }
      it->second = rewriting_contained(ra, rb);
    }
    return it->second;
  };

  for (;;) {
    const auto depth = g.depths();
    const auto ids = g.node_ids();
    std::optional<std::pair<NodeId, NodeId>> hit;
    for (NodeId v : ids) {
      if (candidates && !candidates->count(v)) continue;
      const Symbol head = g.rule(v).head.predicate;
      for (NodeId u : ids) {
        if (u == v || g.rule(u).head.predicate != head || depth.at(v) < depth.at(u)) continue;
        if (strictly_shallower && depth.at(v) == depth.at(u)) continue;
        if (!contained(v, u)) continue;
        const bool u_removable = !candidates || candidates->count(u);
        if (depth.at(v) == depth.at(u) && v < u && u_removable && contained(u, v)) continue;
        hit.emplace(v, u);
        break;
      }
      if (hit) break;
    }
    if (!hit) return removed;

    const auto [v, u] = *hit;
    const auto moved = g.descendants(v);
    for (const auto& e : g.out_edges(v)) g.add_edge(u, e.position, e.to);
    g.remove_node(v);
    removed.push_back(v);
    if (stats) ++stats->removed;
    forget(v);
    for (NodeId w : moved) forget(w);
    std::erase_if(verdicts, [&](const auto& entry) {
      const auto [a, b] = entry.first;
      return a == v || b == v || moved.count(a) || moved.count(b);
    });
  }
}

ExecutionGraph min_datalog(const ExecutionGraph& g, const Program& program, MinDatalogStats* stats) {
  ExecutionGraph out = g;
  DatalogMinimizer(program).minimize(out, nullptr, stats);
  return out;
}

ExecStats& ExecStats::operator+=(const ExecStats& o) {
  candidates += o.candidates;
  selector_tuples += o.selector_tuples;
  derived += o.derived;
  cost += o.cost;
  return *this;
}

namespace {

using Mappings = std::vector<TermMapping>;

std::size_t relation_size(const Atom& a, const FactIndex& target) { return target.lookup(a.predicate).size(); }

Mappings extend(const Mappings& current, const Atom& atom, const FactIndex& target) {
  Mappings out;
  for (const auto& m : current) {
    for_each_homomorphism(std::span<const Atom>(&atom, 1), target, m, [&](const TermMapping& h) {
      out.push_back(h);
      return true;
    });
  }
  return out;
}

std::size_t count_predicate(const Instance& facts, Symbol predicate) {
  std::size_t n = 0;
  for (const auto& f : facts)
    if (f.predicate == predicate) ++n;
  return n;
}

// Joins the body atoms other than `skip` into `current`, left to right.
void join_rest(Mappings& current, std::size_t& cost, const std::vector<Atom>& body,
               const std::vector<const FactIndex*>& targets, std::optional<std::size_t> skip) {
  for (std::size_t j = 0; j < body.size(); ++j) {
    if (skip && *skip == j) continue;
    cost += std::min(current.size(), relation_size(body[j], *targets[j]));
    current = extend(current, body[j], *targets[j]);
  }
}

std::optional<TermMapping> bind_head(const Atom& head, const Tuple& t) {
  TermMapping m;
  for (std::size_t p = 0; p < head.args.size(); ++p) {
    const Term x = head.args[p];
    if (x.is_variable()) {
      if (auto bound = m.get(x); bound && *bound != t[p]) return std::nullopt;
      m.set(x, t[p]);
    } else if (x != t[p]) {
      return std::nullopt;
    }
  }
  return m;
}

Instance plain_run(const Rule& rule, const std::vector<const FactIndex*>& targets, const Instance& existing,
                   ExecStats* stats) {
  ExecStats local;
  Mappings current{TermMapping{}};
  current = extend(current, rule.body[0], *targets[0]);
  if (rule.body.size() == 1) local.cost += relation_size(rule.body[0], *targets[0]);
  join_rest(current, local.cost, rule.body, targets, std::size_t{0});
  local.candidates = current.size();
  Instance produced;
  for (const auto& h : current) produced.insert(h.apply(rule.head));
  local.cost += std::min(produced.size(), count_predicate(existing, rule.head.predicate));
  Instance out = produced.minus(existing);
  local.derived = out.size();
  if (stats) *stats += local;
  return out;
}

std::vector<std::size_t> pick_selector(const ConjunctiveQuery& q, const FactIndex& base, const Instance& existing,
                                       Symbol head_predicate) {
  const auto wanted = q.head_variables();
  auto covers = [&](const std::vector<std::size_t>& atoms) {
    return std::all_of(wanted.begin(), wanted.end(), [&](Term y) {
      return std::any_of(atoms.begin(), atoms.end(), [&](std::size_t i) {
        const auto& args = q.body[i].args;
        return std::find(args.begin(), args.end(), y) != args.end();
      });
    });
  };

  std::optional<std::size_t> best;
  std::size_t best_join = 0;
  for (std::size_t i = 0; i < q.body.size(); ++i) {
    if (!covers({i})) continue;
    std::size_t join = 0;
    for (const auto& t : answer_cq(ConjunctiveQuery{q.head, {q.body[i]}}, base))
      if (existing.contains(Atom{head_predicate, t})) ++join;
    if (!best || join > best_join) {
      best = i;
      best_join = join;
    }
  }
  if (best) return {*best};

  // Every head variable occurs in some atom, so a cover of size |Y| exists.
  for (std::size_t size = 2; size <= q.body.size(); ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      if (covers(pick)) return pick;
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == q.body.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::vector<std::size_t> all(q.body.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

// `own` is the rule-body index of the selector atom when Q' is a single atom
// of the rule's own body, so it can seed the join directly.
Instance antijoin_run(const Rule& rule, const std::vector<const FactIndex*>& targets, const ConjunctiveQuery& q,
                      const std::vector<std::size_t>& selector, std::optional<std::size_t> own, const FactIndex& base,
                      const Instance& existing, ExecStats* stats) {
  ExecStats local;
  local.selector = selector.size() == 1 ? static_cast<int>(selector[0]) : -1;
  ConjunctiveQuery restricted{q.head, {}};
  for (std::size_t i : selector) restricted.body.push_back(q.body[i]);
  const AnswerSet answers = answer_cq(restricted, base);
  local.selector_tuples = answers.size();
  local.cost += std::min(answers.size(), count_predicate(existing, rule.head.predicate));

  Mappings current;
  for (const auto& t : answers) {
    if (existing.contains(Atom{rule.head.predicate, t})) continue;
    if (auto m = bind_head(rule.head, t)) current.push_back(std::move(*m));
  }
  if (own) current = extend(current, rule.body[*own], *targets[*own]);
  join_rest(current, local.cost, rule.body, targets, own);
  local.candidates = current.size();
  Instance out;
  for (const auto& h : current) out.insert(h.apply(rule.head));
  local.derived = out.size();
  if (stats) *stats += local;
  return out;
}

std::vector<const FactIndex*> node_targets(const ExecutionGraph& g, NodeId v, IndexCache& indexes) {
  const Rule& rule = g.rule(v);
  std::vector<const FactIndex*> targets(rule.body.size());
  for (std::uint32_t i = 1; i <= rule.body.size(); ++i) {
    const auto parent = g.parent(v, i);
    targets[i - 1] = parent ? &indexes.node(*parent) : &indexes.base();
  }
  return targets;
}

Instance exec_plain_cached(NodeId v, const ExecutionGraph& g, IndexCache& indexes, const Instance& existing,
                           ExecStats* stats) {
  return plain_run(g.rule(v), node_targets(g, v, indexes), existing, stats);
}

Instance exec_under_cached(NodeId v, const ExecutionGraph& g, const NodeRewriting& rew, IndexCache& indexes,
                           const Instance& existing, ExecStats* stats) {
  if (rew.unsatisfiable) return {};
  const Rule& rule = g.rule(v);
  const auto selector = pick_selector(rew.query, indexes.base(), existing, rule.head.predicate);
  std::optional<std::size_t> own;
  if (selector.size() == 1 && rew.origin[selector[0]].first == v) own = rew.origin[selector[0]].second - 1;
  return antijoin_run(rule, node_targets(g, v, indexes), rew.query, selector, own, indexes.base(), existing, stats);
}

}  // namespace

std::vector<std::size_t> choose_selector(const NodeRewriting& rewriting, const Instance& base,
                                         const Instance& existing, Symbol head_predicate) {
  return pick_selector(rewriting.query, FactIndex(base), existing, head_predicate);
}

Instance exec_node_plain(NodeId v, const ExecutionGraph& g, const FactStore& store, const Instance& existing,
                         ExecStats* stats) {
  IndexCache indexes(store);
  return exec_plain_cached(v, g, indexes, existing, stats);
}

Instance exec_node_under(NodeId v, const ExecutionGraph& g, const NodeRewriting& rewriting, const FactStore& store,
                         const Instance& existing, ExecStats* stats) {
  IndexCache indexes(store);
  return exec_under_cached(v, g, rewriting, indexes, existing, stats);
}

TgMatResult tg_mat(const Program& program, const Instance& base, const TgMatOptions& options) {
  if (!program.is_datalog()) throw UnsupportedProgram("tg_mat requires a Datalog program");
  const Program normalized = normalize_program(program);
  FactStore store(base);
  IndexCache indexes(store);
  DatalogMinimizer minimizer(normalized);
  ExecutionGraph g;
  Instance derived;
  TgMatMetrics metrics;

  auto partial = [&] {
    Instance out = base;
    out.merge(derived);
    return normalized.strip_internal(out);
  };
  auto eligible = [&](NodeId v) { return !store.facts(v).empty(); };

  for (std::size_t k = 1;; ++k) {
    if (k > options.cap) {
      throw CapExceeded("TGmat did not reach a fixpoint within " + std::to_string(options.cap) + " levels", partial(),
                        options.cap);
    }
    const NodeId first_new = g.next_id();
    g = expand_full_eg(g, normalized, k, eligible);
    if (g.node_count() > options.max_nodes) {
      throw CapExceeded("execution graph exceeded " + std::to_string(options.max_nodes) + " nodes", partial(), k - 1);
    }
    std::set<NodeId> fresh;
    for (NodeId v : g.node_ids())
      if (v >= first_new) fresh.insert(v);

    TgMatRoundTrace trace;
    trace.level = k;
    trace.nodes_added = fresh.size();
    if (options.use_min) {
      // A node's stored facts are only those no earlier node derived, so an
      // equal-depth keeper need not reproduce what the removed node would
      // have derived. A strictly shallower keeper's facts are all in I
      // already, which makes the removed node's output empty.
      for (NodeId v : minimizer.minimize(g, &fresh, nullptr, true)) fresh.erase(v);
      trace.nodes_removed = trace.nodes_added - fresh.size();
    }

    // Nodes run in id order against the facts derived so far, so every fact
    // is stored at exactly one node and no trigger is enumerated twice.
    const std::size_t before = derived.size();
    for (NodeId v : fresh) {
      ExecStats stats;
      Instance facts = options.use_exec ? exec_under_cached(v, g, minimizer.rewriting(g, v), indexes, derived, &stats)
                                        : exec_plain_cached(v, g, indexes, derived, &stats);
      derived.merge(facts);
      store.facts_mut(v) = std::move(facts);
      indexes.invalidate(v);
      metrics.triggers += stats.candidates;
      metrics.tuples_examined += stats.cost;
    }
    trace.facts_added = derived.size() - before;
    metrics.per_round.push_back(trace);
    if (trace.facts_added == 0) {
      metrics.rounds = k;
      break;
    }
  }

  TgMatResult result;
  result.final_instance = partial();
  metrics.tg_nodes = g.node_count();
  metrics.tg_edges = g.edge_count();
  metrics.tg_depth = g.depth();
  metrics.facts_derived = result.final_instance.size() - base.size();
  result.graph = std::move(g);
  result.metrics = std::move(metrics);
  return result;
}

nlohmann::ordered_json tgmat_metrics_json(const TgMatMetrics& m) {
  nlohmann::ordered_json j;
  j["rounds"] = m.rounds;
  j["triggers"] = m.triggers;
  j["tuples_examined"] = m.tuples_examined;
  j["tg_nodes"] = m.tg_nodes;
  j["tg_edges"] = m.tg_edges;
  j["tg_depth"] = m.tg_depth;
  j["facts_derived"] = m.facts_derived;
  return j;
}

ExecutionCost execution_cost(const Program& program, const Instance& base, bool antijoin) {
  const FactIndex base_index(base);
  Instance derived;
  ExecutionCost out;
  for (const auto& rule : program.rules()) {
    if (!program.is_extensional_rule(rule)) continue;
    if (!rule.is_datalog()) throw UnsupportedProgram("execution_cost requires Datalog rules");
    const std::vector<const FactIndex*> targets(rule.body.size(), &base_index);
    ExecStats stats;
    Instance facts;
    if (antijoin) {
      const ConjunctiveQuery q{rule.head.args, rule.body};
      const auto selector = pick_selector(q, base_index, derived, rule.head.predicate);
      std::optional<std::size_t> own;
      if (selector.size() == 1) own = selector[0];
      facts = antijoin_run(rule, targets, q, selector, own, base_index, derived, &stats);
    } else {
      facts = plain_run(rule, targets, derived, &stats);
    }
    derived.merge(facts);
    out.per_rule.push_back(stats.cost);
    out.total += stats.cost;
  }
  return out;
}

}  // namespace tgr
