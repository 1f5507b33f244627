#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tgr/chase.hpp"
#include "tgr/datalog_opt.hpp"
#include "tgr/errors.hpp"
#include "tgr/normalize.hpp"

using namespace tgr;
using fixtures::atom;
using fixtures::c;

namespace {

// Random Datalog program over e/2 with intensional P/2, Q/1. Bodies may mix
// predicates; callers normalize.
Program random_datalog(std::mt19937_64& rng) {
  const char* vars[] = {"X", "Y", "Z"};
  std::string text;
  const int rules = 1 + static_cast<int>(rng() % 4);
  for (int r = 0; r < rules; ++r) {
    std::string body;
    std::vector<std::string> seen;
    const int atoms = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < atoms; ++i) {
      const std::string a = vars[rng() % 3], b = vars[rng() % 3];
      seen.push_back(a);
      seen.push_back(b);
      if (!body.empty()) body += ", ";
      body += std::string(rng() % 2 ? "e" : "P") + "(" + a + "," + b + ")";
    }
    const std::string h1 = seen[rng() % seen.size()], h2 = seen[rng() % seen.size()];
    text += body + " -> " + (rng() % 2 ? "P(" + h1 + "," + h2 + ")" : "Q(" + h1 + ")") + "\n";
  }
  text += "e(X,Y) -> P(X,Y)\n";
  return parse_program(text);
}

Instance random_base(std::mt19937_64& rng) {
  Instance base;
  const int n = 1 + static_cast<int>(rng() % 7);
  for (int i = 0; i < n; ++i) base.insert(Atom("e", {c(std::to_string(rng() % 4)), c(std::to_string(rng() % 4))}));
  return base;
}

ExecutionGraph full_eg(const Program& p, std::size_t levels) {
  ExecutionGraph g;
  for (std::size_t k = 1; k <= levels; ++k) g = expand_full_eg(g, p, k);
  return g;
}

AnswerSet fact_tuples(const Instance& facts) {
  AnswerSet out;
  for (const auto& f : facts) out.insert(f.args);
  return out;
}

ConjunctiveQuery cq(std::vector<Term> head, std::vector<Atom> body) { return {std::move(head), std::move(body)}; }

Term var(std::string_view name) { return Term::variable(name); }

}  // namespace

TEST(EgRewriting, Chain) {
  const Program p = fixtures::program(fixtures::kChain);
  ExecutionGraph g;
  const NodeId u1 = g.add_node(*p.find_rule("r10"));
  const NodeId u2 = g.add_node(*p.find_rule("r11"));
  g.add_edge(u1, 1, u2);
  const NodeRewriting rew = eg_rewriting(u2, g, p);
  const ConjunctiveQuery expected =
      cq({var("Y2"), var("Z2")}, {Atom("r", {var("Y2"), var("Z2"), var("Z1")})});
  EXPECT_TRUE(equal_up_to_renaming(rew.query, expected)) << rew.query.to_string();
  EXPECT_FALSE(rew.unsatisfiable);
  EXPECT_EQ(rew.expanded, (std::vector<NodeId>{u2, u1}));
  ASSERT_EQ(rew.origin.size(), 1u);
  EXPECT_EQ(rew.origin[0], (std::pair<NodeId, std::uint32_t>{u1, 1}));
}

TEST(EgRewriting, ExtensionalNodeIsItsBody) {
  const Program p = fixtures::program(fixtures::kP2);
  ExecutionGraph g;
  const NodeId u = g.add_node(*p.find_rule("r8"));
  const NodeRewriting rew = eg_rewriting(u, g, p);
  EXPECT_TRUE(equal_up_to_renaming(rew.query, cq({var("X")}, {Atom("a", {var("X")}), Atom("b", {var("X")})})));
}

TEST(EgRewriting, Errors) {
  const Program p = fixtures::program(fixtures::kChain);
  ExecutionGraph g;
  g.add_node(*p.find_rule("r10"));
  const NodeId orphan = g.add_node(*p.find_rule("r11"));
  EXPECT_THROW(eg_rewriting(orphan, g, p), RewritingError);
  const Program q = fixtures::program(fixtures::kP1);
  ExecutionGraph h;
  const NodeId ex = h.add_node(*q.find_rule("r4"));
  EXPECT_THROW(eg_rewriting(ex, h, q), RewritingError);
}

TEST(EgRewriting, ConstantClashIsUnsatisfiable) {
  const Program p = parse_program("s1: e(X) -> A(X,a)\ns2: A(X,b) -> B(X)");
  ExecutionGraph g;
  const NodeId u1 = g.add_node(*p.find_rule("s1"));
  const NodeId u2 = g.add_node(*p.find_rule("s2"));
  g.add_edge(u1, 1, u2);
  const NodeRewriting rew = eg_rewriting(u2, g, p);
  EXPECT_TRUE(rew.unsatisfiable);
  EXPECT_TRUE(materialize(g, Instance{atom("e", {"k"})}).facts(u2).empty());
}

TEST(EgRewriting, AnswersEqualNodeFactsOnRandomGraphs) {
  std::mt19937_64 rng(23);
  std::size_t checked = 0;
  for (int round = 0; round < 60; ++round) {
    const Program p = normalize_program(random_datalog(rng));
    const Instance base = random_base(rng);
    const ExecutionGraph g = full_eg(p, 3);
    const FactStore store = materialize(g, base);
    for (NodeId v : g.node_ids()) {
      const NodeRewriting rew = eg_rewriting(v, g, p);
      const AnswerSet expected = fact_tuples(store.facts(v));
      if (rew.unsatisfiable) {
        EXPECT_TRUE(expected.empty());
      } else {
        EXPECT_EQ(answer_cq(rew.query, base), expected) << p.to_string() << " node " << v;
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(MinDatalog, P1RemovesLevelThreeCopy) {
  const Program p = fixtures::program(fixtures::kP1Datalog);
  const ExecutionGraph g = full_eg(p, 3);
  ASSERT_EQ(g.node_count(), 3u);
  ASSERT_EQ(g.rule(3).id, "r3");
  MinDatalogStats stats;
  const ExecutionGraph m = min_datalog(g, p, &stats);
  EXPECT_EQ(m.node_ids(), (std::vector<NodeId>{1, 2}));
  EXPECT_EQ(stats.removed, 1u);
  EXPECT_GT(stats.containment_tests, 0u);
  EXPECT_EQ(materialize(m, Instance{atom("r", {"c1", "c2"})}).union_all(),
            materialize(g, Instance{atom("r", {"c1", "c2"})}).union_all());
}

TEST(MinDatalog, DistinctHeadsUnchanged) {
  const Program p = parse_program("a(X) -> A(X)\na(X) -> B(X)");
  const ExecutionGraph g = full_eg(p, 1);
  EXPECT_EQ(min_datalog(g, p).node_ids(), g.node_ids());
}

TEST(MinDatalog, IncomparableRewritingsUnchanged) {
  const Program p = fixtures::program(fixtures::kP2);
  const ExecutionGraph g = full_eg(p, 1);
  EXPECT_EQ(min_datalog(g, p).node_ids(), g.node_ids());
}

TEST(MinDatalog, RedundantBodyAtomRemovesNode) {
  // s2's rewriting has an extra atom, so it is contained in s1's.
  const Program p = parse_program("s1: a(X) -> A(X)\ns2: a(X), b(X) -> A(X)");
  const ExecutionGraph m = min_datalog(full_eg(p, 1), p);
  ASSERT_EQ(m.node_count(), 1u);
  EXPECT_EQ(m.rule(m.node_ids()[0]).id, "s1");
}

TEST(MinDatalog, PreservesResultOnRandomGraphs) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 60; ++round) {
    const Program p = normalize_program(random_datalog(rng));
    const Instance base = random_base(rng);
    const ExecutionGraph g = full_eg(p, 3);
    const ExecutionGraph m = min_datalog(g, p);
    EXPECT_LE(m.node_count(), g.node_count());
    EXPECT_TRUE(validate_eg(m, p).ok());
    EXPECT_EQ(materialize(m, base).union_all(), materialize(g, base).union_all()) << p.to_string();
  }
}

TEST(ExecNode, UnderEqualsPlainMinusExisting) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 60; ++round) {
    const Program p = normalize_program(random_datalog(rng));
    const Instance base = random_base(rng);
    const ExecutionGraph g = full_eg(p, 3);
    const FactStore store = materialize(g, base);
    const Instance all = store.union_all();
    for (NodeId v : g.node_ids()) {
      Instance existing;
      for (const auto& f : all)
        if (rng() % 2) existing.insert(f);
      ExecStats plain_stats, under_stats;
      const Instance plain = exec_node_plain(v, g, store, existing, &plain_stats);
      EXPECT_EQ(plain, store.facts(v).minus(existing));
      const NodeRewriting rew = eg_rewriting(v, g, p);
      const Instance under = exec_node_under(v, g, rew, store, existing, &under_stats);
      EXPECT_EQ(under, plain) << p.to_string() << " node " << v;
      EXPECT_LE(under_stats.candidates, plain_stats.candidates);
      EXPECT_EQ(under_stats.derived, under.size());
    }
  }
}

TEST(ExecNode, EmptyExistingMatchesPlain) {
  const Program p = fixtures::program(fixtures::kP2);
  const Instance base = fixtures::p2_data();
  const ExecutionGraph g = full_eg(p, 1);
  const FactStore store = materialize(g, base);
  for (NodeId v : g.node_ids()) {
    const Instance under = exec_node_under(v, g, eg_rewriting(v, g, p), store, Instance{});
    EXPECT_EQ(under, store.facts(v));
  }
}

TEST(ChooseSelector, PrefersLargestOverlap) {
  const Program p = fixtures::program(fixtures::kP2);
  const Instance base = fixtures::p2_data();
  ExecutionGraph g;
  const NodeId u = g.add_node(*p.find_rule("r9"));
  Instance existing;
  for (int i = 1; i <= 100; ++i) existing.insert(Atom("A", {c(std::to_string(i))}));
  // a'(X) overlaps I on 50 values, b'(X) on 49.
  EXPECT_EQ(choose_selector(eg_rewriting(u, g, p), base, existing, Symbol("A")), (std::vector<std::size_t>{0}));
}

TEST(ExecutionCost, P2) {
  const Program p = fixtures::program(fixtures::kP2);
  const Instance base = fixtures::p2_data();
  const ExecutionCost plain = execution_cost(p, base, false);
  const ExecutionCost anti = execution_cost(p, base, true);
  EXPECT_EQ(plain.total, 201u);
  EXPECT_EQ(anti.total, 152u);
  EXPECT_EQ(plain.per_rule, (std::vector<std::size_t>{100, 101}));
  EXPECT_EQ(anti.per_rule, (std::vector<std::size_t>{100, 52}));
}

TEST(TgMat, P1DatalogFragment) {
  const Program p = fixtures::program(fixtures::kP1Datalog);
  const Instance b{atom("r", {"c1", "c2"})};
  const TgMatResult result = tg_mat(p, b);
  EXPECT_EQ(result.final_instance,
            (Instance{atom("r", {"c1", "c2"}), atom("R", {"c1", "c2"}), atom("T", {"c2", "c1", "c2"})}));
  EXPECT_EQ(result.metrics.facts_derived, 2u);
  EXPECT_EQ(result.metrics.tg_nodes, result.graph.node_count());
  EXPECT_TRUE(validate_eg(result.graph, p).ok());
}

TEST(TgMat, AllOptionsMatchChase) {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 60; ++round) {
    const Program p = random_datalog(rng);
    const Instance base = random_base(rng);
    const Instance expected = chase(p, base).final_instance;
    for (bool use_min : {false, true}) {
      for (bool use_exec : {false, true}) {
        TgMatOptions opts;
        opts.use_min = use_min;
        opts.use_exec = use_exec;
        const TgMatResult r = tg_mat(p, base, opts);
        EXPECT_EQ(r.final_instance, expected) << p.to_string() << use_min << use_exec;
        EXPECT_EQ(r.metrics.facts_derived, expected.size() - base.size());
      }
    }
  }
}

TEST(TgMat, EmptyBase) {
  const TgMatResult r = tg_mat(fixtures::program(fixtures::kP3), Instance{});
  EXPECT_TRUE(r.final_instance.empty());
  EXPECT_EQ(r.metrics.facts_derived, 0u);
}

TEST(TgMat, Errors) {
  EXPECT_THROW(tg_mat(fixtures::program(fixtures::kP1), Instance{atom("r", {"c1", "c2"})}), UnsupportedProgram);
  Instance chain;
  for (int i = 0; i < 20; ++i) chain.insert(Atom("e", {c(std::to_string(i)), c(std::to_string(i + 1))}));
  TgMatOptions opts;
  opts.cap = 3;
  EXPECT_THROW(tg_mat(parse_program("e(X,Y) -> P(X,Y)\nP(X,Y), P(Y,Z) -> P(X,Z)"), chain, opts), CapExceeded);
}

TEST(TgMat, MetricsJsonKeys) {
  const TgMatResult r = tg_mat(fixtures::program(fixtures::kP1Datalog), Instance{atom("r", {"c1", "c2"})});
  const auto j = tgmat_metrics_json(r.metrics);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"rounds", "triggers", "tuples_examined", "tg_nodes", "tg_edges", "tg_depth",
                                            "facts_derived"}));
  EXPECT_EQ(j["facts_derived"], 2);
}
