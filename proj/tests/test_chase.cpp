#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tgr/chase.hpp"
#include "tgr/errors.hpp"

using namespace tgr;
using fixtures::atom;
using fixtures::c;

namespace {

const Instance kB{atom("r", {"c1", "c2"})};

ChaseConfig variant(ChaseVariant v) {
  ChaseConfig cfg;
  cfg.variant = v;
  return cfg;
}

// Random Datalog program over e/2, f/1 with intensional P/2, Q/1.
Program random_datalog(std::mt19937_64& rng) {
  const char* vars[] = {"X", "Y", "Z"};
  std::string text;
  const int rules = 1 + static_cast<int>(rng() % 5);
  for (int r = 0; r < rules; ++r) {
    auto v = [&] { return std::string(vars[rng() % 3]); };
    std::string body;
    std::vector<std::string> seen;
    const int atoms = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < atoms; ++i) {
      const std::string a = v(), b = v();
      seen.push_back(a);
      seen.push_back(b);
      const char* pred = (rng() % 2) ? (rng() % 2 ? "e" : "P") : (rng() % 2 ? "e" : "P");
      if (!body.empty()) body += ", ";
      body += std::string(pred) + "(" + a + "," + b + ")";
    }
    const std::string h1 = seen[rng() % seen.size()], h2 = seen[rng() % seen.size()];
    text += body + " -> " + (rng() % 2 ? "P(" + h1 + "," + h2 + ")" : "Q(" + h1 + ")") + "\n";
  }
  text += "e(X,Y) -> P(X,Y)\n";
  return parse_program(text);
}

}  // namespace

TEST(Chase, P1Restricted) {
  const auto result = chase(fixtures::program(fixtures::kP1), kB);
  EXPECT_EQ(result.rounds, 3u);
  EXPECT_EQ(result.derived(), 3u);
  Instance expected{atom("r", {"c1", "c2"}), atom("R", {"c1", "c2"}), atom("T", {"c2", "c1", "c2"})};
  expected.insert(Atom("T", {c("c2"), c("c1"), Term::null(1)}));
  EXPECT_EQ(result.final_instance, expected);
  ASSERT_EQ(result.per_round.size(), 3u);
  EXPECT_EQ(result.per_round[0].applied, 2u);
  EXPECT_EQ(result.per_round[1].applied, 1u);
  EXPECT_EQ(result.per_round[2].applied, 0u);
  EXPECT_EQ(result.per_round[2].computed, 1u);
}

TEST(Chase, P1TriggerCount) {
  const auto m = trigger_count(chase(fixtures::program(fixtures::kP1), kB));
  EXPECT_EQ(m.computed, 4u);
  EXPECT_EQ(m.applied, 3u);
}

TEST(Chase, EmptyBase) {
  for (auto v : {ChaseVariant::Restricted, ChaseVariant::Skolem, ChaseVariant::Equivalent}) {
    const auto result = chase(fixtures::program(fixtures::kP1), Instance{}, variant(v));
    EXPECT_TRUE(result.final_instance.empty());
    EXPECT_EQ(result.triggers_computed, 0u);
    EXPECT_EQ(trigger_count(result).applied, 0u);
  }
}

TEST(Chase, VariantsAgreeOnP1) {
  const Program p = fixtures::program(fixtures::kP1);
  const auto restricted = chase(p, kB, variant(ChaseVariant::Restricted)).final_instance;
  const auto equiv = chase(p, kB, variant(ChaseVariant::Equivalent)).final_instance;
  const auto skolem = chase(p, kB, variant(ChaseVariant::Skolem)).final_instance;
  EXPECT_TRUE(equivalent(restricted, equiv));
  EXPECT_TRUE(equivalent(restricted, skolem));
}

TEST(Chase, RecordSteps) {
  ChaseConfig cfg = variant(ChaseVariant::Equivalent);
  cfg.record_steps = true;
  const auto result = chase(fixtures::program(fixtures::kP1), kB, cfg);
  ASSERT_EQ(result.steps.size(), result.rounds + 1);
  EXPECT_EQ(result.steps[0], kB);
  EXPECT_EQ(result.steps.back(), result.final_instance);
}

TEST(Chase, CapExceeded) {
  const Program p = parse_program("e(X) -> S(X,Y)\nS(X,Y) -> S(Y,Z)");
  ChaseConfig cfg = variant(ChaseVariant::Restricted);
  cfg.round_cap = 5;
  try {
    chase(p, Instance{atom("e", {"a"})}, cfg);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.rounds(), 5u);
    EXPECT_GT(e.partial().size(), 1u);
  }
  cfg.round_cap = 0;
  EXPECT_THROW(chase(p, Instance{}, cfg), std::invalid_argument);
}

TEST(Chase, SkolemCollapsesRederivations) {
  // Both rules fire on the same frontier; skolem reuses the null per rule.
  const Program p = parse_program("e(X) -> S(X,Y)\ne(X), f(X) -> T(X)\nT(X) -> S(X,Y)");
  const auto result = chase(p, Instance{atom("e", {"a"}), atom("f", {"a"})}, variant(ChaseVariant::Skolem));
  EXPECT_EQ(result.final_instance.size(), 5u);
}

TEST(Chase, ParseVariant) {
  EXPECT_EQ(parse_chase_variant("skolem"), ChaseVariant::Skolem);
  EXPECT_EQ(to_string(ChaseVariant::Equivalent), "equivalent");
  EXPECT_THROW(parse_chase_variant("core"), std::invalid_argument);
}

TEST(ChaseGraph, P1Edges) {
  const ChaseGraph g = chase_graph(fixtures::program(fixtures::kP1), kB);
  EXPECT_TRUE(g.has_edge(atom("r", {"c1", "c2"}), "r1", atom("R", {"c1", "c2"})));
  EXPECT_TRUE(g.has_edge(atom("R", {"c1", "c2"}), "r2", atom("T", {"c2", "c1", "c2"})));
  const auto into_null = std::find_if(g.edges.begin(), g.edges.end(), [](const ChaseEdge& e) { return e.rule == "r4"; });
  ASSERT_NE(into_null, g.edges.end());
  EXPECT_EQ(into_null->from, atom("r", {"c1", "c2"}));
  EXPECT_TRUE(into_null->to.has_nulls());
  EXPECT_TRUE(g.is_acyclic());
}

TEST(ChaseGraph, CompleteAndAcyclic) {
  const Program p = parse_program("e(X,Y) -> P(X,Y)\nP(X,Y), P(Y,Z) -> P(X,Z)\nP(X,Y) -> S(Y,W)");
  Instance base;
  for (int i = 0; i < 4; ++i) base.insert(Atom("e", {c(std::to_string(i)), c(std::to_string(i + 1))}));
  const ChaseGraph g = chase_graph(p, base);
  EXPECT_TRUE(g.is_acyclic());
  for (const auto& f : g.nodes)
    if (!base.contains(f)) EXPECT_FALSE(g.incoming(f).empty()) << f.to_string();
}

TEST(ChaseGraph, LinearSingleIncoming) {
  const ChaseGraph g = chase_graph(fixtures::program(fixtures::kP1), kB);
  for (const auto& f : g.nodes)
    if (!kB.contains(f)) EXPECT_EQ(g.incoming(f).size(), 1u) << f.to_string();
}

TEST(ChaseGraph, BaseOnly) {
  const Instance base{atom("zz", {"a"})};
  const ChaseGraph g = chase_graph(fixtures::program(fixtures::kP1), base);
  EXPECT_EQ(g.nodes, base);
  EXPECT_TRUE(g.edges.empty());
}

TEST(ChaseMetrics, Json) {
  const auto result = chase(fixtures::program(fixtures::kP1), kB);
  EXPECT_EQ(chase_metrics_json(result),
            "{\n  \"variant\": \"restricted\",\n  \"rounds\": 3,\n  \"triggers_computed\": 4,\n"
            "  \"triggers_applied\": 3,\n  \"facts_base\": 1,\n  \"facts_derived\": 3\n}");
}

TEST(Chase, DatalogVariantsAgreeAndSemiNaiveSound) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 60; ++round) {
    const Program p = random_datalog(rng);
    Instance base;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 8); ++i) {
      base.insert(Atom("e", {c(std::to_string(rng() % 4)), c(std::to_string(rng() % 4))}));
    }
    const auto r = chase(p, base, variant(ChaseVariant::Restricted));
    const auto s = chase(p, base, variant(ChaseVariant::Skolem));
    const auto e = chase(p, base, variant(ChaseVariant::Equivalent));
    EXPECT_EQ(r.final_instance, s.final_instance);
    EXPECT_EQ(r.final_instance, e.final_instance);
    EXPECT_LE(r.triggers_applied, r.triggers_computed);
    ChaseConfig naive = variant(ChaseVariant::Restricted);
    naive.semi_naive = false;
    const auto n = chase(p, base, naive);
    EXPECT_EQ(n.final_instance, r.final_instance);
    EXPECT_GE(n.triggers_computed, r.triggers_computed);
  }
}

TEST(Chase, UniversalModel) {
  // Every model over {a, b} found by brute force receives the chase result.
  const Program p = parse_program("e(X) -> S(X,Y)\nS(X,Y) -> U(Y)\nU(X), e(X) -> V(X)");
  const Instance base{atom("e", {"a"})};
  const Instance result = chase(p, base, variant(ChaseVariant::Restricted)).final_instance;
  const std::vector<Atom> candidates{atom("S", {"a", "a"}), atom("S", {"a", "b"}), atom("S", {"b", "a"}),
                                     atom("S", {"b", "b"}), atom("U", {"a"}),      atom("U", {"b"}),
                                     atom("V", {"a"}),      atom("V", {"b"})};
  std::size_t models = 0;
  for (unsigned mask = 0; mask < (1u << candidates.size()); ++mask) {
    Instance m = base;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (mask & (1u << i)) m.insert(candidates[i]);
    // Is m a model: every trigger's head has an extension in m.
    bool model = true;
    for (const auto& rule : p.rules()) {
      for (const auto& h : find_homomorphisms(rule.body, m)) {
        if (!exists_homomorphism(std::vector{h.apply(rule.head)}, m)) model = false;
      }
    }
    if (!model) continue;
    ++models;
    EXPECT_TRUE(entails(m, result));
  }
  EXPECT_GT(models, 0u);
}
