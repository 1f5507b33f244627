#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tgr/chase.hpp"
#include "tgr/errors.hpp"
#include "tgr/normalize.hpp"
#include "tgr/parse.hpp"

using namespace tgr;
using fixtures::atom;

TEST(Term, KindsAreDisjoint) {
  EXPECT_NE(Term::constant("x"), Term::variable("x"));
  EXPECT_NE(Term::null(1), Term::null(2));
  EXPECT_EQ(Term::null(3), Term::null(3));
  EXPECT_EQ(Term::constant("a"), Term::constant("a"));
  EXPECT_EQ(Term::null(7).to_string(), "_:n7");
}

TEST(Term, CanonicalOrder) {
  EXPECT_TRUE(canonical_less(Term::constant("b"), Term::null(1)));
  EXPECT_TRUE(canonical_less(Term::null(1), Term::null(2)));
  EXPECT_TRUE(canonical_less(Term::null(9), Term::variable("A")));
  EXPECT_TRUE(canonical_less(Term::constant("a"), Term::constant("b")));
  EXPECT_FALSE(canonical_less(Term::constant("a"), Term::constant("a")));
}

TEST(Atom, EqualityIsCongruence) {
  EXPECT_EQ(atom("r", {"c1", "c2"}), atom("r", {"c1", "c2"}));
  EXPECT_NE(atom("r", {"c1", "c2"}), atom("r", {"c2", "c1"}));
  EXPECT_NE(atom("r", {"c1"}), atom("s", {"c1"}));
  EXPECT_EQ(atom("T", {"Y", "X", "Y"}).to_string(), "T(Y,X,Y)");
  EXPECT_FALSE(atom("T", {"Y", "x"}).is_ground());
}

TEST(Instance, SetSemantics) {
  Instance i;
  EXPECT_TRUE(i.insert(atom("r", {"a"})));
  EXPECT_FALSE(i.insert(atom("r", {"a"})));
  EXPECT_EQ(i.size(), 1u);
  EXPECT_TRUE(i.contains(atom("r", {"a"})));
  i.insert(Atom("r", {Term::null(1)}));
  EXPECT_TRUE(i.has_nulls());
  EXPECT_EQ(i.to_string(), "{r(a), r(_:n1)}");
  const Instance j{atom("r", {"a"})};
  EXPECT_TRUE(j.subset_of(i));
  EXPECT_EQ(i.minus(j).size(), 1u);
}

TEST(NullFactory, NeverReuses) {
  NullFactory nulls;
  const Term a = nulls.fresh();
  const Term b = nulls.fresh();
  EXPECT_NE(a, b);
  EXPECT_EQ(nulls.next_ordinal(), 3u);
}

TEST(ParseProgram, SingleRule) {
  const Program p = parse_program("r(X,Y) -> R(X,Y)");
  ASSERT_EQ(p.rules().size(), 1u);
  EXPECT_EQ(p.rules()[0].id, "r1");
  EXPECT_TRUE(p.is_extensional(Symbol("r")));
  EXPECT_TRUE(p.is_intensional(Symbol("R")));
}

TEST(ParseProgram, Existential) {
  const Program p = parse_program("r4: r(X,Y) -> T(Y,X,Z)");
  const auto ex = p.rules()[0].existentials();
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0], Term::variable("Z"));
  EXPECT_FALSE(p.is_datalog());
}

TEST(ParseProgram, Empty) {
  const Program p = parse_program("");
  EXPECT_TRUE(p.empty());
  EXPECT_TRUE(p.predicates().empty());
}

TEST(ParseProgram, CommentsIdsAndTrailingDot) {
  const Program p = parse_program("# header\nfoo: a(X), b(X) -> c(X). # tail\n\nd(X) -> e(X, k)\n");
  ASSERT_EQ(p.rules().size(), 2u);
  EXPECT_EQ(p.rules()[0].id, "foo");
  EXPECT_EQ(p.rules()[0].body.size(), 2u);
  EXPECT_EQ(p.rules()[1].id, "r2");
  EXPECT_EQ(p.rules()[1].head.args[1], Term::constant("k"));
}

TEST(ParseProgram, Errors) {
  EXPECT_THROW(parse_program("r(X) -> R(X)\nr(X,Y) -> S(X)"), ParseError);
  EXPECT_THROW(parse_program("-> R(X)"), ParseError);
  EXPECT_THROW(parse_program("r(X -> R(X)"), ParseError);
  EXPECT_THROW(parse_program("a: r(X) -> R(X)\na: r(X) -> S(X)"), ParseError);
  try {
    parse_program("r(X) -> R(X)\nr(X) R(X)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseProgram, RoundTrip) {
  for (const char* text : {fixtures::kP1, fixtures::kP2, fixtures::kP3, fixtures::kChain}) {
    const Program p = parse_program(text);
    EXPECT_EQ(parse_program(p.to_string()), p) << text;
  }
  const Program quoted = parse_program("q: a(X, \"Hello world\") -> b(X)");
  EXPECT_EQ(parse_program(quoted.to_string()), quoted);
}

TEST(ParseFacts, Basic) {
  const Program p = fixtures::program(fixtures::kP1);
  const Instance i = parse_facts("r\tc1\tc2\n", p);
  EXPECT_EQ(i, Instance{atom("r", {"c1", "c2"})});
}

TEST(ParseFacts, DuplicatesCollapse) {
  const Program p = fixtures::program(fixtures::kP1);
  EXPECT_EQ(parse_facts("r\tc1\tc2\nr\tc1\tc2\n# comment\n\n", p).size(), 1u);
}

TEST(ParseFacts, Errors) {
  const Program p = fixtures::program(fixtures::kP1);
  EXPECT_THROW(parse_facts("R\tc1\tc2\n", p), ParseError);
  EXPECT_THROW(parse_facts("q\tc1\n", p), ParseError);
  EXPECT_THROW(parse_facts("r\tc1\n", p), ParseError);
}

TEST(FormatFacts, CanonicalRoundTrip) {
  const Program p = fixtures::program(fixtures::kP1);
  const Instance i = parse_facts("r\tc2\tc1\nr\tc1\tc2\n", p);
  const std::string text = format_facts(i);
  EXPECT_EQ(text, "r\tc1\tc2\nr\tc2\tc1\n");
  EXPECT_EQ(parse_facts(text, p), i);
}

TEST(Normalize, HomogeneousUnchanged) {
  const Program p = fixtures::program(fixtures::kP1);
  EXPECT_TRUE(p.is_normalized());
  EXPECT_EQ(normalize_program(p), p);
  EXPECT_EQ(normalize_program(Program{}), Program{});
}

TEST(Normalize, MixedBodyGetsAlias) {
  const Program p = parse_program("s1: e(X) -> R(X)\ns2: a(X), R(X) -> S(X)");
  EXPECT_FALSE(p.is_normalized());
  const Program n = normalize_program(p);
  EXPECT_TRUE(n.is_normalized());
  ASSERT_EQ(n.rules().size(), 3u);
  EXPECT_EQ(n.rules()[1].body[0].predicate, Symbol("a*"));
  EXPECT_EQ(n.rules()[2].id, "a*");
  EXPECT_TRUE(n.is_internal(Symbol("a*")));
  EXPECT_TRUE(n.is_extensional(Symbol("a")));
}

TEST(Normalize, PreservesChaseResult) {
  const Program p = parse_program("s1: e(X,Y) -> R(X,Y)\ns2: a(X), R(X,Y) -> S(Y,Z)\ns3: S(X,Y), e(X,X) -> R(Y,X)");
  const Program n = normalize_program(p);
  Instance base{atom("e", {"1", "1"}), atom("e", {"1", "2"}), atom("a", {"1"}), atom("a", {"2"})};
  ChaseConfig cfg;
  cfg.variant = ChaseVariant::Restricted;
  const auto original = chase(p, base, cfg).final_instance;
  const auto normalized = n.strip_internal(chase(n, base, cfg).final_instance);
  EXPECT_TRUE(equivalent(original, normalized));
}
