#pragma once

#include <set>
#include <string>
#include <vector>

#include "tgr/homomorphism.hpp"

namespace tgr {

using Tuple = std::vector<Term>;

struct TupleCanonicalLess {
  bool operator()(const Tuple& a, const Tuple& b) const;
};

using AnswerSet = std::set<Tuple, TupleCanonicalLess>;

// Q(head) <- body. Head entries are normally variables occurring in the
// body; rewritings may also bind a head position to a constant.
struct ConjunctiveQuery {
  std::vector<Term> head;
  std::vector<Atom> body;

  bool is_boolean() const { return head.empty(); }
  // Distinct head variables, first-occurrence order.
  std::vector<Term> head_variables() const;
  // "Q(X,Y) <- a(X,Z), b(Z,Y)"
  std::string to_string() const;

  friend bool operator==(const ConjunctiveQuery&, const ConjunctiveQuery&) = default;
};

// Throws std::invalid_argument when a head variable is missing from the body
// or a body atom contains a null.
void validate_query(const ConjunctiveQuery& q);

// All head tuples of homomorphisms from the body into `instance`. Answers
// that bind head variables to nulls are kept.
AnswerSet answer_cq(const ConjunctiveQuery& q, const Instance& instance);
AnswerSet answer_cq(const ConjunctiveQuery& q, const FactIndex& index);

// Chandra-Merlin containment q1 ⊆ q2. Throws std::invalid_argument when the
// head arities differ.
bool cq_contained(const ConjunctiveQuery& q1, const ConjunctiveQuery& q2);

// The canonical instance of q's body: each variable becomes a distinct fresh
// constant. `frozen_head` receives the image of the head.
Instance freeze(const ConjunctiveQuery& q, Tuple* frozen_head = nullptr);

// Syntactic equality modulo a bijective renaming of variables.
bool equal_up_to_renaming(const ConjunctiveQuery& a, const ConjunctiveQuery& b);

}  // namespace tgr
