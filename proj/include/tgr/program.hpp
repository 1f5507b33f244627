#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tgr/atom.hpp"
#include "tgr/instance.hpp"

namespace tgr {

// body -> head, with existentially quantified head variables implicit.
struct Rule {
  std::string id;
  std::vector<Atom> body;
  Atom head;

  // Variables shared by body and head, in head order.
  std::vector<Term> frontier() const;
  // Head variables absent from the body, in head order.
  std::vector<Term> existentials() const;
  // Distinct body variables in first-occurrence order.
  std::vector<Term> body_variables() const;

  bool is_datalog() const { return existentials().empty(); }
  bool is_linear() const { return body.size() == 1; }

  // "id: b1(..), b2(..) -> h(..)"
  std::string to_string() const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct PredicateInfo {
  Symbol name;
  std::size_t arity = 0;
  bool extensional = true;
  // Alias predicates introduced by normalization.
  bool internal = false;
};

class Program {
 public:
  // Registers the rule's predicates. Throws std::invalid_argument on an
  // arity conflict, duplicate id or empty body.
  void add_rule(Rule rule);
  // Declares a predicate without a rule (arity checked against prior use).
  void declare_predicate(Symbol name, std::size_t arity, bool internal = false);

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule* find_rule(std::string_view id) const;
  std::optional<std::size_t> rule_index(std::string_view id) const;

  // Predicates in registration order, with the current classification.
  std::vector<PredicateInfo> predicates() const;
  std::optional<PredicateInfo> predicate(Symbol name) const;
  bool is_extensional(Symbol name) const;
  bool is_intensional(Symbol name) const { return !is_extensional(name); }
  bool is_internal(Symbol name) const;

  // All body atoms extensional.
  bool is_extensional_rule(const Rule& r) const;
  bool is_homogeneous(const Rule& r) const;

  bool is_linear() const;
  bool is_datalog() const;
  bool is_normalized() const;
  bool empty() const { return rules_.empty(); }

  // One rule per line in the rule-file syntax.
  std::string to_string() const;

  // Drops facts over internal predicates.
  Instance strip_internal(const Instance& instance) const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  void register_atom(const Atom& atom);

  std::vector<Rule> rules_;
  std::vector<Symbol> order_;
  std::unordered_map<Symbol, std::size_t> arity_;
  std::unordered_set<Symbol> head_predicates_;
  std::unordered_set<Symbol> internal_;
};

}  // namespace tgr
