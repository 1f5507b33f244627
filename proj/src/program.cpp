#include "tgr/program.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tgr {
namespace {

bool plain_constant(std::string_view s) {
  if (s.empty()) return false;
  const auto first = static_cast<unsigned char>(s.front());
  if (!(std::islower(first) || std::isdigit(first))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string rule_term(Term t) {
  if (!t.is_constant() || plain_constant(t.name())) return t.to_string();
  std::string out = "\"";
  for (char c : t.name()) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string rule_atom(const Atom& a) {
  std::string out(a.predicate.name());
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i > 0) out += ',';
    out += rule_term(a.args[i]);
  }
  out += ')';
  return out;
}

void push_unique(std::vector<Term>& out, Term t) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

}  // namespace

std::vector<Term> Rule::body_variables() const {
  std::vector<Term> out;
  for (const auto& a : body)
    for (Term t : a.args)
      if (t.is_variable()) push_unique(out, t);
  return out;
}

std::vector<Term> Rule::frontier() const {
  const auto bv = body_variables();
  std::vector<Term> out;
  for (Term t : head.args)
    if (t.is_variable() && std::find(bv.begin(), bv.end(), t) != bv.end()) push_unique(out, t);
  return out;
}

std::vector<Term> Rule::existentials() const {
  const auto bv = body_variables();
  std::vector<Term> out;
  for (Term t : head.args)
    if (t.is_variable() && std::find(bv.begin(), bv.end(), t) == bv.end()) push_unique(out, t);
  return out;
}

std::string Rule::to_string() const {
  std::string out = id + ": ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0) out += ", ";
    out += rule_atom(body[i]);
  }
  out += " -> ";
  out += rule_atom(head);
  return out;
}

void Program::register_atom(const Atom& atom) {
  auto [it, inserted] = arity_.emplace(atom.predicate, atom.arity());
  if (inserted) {
    order_.push_back(atom.predicate);
  } else if (it->second != atom.arity()) {
    throw std::invalid_argument("arity conflict for predicate '" + std::string(atom.predicate.name()) +
                                "': " + std::to_string(it->second) + " vs " + std::to_string(atom.arity()));
  }
}

void Program::add_rule(Rule rule) {
  if (rule.body.empty()) throw std::invalid_argument("rule '" + rule.id + "' has an empty body");
  if (find_rule(rule.id) != nullptr) throw std::invalid_argument("duplicate rule id '" + rule.id + "'");
  for (const auto& a : rule.body) register_atom(a);
  register_atom(rule.head);
  head_predicates_.insert(rule.head.predicate);
  rules_.push_back(std::move(rule));
}

void Program::declare_predicate(Symbol name, std::size_t arity, bool internal) {
  register_atom(Atom(name, std::vector<Term>(arity)));
  if (internal) internal_.insert(name);
}

const Rule* Program::find_rule(std::string_view id) const {
  for (const auto& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

std::optional<std::size_t> Program::rule_index(std::string_view id) const {
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (rules_[i].id == id) return i;
  return std::nullopt;
}

std::vector<PredicateInfo> Program::predicates() const {
  std::vector<PredicateInfo> out;
  out.reserve(order_.size());
  for (Symbol s : order_) out.push_back(*predicate(s));
  return out;
}

std::optional<PredicateInfo> Program::predicate(Symbol name) const {
  auto it = arity_.find(name);
  if (it == arity_.end()) return std::nullopt;
  return PredicateInfo{name, it->second, is_extensional(name), is_internal(name)};
}

bool Program::is_extensional(Symbol name) const { return head_predicates_.count(name) == 0; }

bool Program::is_internal(Symbol name) const { return internal_.count(name) > 0; }

bool Program::is_extensional_rule(const Rule& r) const {
  return std::all_of(r.body.begin(), r.body.end(), [&](const Atom& a) { return is_extensional(a.predicate); });
}

bool Program::is_homogeneous(const Rule& r) const {
  return is_extensional_rule(r) ||
         std::all_of(r.body.begin(), r.body.end(), [&](const Atom& a) { return is_intensional(a.predicate); });
}

bool Program::is_linear() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.is_linear(); });
}

bool Program::is_datalog() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.is_datalog(); });
}

bool Program::is_normalized() const {
  return std::all_of(rules_.begin(), rules_.end(), [&](const Rule& r) { return is_homogeneous(r); });
}

std::string Program::to_string() const {
  std::string out;
  for (const auto& r : rules_) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

Instance Program::strip_internal(const Instance& instance) const {
  if (internal_.empty()) return instance;
  Instance out;
  for (const auto& f : instance)
    if (!is_internal(f.predicate)) out.insert(f);
  return out;
}

bool operator==(const Program& a, const Program& b) {
  if (a.rules_ != b.rules_ || a.order_ != b.order_) return false;
  for (Symbol s : a.order_) {
    if (a.arity_.at(s) != b.arity_.at(s) || a.is_internal(s) != b.is_internal(s)) return false;
  }
  return true;
}

}  // namespace tgr
