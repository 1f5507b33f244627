#include "tgr/normalize.hpp"

#include <algorithm>

namespace tgr {

Symbol alias_predicate(Symbol extensional) { return Symbol(std::string(extensional.name()) + "*"); }

Program normalize_program(const Program& program) {
  if (program.is_normalized()) return program;

  std::vector<Symbol> aliased;
  std::vector<Rule> rewritten;
  for (const auto& rule : program.rules()) {
    Rule r = rule;
    if (!program.is_homogeneous(rule)) {
      for (auto& atom : r.body) {
        if (!program.is_extensional(atom.predicate)) continue;
        if (std::find(aliased.begin(), aliased.end(), atom.predicate) == aliased.end()) {
          aliased.push_back(atom.predicate);
        }
        atom.predicate = alias_predicate(atom.predicate);
      }
    }
    rewritten.push_back(std::move(r));
  }

  Program out;
  for (auto& r : rewritten) out.add_rule(std::move(r));
  for (Symbol e : aliased) {
    const std::size_t arity = program.predicate(e)->arity;
    const Symbol alias = alias_predicate(e);
    out.declare_predicate(alias, arity, /*internal=*/true);
    std::vector<Term> vars;
    for (std::size_t i = 0; i < arity; ++i) vars.push_back(Term::variable("X" + std::to_string(i + 1)));
    out.add_rule(Rule{std::string(alias.name()), {Atom(e, vars)}, Atom(alias, vars)});
  }
  // Keep predicates that only appeared in the original registry.
  for (const auto& info : program.predicates()) out.declare_predicate(info.name, info.arity, info.internal);
  return out;
}

}  // namespace tgr
