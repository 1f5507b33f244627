#include "tgr/atom.hpp"

#include <algorithm>
#include <cctype>

namespace tgr {

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](Term t) { return t.is_ground(); });
}

bool Atom::has_nulls() const {
  return std::any_of(args.begin(), args.end(), [](Term t) { return t.is_null(); });
}

std::string Atom::to_string() const {
  std::string out(predicate.name());
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ',';
    out += args[i].to_string();
  }
  out += ')';
  return out;
}

bool canonical_less(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate) return a.predicate.name() < b.predicate.name();
  return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(),
                                      [](Term x, Term y) { return canonical_less(x, y); });
}

std::size_t AtomHash::operator()(const Atom& a) const noexcept {
  std::size_t h = std::hash<Symbol>{}(a.predicate) * 0x9e3779b97f4a7c15ULL;
  for (Term t : a.args) h = (h ^ std::hash<Term>{}(t)) * 0x100000001b3ULL + 0x7f4a7c15;
  return h;
}

Term parse_term_token(std::string_view token) {
  if (!token.empty() && std::isupper(static_cast<unsigned char>(token.front()))) {
    return Term::variable(token);
  }
  return Term::constant(token);
}

Atom make_atom(std::string_view pred, std::initializer_list<std::string_view> args) {
  std::vector<Term> terms;
  terms.reserve(args.size());
  for (auto a : args) terms.push_back(parse_term_token(a));
  return Atom(pred, std::move(terms));
}

}  // namespace tgr
