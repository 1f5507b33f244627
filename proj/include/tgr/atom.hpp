#pragma once

#include <string>
#include <vector>

#include "tgr/term.hpp"

namespace tgr {

struct Atom {
  Symbol predicate;
  std::vector<Term> args;

  Atom() = default;
  Atom(Symbol pred, std::vector<Term> arguments) : predicate(pred), args(std::move(arguments)) {}
  Atom(std::string_view pred, std::vector<Term> arguments)
      : predicate(Symbol(pred)), args(std::move(arguments)) {}

  std::size_t arity() const { return args.size(); }
  bool is_ground() const;
  bool has_nulls() const;

  // "p(t1,...,tn)"
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// A fact is an atom of ground terms.
using Fact = Atom;

// Order on (predicate name, args in canonical term order).
bool canonical_less(const Atom& a, const Atom& b);

struct CanonicalAtomLess {
  bool operator()(const Atom& a, const Atom& b) const { return canonical_less(a, b); }
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept;
};

// Convenience for tests and fixtures: terms whose first character is
// uppercase become variables, everything else a constant.
Term parse_term_token(std::string_view token);
Atom make_atom(std::string_view pred, std::initializer_list<std::string_view> args);

}  // namespace tgr

template <>
struct std::hash<tgr::Atom> {
  std::size_t operator()(const tgr::Atom& a) const noexcept { return tgr::AtomHash{}(a); }
};
