#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace tgr {

// Interned identifier (predicate, constant or variable name).
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  std::uint32_t id() const { return id_; }
  std::string_view name() const;

  friend bool operator==(Symbol, Symbol) = default;
  friend auto operator<=>(Symbol, Symbol) = default;

 private:
  std::uint32_t id_ = 0;
};

enum class TermKind : std::uint8_t { Constant, Null, Variable };

// A constant, a labeled null or a variable. Equality is (kind, name) for
// constants and variables and (kind, ordinal) for nulls.
class Term {
 public:
  Term() = default;

  static Term constant(std::string_view name);
  static Term variable(std::string_view name);
  static Term null(std::uint32_t ordinal);

  TermKind kind() const { return kind_; }
  bool is_constant() const { return kind_ == TermKind::Constant; }
  bool is_null() const { return kind_ == TermKind::Null; }
  bool is_variable() const { return kind_ == TermKind::Variable; }
  bool is_ground() const { return kind_ != TermKind::Variable; }

  // Symbol id for constants and variables, ordinal for nulls.
  std::uint32_t id() const { return id_; }
  std::uint32_t ordinal() const { return id_; }
  std::string_view name() const;

  // Nulls print as "_:n<ordinal>".
  std::string to_string() const;

  friend bool operator==(Term, Term) = default;
  // Identity order, cheap; not the canonical (printed) order.
  friend auto operator<=>(Term, Term) = default;

 private:
  Term(TermKind kind, std::uint32_t id) : kind_(kind), id_(id) {}

  TermKind kind_ = TermKind::Constant;
  std::uint32_t id_ = 0;
};

// Canonical order: constants by name, then nulls by ordinal, then variables
// by name.
bool canonical_less(Term a, Term b);

}  // namespace tgr

template <>
struct std::hash<tgr::Symbol> {
  std::size_t operator()(tgr::Symbol s) const noexcept { return s.id(); }
};

template <>
struct std::hash<tgr::Term> {
  std::size_t operator()(tgr::Term t) const noexcept {
    return (static_cast<std::size_t>(t.id()) << 2) ^ static_cast<std::size_t>(t.kind());
  }
};
