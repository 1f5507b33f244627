#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tgr/instance.hpp"

namespace tgr {

// Partial term-to-term map. Application leaves terms outside the domain
// unchanged.
class TermMapping {
 public:
  TermMapping() = default;
  TermMapping(std::initializer_list<std::pair<const Term, Term>> entries) : map_(entries) {}

  std::optional<Term> get(Term t) const;
  bool contains(Term t) const { return map_.count(t) > 0; }
  void set(Term from, Term to) { map_[from] = to; }
  void erase(Term t) { map_.erase(t); }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  Term apply(Term t) const;
  Atom apply(const Atom& a) const;
  std::vector<Atom> apply(std::span<const Atom> atoms) const;
  std::vector<Term> apply(std::span<const Term> terms) const;

  // (this ∘ inner)(t) = this(inner(t)), over the union of both domains.
  TermMapping compose_after(const TermMapping& inner) const;
  TermMapping restricted_to(std::span<const Term> domain) const;

  // Entries sorted by canonical order of the source term.
  std::vector<std::pair<Term, Term>> entries() const;
  std::string to_string() const;

  friend bool operator==(const TermMapping&, const TermMapping&) = default;

 private:
  std::unordered_map<Term, Term> map_;
};

// Lookup structure over a set of facts. Lists are in canonical fact order
// when built from an instance; add() appends and is meant for existence
// checks only.
class FactIndex {
 public:
  FactIndex() = default;
  explicit FactIndex(const Instance& instance);
  explicit FactIndex(std::vector<const Atom*> facts_in_order);

  void add(const Atom* fact);

  std::span<const Atom* const> lookup(Symbol predicate) const;
  std::span<const Atom* const> lookup(Symbol predicate, std::size_t position, Term value) const;
  std::size_t size() const { return size_; }

 private:
  struct Key {
    Symbol predicate;
    std::size_t position;
    Term value;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return (std::hash<Symbol>{}(k.predicate) * 31 + k.position) * 0x9e3779b97f4a7c15ULL ^ std::hash<Term>{}(k.value);
    }
  };

  std::unordered_map<Symbol, std::vector<const Atom*>> by_predicate_;
  std::unordered_map<Key, std::vector<const Atom*>, KeyHash> by_value_;
  std::size_t size_ = 0;
};

// Callback returns false to stop the enumeration.
using HomomorphismVisitor = std::function<bool(const TermMapping&)>;

// Enumerates every extension of `fixed` to a homomorphism mapping source[i]
// into targets[i]. Variables and nulls of the source are mappable, constants
// map to themselves. Atoms are processed in the given order; candidates in
// index order. Returns false when the visitor stopped the enumeration.
bool for_each_homomorphism(std::span<const Atom> source, std::span<const FactIndex* const> targets,
                           const TermMapping& fixed, const HomomorphismVisitor& visit);

// Same, with every source atom mapped into one target.
bool for_each_homomorphism(std::span<const Atom> source, const FactIndex& target, const TermMapping& fixed,
                           const HomomorphismVisitor& visit);

std::vector<TermMapping> find_homomorphisms(std::span<const Atom> source, const Instance& target,
                                            const TermMapping& fixed = {});

// Existence test. Reorders atoms (most constrained first, connected
// components separately), so only the yes/no answer is meaningful.
bool exists_homomorphism(std::span<const Atom> source, const FactIndex& target, const TermMapping& fixed = {});
bool exists_homomorphism(std::span<const Atom> source, const Instance& target, const TermMapping& fixed = {});

// True iff there is a homomorphism from `goal` into `candidate`
// (candidate |= goal).
bool entails(const Instance& candidate, const Instance& goal);

// Entailment in both directions.
bool equivalent(const Instance& a, const Instance& b);

}  // namespace tgr
