#pragma once

#include <initializer_list>
#include <string>
#include <unordered_set>
#include <vector>

#include "tgr/atom.hpp"

namespace tgr {

// A set of facts. Element addresses are stable until the fact is erased, so
// indexes may hold pointers into an instance while it grows.
class Instance {
 public:
  using Storage = std::unordered_set<Atom, AtomHash>;
  using const_iterator = Storage::const_iterator;

  Instance() = default;
  Instance(std::initializer_list<Atom> facts);
  explicit Instance(const std::vector<Atom>& facts);

  // Returns true when the fact was not present.
  bool insert(Atom fact);
  // Returns a pointer to the stored fact and whether it was inserted.
  std::pair<const Atom*, bool> emplace(Atom fact);
  bool erase(const Atom& fact) { return facts_.erase(fact) > 0; }
  bool contains(const Atom& fact) const { return facts_.count(fact) > 0; }
  // Stored copy of `fact`, or nullptr.
  const Atom* find(const Atom& fact) const {
    auto it = facts_.find(fact);
    return it == facts_.end() ? nullptr : &*it;
  }
  void merge(const Instance& other);

  std::size_t size() const { return facts_.size(); }
  bool empty() const { return facts_.empty(); }
  const_iterator begin() const { return facts_.begin(); }
  const_iterator end() const { return facts_.end(); }

  // Facts in canonical order.
  std::vector<Atom> sorted() const;
  std::vector<const Atom*> sorted_pointers() const;

  bool has_nulls() const;
  // Instance minus every fact of `other`.
  Instance minus(const Instance& other) const;
  bool subset_of(const Instance& other) const;

  // "{f1, f2, ...}" in canonical order.
  std::string to_string() const;

  friend bool operator==(const Instance& a, const Instance& b) { return a.facts_ == b.facts_; }

 private:
  Storage facts_;
};

// Hands out null ordinals that are never reused within one run.
class NullFactory {
 public:
  explicit NullFactory(std::uint32_t first = 1) : next_(first) {}
  Term fresh() { return Term::null(next_++); }
  std::uint32_t next_ordinal() const { return next_; }

 private:
  std::uint32_t next_;
};

}  // namespace tgr
