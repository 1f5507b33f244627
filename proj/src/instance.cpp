#include "tgr/instance.hpp"

#include <algorithm>

namespace tgr {

Instance::Instance(std::initializer_list<Atom> facts) {
  for (const auto& f : facts) facts_.insert(f);
}

Instance::Instance(const std::vector<Atom>& facts) {
  for (const auto& f : facts) facts_.insert(f);
}

bool Instance::insert(Atom fact) { return facts_.insert(std::move(fact)).second; }

std::pair<const Atom*, bool> Instance::emplace(Atom fact) {
  auto [it, inserted] = facts_.insert(std::move(fact));
  return {&*it, inserted};
}

void Instance::merge(const Instance& other) {
  for (const auto& f : other) facts_.insert(f);
}

std::vector<Atom> Instance::sorted() const {
  std::vector<Atom> out(facts_.begin(), facts_.end());
  std::sort(out.begin(), out.end(), CanonicalAtomLess{});
  return out;
}

std::vector<const Atom*> Instance::sorted_pointers() const {
  std::vector<const Atom*> out;
  out.reserve(facts_.size());
  for (const auto& f : facts_) out.push_back(&f);
  std::sort(out.begin(), out.end(), [](const Atom* a, const Atom* b) { return canonical_less(*a, *b); });
  return out;
}

bool Instance::has_nulls() const {
  return std::any_of(facts_.begin(), facts_.end(), [](const Atom& f) { return f.has_nulls(); });
}

Instance Instance::minus(const Instance& other) const {
  Instance out;
  for (const auto& f : facts_) {
    if (!other.contains(f)) out.facts_.insert(f);
  }
  return out;
}

bool Instance::subset_of(const Instance& other) const {
  if (size() > other.size()) return false;
  return std::all_of(facts_.begin(), facts_.end(), [&](const Atom& f) { return other.contains(f); });
}

std::string Instance::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto* f : sorted_pointers()) {
    if (!first) out += ", ";
    first = false;
    out += f->to_string();
  }
  out += '}';
  return out;
}

}  // namespace tgr
