#include "tgr/homomorphism.hpp"

#include <algorithm>
#include <numeric>

namespace tgr {

std::optional<Term> TermMapping::get(Term t) const {
  auto it = map_.find(t);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Term TermMapping::apply(Term t) const {
  auto it = map_.find(t);
  return it == map_.end() ? t : it->second;
}

Atom TermMapping::apply(const Atom& a) const {
  Atom out = a;
  for (auto& t : out.args) t = apply(t);
  return out;
}

std::vector<Atom> TermMapping::apply(std::span<const Atom> atoms) const {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(apply(a));
  return out;
}

std::vector<Term> TermMapping::apply(std::span<const Term> terms) const {
  std::vector<Term> out;
  out.reserve(terms.size());
  for (Term t : terms) out.push_back(apply(t));
  return out;
}

TermMapping TermMapping::compose_after(const TermMapping& inner) const {
  TermMapping out;
  for (const auto& [from, to] : inner.map_) out.map_[from] = apply(to);
  for (const auto& [from, to] : map_)
    if (!inner.contains(from)) out.map_[from] = to;
  return out;
}

TermMapping TermMapping::restricted_to(std::span<const Term> domain) const {
  TermMapping out;
  for (Term t : domain)
    if (auto v = get(t)) out.map_[t] = *v;
  return out;
}

std::vector<std::pair<Term, Term>> TermMapping::entries() const {
  std::vector<std::pair<Term, Term>> out(map_.begin(), map_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

std::string TermMapping::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [from, to] : entries()) {
    if (!first) out += ", ";
    first = false;
    out += from.to_string() + "->" + to.to_string();
  }
  return out + "}";
}

FactIndex::FactIndex(const Instance& instance) : FactIndex(instance.sorted_pointers()) {}

FactIndex::FactIndex(std::vector<const Atom*> facts_in_order) {
  for (const Atom* f : facts_in_order) add(f);
}

void FactIndex::add(const Atom* fact) {
  by_predicate_[fact->predicate].push_back(fact);
  for (std::size_t i = 0; i < fact->args.size(); ++i) by_value_[Key{fact->predicate, i, fact->args[i]}].push_back(fact);
  ++size_;
}

std::span<const Atom* const> FactIndex::lookup(Symbol predicate) const {
  auto it = by_predicate_.find(predicate);
  if (it == by_predicate_.end()) return {};
  return it->second;
}

std::span<const Atom* const> FactIndex::lookup(Symbol predicate, std::size_t position, Term value) const {
  auto it = by_value_.find(Key{predicate, position, value});
  if (it == by_value_.end()) return {};
  return it->second;
}

namespace {

class Search {
 public:
  Search(std::span<const Atom> source, std::span<const FactIndex* const> targets, const TermMapping& fixed,
         const HomomorphismVisitor& visit)
      : source_(source), targets_(targets), binding_(fixed), visit_(visit) {}

  bool run(std::size_t i) {
    if (i == source_.size()) return visit_(binding_);
    const Atom& atom = source_[i];
    const FactIndex& index = *targets_[i];

    std::span<const Atom* const> candidates = index.lookup(atom.predicate);
    for (std::size_t p = 0; p < atom.args.size() && !candidates.empty(); ++p) {
      std::optional<Term> value = atom.args[p].is_constant() ? std::optional<Term>(atom.args[p]) : binding_.get(atom.args[p]);
      if (!value) continue;
      auto narrowed = index.lookup(atom.predicate, p, *value);
      if (narrowed.size() < candidates.size()) candidates = narrowed;
    }

    for (const Atom* fact : candidates) {
      if (fact->args.size() != atom.args.size()) continue;
      const std::size_t mark = trail_.size();
      bool ok = true;
      for (std::size_t p = 0; p < atom.args.size() && ok; ++p) {
        const Term s = atom.args[p];
        const Term t = fact->args[p];
        if (s.is_constant()) {
          ok = s == t;
        } else if (auto bound = binding_.get(s)) {
          ok = *bound == t;
        } else {
          binding_.set(s, t);
          trail_.push_back(s);
        }
      }
      const bool keep_going = !ok || run(i + 1);
      while (trail_.size() > mark) {
        binding_.erase(trail_.back());
        trail_.pop_back();
      }
      if (!keep_going) return false;
    }
    return true;
  }

 private:
  std::span<const Atom> source_;
  std::span<const FactIndex* const> targets_;
  TermMapping binding_;
  const HomomorphismVisitor& visit_;
  std::vector<Term> trail_;
};

bool mappable(Term t, const TermMapping& fixed) { return !t.is_constant() && !fixed.contains(t); }

// Splits atoms into groups connected through unfixed mappable terms and
// orders each group most-constrained first.
std::vector<std::vector<Atom>> plan_components(std::span<const Atom> source, const TermMapping& fixed,
                                               const FactIndex& target) {
  const std::size_t n = source.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<Term, std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    for (Term t : source[i].args) {
      if (!mappable(t, fixed)) continue;
      auto [it, inserted] = owner.emplace(t, i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  std::unordered_map<std::size_t, std::vector<std::size_t>> groups;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = find(i);
    if (groups[r].empty()) roots.push_back(r);
    groups[r].push_back(i);
  }

  std::vector<std::vector<Atom>> out;
  for (std::size_t r : roots) {
    auto remaining = groups[r];
    std::unordered_map<Term, bool> bound;
    std::vector<Atom> ordered;
    while (!remaining.empty()) {
      std::size_t best = 0;
      long best_score = -1;
      std::size_t best_candidates = 0;
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        const Atom& a = source[remaining[k]];
        long score = 0;
        for (Term t : a.args)
          if (!mappable(t, fixed) || bound.count(t)) ++score;
        const std::size_t cands = target.lookup(a.predicate).size();
        if (score > best_score || (score == best_score && cands < best_candidates)) {
          best = k;
          best_score = score;
          best_candidates = cands;
        }
      }
      const Atom& chosen = source[remaining[best]];
      for (Term t : chosen.args)
        if (mappable(t, fixed)) bound[t] = true;
      ordered.push_back(chosen);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    out.push_back(std::move(ordered));
  }
  return out;
}

}  // namespace

bool for_each_homomorphism(std::span<const Atom> source, std::span<const FactIndex* const> targets,
                           const TermMapping& fixed, const HomomorphismVisitor& visit) {
  Search search(source, targets, fixed, visit);
  return search.run(0);
}

bool for_each_homomorphism(std::span<const Atom> source, const FactIndex& target, const TermMapping& fixed,
                           const HomomorphismVisitor& visit) {
  std::vector<const FactIndex*> targets(source.size(), &target);
  return for_each_homomorphism(source, targets, fixed, visit);
}

std::vector<TermMapping> find_homomorphisms(std::span<const Atom> source, const Instance& target,
                                            const TermMapping& fixed) {
  const FactIndex index(target);
  std::vector<TermMapping> out;
  for_each_homomorphism(source, index, fixed, [&](const TermMapping& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

bool exists_homomorphism(std::span<const Atom> source, const FactIndex& target, const TermMapping& fixed) {
  for (const auto& component : plan_components(source, fixed, target)) {
    bool found = false;
    for_each_homomorphism(component, target, fixed, [&](const TermMapping&) {
      found = true;
      return false;
    });
    if (!found) return false;
  }
  return true;
}

bool exists_homomorphism(std::span<const Atom> source, const Instance& target, const TermMapping& fixed) {
  return exists_homomorphism(source, FactIndex(target), fixed);
}

bool entails(const Instance& candidate, const Instance& goal) {
  std::vector<Atom> open;
  for (const auto& f : goal) {
    if (f.has_nulls()) {
      open.push_back(f);
    } else if (!candidate.contains(f)) {
      return false;
    }
  }
  if (open.empty()) return true;
  std::sort(open.begin(), open.end(), CanonicalAtomLess{});
  return exists_homomorphism(open, FactIndex(candidate));
}

bool equivalent(const Instance& a, const Instance& b) { return entails(a, b) && entails(b, a); }

}  // namespace tgr
