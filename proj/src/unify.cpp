#include "tgr/unify.hpp"

#include <unordered_map>

namespace tgr {
namespace {

class UnionFind {
 public:
  Term find(Term t) {
    auto it = parent_.find(t);
    if (it == parent_.end()) {
      parent_.emplace(t, t);
      order_.push_back(t);
      return t;
    }
    if (it->second == t) return t;
    Term root = find(it->second);
    parent_[t] = root;
    return root;
  }

  // False on a constant clash.
  bool unite(Term a, Term b) {
    Term ra = find(a);
    Term rb = find(b);
    if (ra == rb) return true;
    if (!ra.is_variable() && !rb.is_variable()) return false;
    // Ground terms stay roots so each class has at most one.
    if (!ra.is_variable()) std::swap(ra, rb);
    parent_[ra] = rb;
    return true;
  }

  const std::vector<Term>& terms() const { return order_; }

 private:
  std::unordered_map<Term, Term> parent_;
  std::vector<Term> order_;
};

}  // namespace

std::optional<TermMapping> mgu(std::span<const Atom> atoms) {
  if (atoms.empty()) return TermMapping{};
  const Atom& first = atoms.front();
  UnionFind uf;
  for (Term t : first.args) uf.find(t);
  for (const Atom& a : atoms.subspan(1)) {
    if (a.predicate != first.predicate || a.arity() != first.arity()) return std::nullopt;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (!uf.unite(first.args[i], a.args[i])) return std::nullopt;
    }
  }

  std::unordered_map<Term, Term> representative;
  for (Term t : uf.terms()) {
    const Term root = uf.find(t);
    auto [it, inserted] = representative.emplace(root, t);
    if (inserted) continue;
    Term& best = it->second;
    if (!best.is_variable()) continue;
    if (!t.is_variable() || t.name() < best.name()) best = t;
  }

  TermMapping out;
  for (Term t : uf.terms()) {
    if (t.is_variable()) out.set(t, representative.at(uf.find(t)));
  }
  return out;
}

}  // namespace tgr
