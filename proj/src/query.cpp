#include "tgr/query.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tgr {
namespace {

// Frozen variables live in a namespace the rule parser cannot produce.
constexpr std::string_view kFrozenPrefix = "\x1f";

void push_unique(std::vector<Term>& out, Term t) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
}

bool match_atoms(const std::vector<Atom>& a, const std::vector<Atom>& b, std::vector<bool>& used, std::size_t i,
                 std::unordered_map<Term, Term>& fwd, std::unordered_map<Term, Term>& bwd) {
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j] || a[i].predicate != b[j].predicate || a[i].arity() != b[j].arity()) continue;
    auto saved_fwd = fwd;
    auto saved_bwd = bwd;
    bool ok = true;
    for (std::size_t p = 0; p < a[i].arity() && ok; ++p) {
      const Term x = a[i].args[p];
      const Term y = b[j].args[p];
      if (x.is_variable() != y.is_variable()) {
        ok = false;
      } else if (!x.is_variable()) {
        ok = x == y;
      } else {
        auto [fi, fnew] = fwd.emplace(x, y);
        auto [bi, bnew] = bwd.emplace(y, x);
        ok = fi->second == y && bi->second == x;
      }
    }
    if (ok) {
      used[j] = true;
      if (match_atoms(a, b, used, i + 1, fwd, bwd)) return true;
      used[j] = false;
    }
    fwd = std::move(saved_fwd);
    bwd = std::move(saved_bwd);
  }
  return false;
}

}  // namespace

bool TupleCanonicalLess::operator()(const Tuple& a, const Tuple& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](Term x, Term y) { return canonical_less(x, y); });
}

std::vector<Term> ConjunctiveQuery::head_variables() const {
  std::vector<Term> out;
  for (Term t : head)
    if (t.is_variable()) push_unique(out, t);
  return out;
}

std::string ConjunctiveQuery::to_string() const {
  std::string out = "Q(";
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (i > 0) out += ',';
    out += head[i].to_string();
  }
  out += ") <- ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i > 0) out += ", ";
    out += body[i].to_string();
  }
  return out;
}

void validate_query(const ConjunctiveQuery& q) {
  for (const auto& a : q.body)
    if (a.has_nulls()) throw std::invalid_argument("query body contains a null: " + a.to_string());
  for (Term v : q.head_variables()) {
    const bool found = std::any_of(q.body.begin(), q.body.end(), [&](const Atom& a) {
      return std::find(a.args.begin(), a.args.end(), v) != a.args.end();
    });
    if (!found) throw std::invalid_argument("head variable " + v.to_string() + " does not occur in the body");
  }
}

AnswerSet answer_cq(const ConjunctiveQuery& q, const FactIndex& index) {
  AnswerSet out;
  for_each_homomorphism(q.body, index, {}, [&](const TermMapping& h) {
    out.insert(h.apply(q.head));
    return true;
  });
  return out;
}

AnswerSet answer_cq(const ConjunctiveQuery& q, const Instance& instance) { return answer_cq(q, FactIndex(instance)); }

Instance freeze(const ConjunctiveQuery& q, Tuple* frozen_head) {
  TermMapping freezer;
  auto visit = [&](Term t) {
    if (t.is_variable() && !freezer.contains(t)) {
      freezer.set(t, Term::constant(std::string(kFrozenPrefix) + std::string(t.name())));
    }
  };
  for (const auto& a : q.body)
    for (Term t : a.args) visit(t);
  for (Term t : q.head) visit(t);
  if (frozen_head) *frozen_head = freezer.apply(q.head);
  return Instance(freezer.apply(q.body));
}

bool cq_contained(const ConjunctiveQuery& q1, const ConjunctiveQuery& q2) {
  if (q1.head.size() != q2.head.size()) {
    throw std::invalid_argument("containment between queries of different head arity");
  }
  Tuple target;
  const Instance canonical = freeze(q1, &target);
  TermMapping fixed;
  for (std::size_t i = 0; i < q2.head.size(); ++i) {
    const Term t = q2.head[i];
    if (t.is_constant()) {
      if (t != target[i]) return false;
    } else if (auto bound = fixed.get(t)) {
      if (*bound != target[i]) return false;
    } else {
      fixed.set(t, target[i]);
    }
  }
  const FactIndex index(canonical);
  bool found = false;
  for_each_homomorphism(q2.body, index, fixed, [&](const TermMapping&) {
    found = true;
    return false;
  });
  return found;
}

bool equal_up_to_renaming(const ConjunctiveQuery& a, const ConjunctiveQuery& b) {
  if (a.head.size() != b.head.size() || a.body.size() != b.body.size()) return false;
  std::unordered_map<Term, Term> fwd;
  std::unordered_map<Term, Term> bwd;
  for (std::size_t i = 0; i < a.head.size(); ++i) {
    const Term x = a.head[i];
    const Term y = b.head[i];
    if (x.is_variable() != y.is_variable()) return false;
    if (!x.is_variable()) {
      if (x != y) return false;
      continue;
    }
    auto [fi, fnew] = fwd.emplace(x, y);
    auto [bi, bnew] = bwd.emplace(y, x);
    if (fi->second != y || bi->second != x) return false;
  }
  std::vector<bool> used(b.body.size(), false);
  return match_atoms(a.body, b.body, used, 0, fwd, bwd);
}

}  // namespace tgr
