#include "tgr/term.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace tgr {
namespace {

class SymbolTable {
 public:
  SymbolTable() { intern(""); }

  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(names_.size());
    const std::string& stored = names_.emplace_back(name);
    ids_.emplace(stored, id);
    return id;
  }

  std::string_view name(std::uint32_t id) {
    std::lock_guard lock(mutex_);
    return names_.at(id);
  }

 private:
  std::mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

}  // namespace

Symbol::Symbol(std::string_view name) : id_(symbols().intern(name)) {}

std::string_view Symbol::name() const { return symbols().name(id_); }

Term Term::constant(std::string_view name) { return Term(TermKind::Constant, symbols().intern(name)); }

Term Term::variable(std::string_view name) { return Term(TermKind::Variable, symbols().intern(name)); }

Term Term::null(std::uint32_t ordinal) { return Term(TermKind::Null, ordinal); }

std::string_view Term::name() const {
  if (kind_ == TermKind::Null) return {};
  return symbols().name(id_);
}

std::string Term::to_string() const {
  if (kind_ == TermKind::Null) return "_:n" + std::to_string(id_);
  return std::string(name());
}

bool canonical_less(Term a, Term b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.id() == b.id()) return false;
  if (a.is_null()) return a.ordinal() < b.ordinal();
  return a.name() < b.name();
}

}  // namespace tgr
