#pragma once

#include "tgr/program.hpp"

namespace tgr {

// Makes every rule body all-extensional or all-intensional. Each extensional
// predicate e used in a mixed body gets an internal alias "e*", a copy rule
// e(X1..Xn) -> e*(X1..Xn) (appended after the original rules, id "e*") and
// its occurrences in mixed bodies are replaced by the alias. Homogeneous
// programs are returned unchanged.
Program normalize_program(const Program& program);

// Name of the alias predicate introduced for `extensional`.
Symbol alias_predicate(Symbol extensional);

}  // namespace tgr
