#pragma once

#include <optional>
#include <span>

#include "tgr/homomorphism.hpp"

namespace tgr {

// Most general unifier of two or more function-free atoms, or nullopt when
// predicates, arities or constants clash. The result maps every variable of
// the input to the representative of its class: the class constant when
// there is one, otherwise the lexicographically least variable name.
std::optional<TermMapping> mgu(std::span<const Atom> atoms);

}  // namespace tgr
