#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tgr/instance.hpp"
#include "tgr/program.hpp"

namespace tgr {

enum class Family {
  // Single-atom bodies over a levelled predicate graph: Datalog rules stay
  // within a level or climb, existential rules strictly climb, so the chase
  // terminates.
  LinearFes,
  // Up to six Datalog rules with bodies of one or two atoms that are all
  // extensional or all intensional.
  Datalog,
  // The Datalog family plus a copy/flip cycle R(X,Y) -> T(Y,X,Y) -> R(X,Y).
  CyclicDatalog,
};

Family parse_family(std::string_view name);
std::string to_string(Family f);

struct GeneratedKb {
  std::string name;
  Program program;
  Instance base;
};

// Deterministic for a given (seed, family, count). LinearFes programs are
// checked to terminate under the equivalent chase and regenerated
// otherwise.
std::vector<GeneratedKb> generate_corpus(std::uint64_t seed, Family family, std::size_t count);

// Writes <name>.rules and <name>.tsv per KB; returns the written paths.
std::vector<std::filesystem::path> write_corpus(const std::vector<GeneratedKb>& corpus,
                                                const std::filesystem::path& dir);

}  // namespace tgr
