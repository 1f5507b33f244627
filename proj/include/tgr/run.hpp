#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "tgr/chase.hpp"
#include "tgr/exec_graph.hpp"

namespace tgr {

enum class Mode { Chase, FullEg, TgLinear, TgMat };

Mode parse_mode(std::string_view name);
std::string to_string(Mode m);

enum ExitCode : int { kExitOk = 0, kExitOther = 1, kExitParse = 2, kExitMismatch = 3, kExitCap = 4 };

struct RunSpec {
  Mode mode = Mode::Chase;
  ChaseVariant variant = ChaseVariant::Restricted;
  bool use_min = true;
  bool use_exec = true;
  // Rounds for the chase, levels for the graph-based modes.
  std::size_t cap = 64;
  std::uint64_t seed = 0;
  std::filesystem::path program;
  std::filesystem::path facts;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> metrics;
  std::optional<std::filesystem::path> graph;
};

struct RunOutcome {
  Instance result;
  // Trigger count comparable across modes.
  std::size_t triggers = 0;
  nlohmann::ordered_json metrics;
  std::optional<ExecutionGraph> graph;
};

// Rejects mode/program combinations up front (UnsupportedProgram):
// tg-linear needs a linear program, tgmat a Datalog one.
void check_mode(Mode mode, const Program& program);

// Runs one mode in-process. Throws ParseError, UnsupportedProgram,
// CapExceeded.
RunOutcome execute(const RunSpec& spec, const Program& program, const Instance& base);

// Loads the inputs, executes and writes the requested artifacts. Errors are
// reported on `err` and mapped to exit codes.
int run(const RunSpec& spec, std::ostream& err);

struct CompareReport {
  // "set-equal" (null-free results only), "hom-equivalent" or "different".
  std::string verdict;
  std::size_t triggers_a = 0;
  std::size_t triggers_b = 0;

  bool equivalent() const { return verdict != "different"; }
  nlohmann::ordered_json to_json() const;
};

CompareReport compare_outcomes(const RunOutcome& a, const RunOutcome& b);

// Runs both specs on their inputs and prints the report as JSON to `out`.
// Exit code 0 when the results are equivalent, 3 when they differ.
int compare(const RunSpec& a, const RunSpec& b, std::ostream& out, std::ostream& err);

}  // namespace tgr
