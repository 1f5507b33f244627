#pragma once

#include <string>
#include <string_view>

#include "tgr/instance.hpp"
#include "tgr/program.hpp"

namespace tgr {

// Rule file: one rule per line,
//
//   [id ':'] body_atom (',' body_atom)* '->' head_atom ['.']
//
// '#' starts a comment. Terms starting with an uppercase letter are
// variables; lowercase or digit-initial tokens and double-quoted strings are
// constants. Rules without an explicit id are named "r<n>" where n is the
// 1-based position of the rule in the file. Head variables that do not occur
// in the body are existentially quantified.
//
// Throws ParseError (with line number) on syntax errors, arity conflicts,
// empty bodies and duplicate ids.
Program parse_program(std::string_view text);

// Fact file: TSV, one fact per line, "predicate<TAB>arg1<TAB>...<TAB>argN".
// Every argument is a constant. Blank lines and lines starting with '#' are
// skipped. The predicate must be an extensional predicate of `program` with
// matching arity.
Instance parse_facts(std::string_view text, const Program& program);

// Canonical-order TSV rendering. Nulls print as "_:n<ordinal>". Facts over
// the program's internal predicates are dropped when a program is given.
std::string format_facts(const Instance& instance);
std::string format_facts(const Instance& instance, const Program& program);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tgr
