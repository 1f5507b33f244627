#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "tgr/instance.hpp"

namespace tgr {

// Malformed rule or fact input. Line numbers are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The program is outside the class an operation supports (non-linear for
// tg-linear, non-Datalog for TGmat, unnormalized for EG expansion, ...).
class UnsupportedProgram : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A round or level cap was hit. Carries whatever had been derived so far.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& message, Instance partial, std::size_t rounds)
      : std::runtime_error(message), partial_(std::move(partial)), rounds_(rounds) {}
  const Instance& partial() const { return partial_; }
  std::size_t rounds() const { return rounds_; }

 private:
  Instance partial_;
  std::size_t rounds_;
};

// EG-rewriting could not proceed (missing parent edge, existential rule).
class RewritingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tgr
