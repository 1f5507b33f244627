#pragma once

#include <initializer_list>
#include <string>

#include "tgr/atom.hpp"
#include "tgr/instance.hpp"
#include "tgr/parse.hpp"
#include "tgr/program.hpp"

namespace fixtures {

inline const char* kP1 =
    "r1: r(X,Y) -> R(X,Y)\n"
    "r2: R(X,Y) -> T(Y,X,Y)\n"
    "r3: T(Y,X,Y) -> R(X,Y)\n"
    "r4: r(X,Y) -> T(Y,X,Z)\n";

inline const char* kP1Datalog =
    "r1: r(X,Y) -> R(X,Y)\n"
    "r2: R(X,Y) -> T(Y,X,Y)\n"
    "r3: T(Y,X,Y) -> R(X,Y)\n";

inline const char* kP2 =
    "r8: a(X), b(X) -> A(X)\n"
    "r9: a'(X), b'(X) -> A(X)\n";

inline const char* kP3 =
    "r12: as(X) -> A(X)\n"
    "r13: rs(X,Y) -> R(X,Y)\n"
    "r14: R(X,Y), A(Y) -> A(X)\n"
    "r15: R(X,Y), R(Y,Z) -> A(X)\n";

inline const char* kChain =
    "r10: r(X1,Y1,Z1) -> T(X1,X1,Y1)\n"
    "r11: T(X2,Y2,Z2) -> R(Y2,Z2)\n";

inline tgr::Program program(const char* text) { return tgr::parse_program(text); }

inline tgr::Atom atom(std::string_view pred, std::initializer_list<std::string_view> args) {
  return tgr::make_atom(pred, args);
}

inline tgr::Term null(std::uint32_t n) { return tgr::Term::null(n); }
inline tgr::Term c(std::string_view name) { return tgr::Term::constant(name); }

// a = b = {1..100}; a' = {51..101}; b' = {52..101, 200}.
inline tgr::Instance p2_data() {
  tgr::Instance out;
  auto add = [&](const char* pred, int from, int to) {
    for (int i = from; i <= to; ++i) out.insert(tgr::Atom(pred, {c(std::to_string(i))}));
  };
  add("a", 1, 100);
  add("b", 1, 100);
  add("a'", 51, 101);
  add("b'", 52, 101);
  add("b'", 200, 200);
  return out;
}

}  // namespace fixtures
