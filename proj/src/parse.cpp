#include "tgr/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tgr/errors.hpp"

namespace tgr {
namespace {

enum class Tok { Ident, String, LParen, RParen, Comma, Colon, Arrow, Dot };

struct Token {
  Tok kind;
  std::string text;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")"});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, ","});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":"});
      ++i;
    } else if (c == '.') {
      out.push_back({Tok::Dot, "."});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->"});
      i += 2;
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          text += line[i + 1];
          i += 2;
        } else if (line[i] == '"') {
          closed = true;
          ++i;
          break;
        } else {
          text += line[i++];
        }
      }
      if (!closed) throw ParseError(lineno, "unterminated string");
      out.push_back({Tok::String, std::move(text)});
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i))});
      i = j;
    } else {
      throw ParseError(lineno, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t lineno) : toks_(std::move(tokens)), line_(lineno) {}

  Rule parse(std::size_t ordinal) {
    Rule rule;
    if (toks_.size() >= 2 && toks_[0].kind == Tok::Ident && toks_[1].kind == Tok::Colon) {
      rule.id = toks_[0].text;
      pos_ = 2;
    } else {
      rule.id = "r" + std::to_string(ordinal);
    }
    if (peek(Tok::Arrow)) throw ParseError(line_, "rule with empty body");
    rule.body.push_back(atom());
    while (accept(Tok::Comma)) rule.body.push_back(atom());
    expect(Tok::Arrow, "'->'");
    rule.head = atom();
    accept(Tok::Dot);
    if (pos_ != toks_.size()) throw ParseError(line_, "unexpected trailing input '" + toks_[pos_].text + "'");
    return rule;
  }

 private:
  bool peek(Tok k) const { return pos_ < toks_.size() && toks_[pos_].kind == k; }

  bool accept(Tok k) {
    if (!peek(k)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok k, const char* what) {
    if (!peek(k)) {
      throw ParseError(line_, std::string("expected ") + what +
                                  (pos_ < toks_.size() ? " near '" + toks_[pos_].text + "'" : " at end of line"));
    }
    return toks_[pos_++];
  }

  Term term() {
    if (peek(Tok::String)) return Term::constant(toks_[pos_++].text);
    const auto& tok = expect(Tok::Ident, "a term");
    const auto first = static_cast<unsigned char>(tok.text.front());
    if (std::isupper(first) || tok.text.front() == '_') return Term::variable(tok.text);
    return Term::constant(tok.text);
  }

  Atom atom() {
    const auto& name = expect(Tok::Ident, "a predicate name");
    Atom a(name.text, {});
    expect(Tok::LParen, "'('");
    if (!accept(Tok::RParen)) {
      a.args.push_back(term());
      while (accept(Tok::Comma)) a.args.push_back(term());
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  std::vector<Token> toks_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++lineno, line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

}  // namespace

Program parse_program(std::string_view text) {
  Program program;
  std::size_t ordinal = 0;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto tokens = tokenize(line, lineno);
    if (tokens.empty()) return;
    Rule rule = LineParser(std::move(tokens), lineno).parse(++ordinal);
    try {
      program.add_rule(std::move(rule));
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  });
  return program;
}

Instance parse_facts(std::string_view text, const Program& program) {
  Instance out;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    const Symbol pred(fields.front());
    const auto info = program.predicate(pred);
    if (!info) throw ParseError(lineno, "unknown predicate '" + std::string(fields.front()) + "'");
    if (!info->extensional) {
      throw ParseError(lineno, "predicate '" + std::string(fields.front()) + "' is intensional");
    }
    if (fields.size() - 1 != info->arity) {
      throw ParseError(lineno, "arity mismatch for '" + std::string(fields.front()) + "': expected " +
                                   std::to_string(info->arity) + ", got " + std::to_string(fields.size() - 1));
    }
    std::vector<Term> args;
    args.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) args.push_back(Term::constant(fields[i]));
    out.insert(Atom(pred, std::move(args)));
  });
  return out;
}

std::string format_facts(const Instance& instance) {
  std::string out;
  for (const auto* f : instance.sorted_pointers()) {
    out += f->predicate.name();
    for (Term t : f->args) {
      out += '\t';
      out += t.to_string();
    }
    out += '\n';
  }
  return out;
}

std::string format_facts(const Instance& instance, const Program& program) {
  return format_facts(program.strip_internal(instance));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace tgr
