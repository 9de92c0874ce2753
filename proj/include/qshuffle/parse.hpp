#pragma once

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qshuffle/term.hpp"

namespace qshuffle {

// Reported with the byte offset of the offending character in the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

namespace detail {

// Largest accepted integer shorthand; anything bigger is almost certainly a
// typo and would allocate that many singleton nodes.
inline constexpr long long max_integer_literal = 1'000'000;

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos == text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(std::string("expected ") + what, pos);
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) != w) return false;
    // a word must not continue into an identifier character
    std::size_t after = pos + w.size();
    if (after < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
      return false;
    pos = after;
    return true;
  }
};

inline long long parse_integer(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.pos;
  long long value = 0;
  while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
    value = value * 10 + (c.text[c.pos] - '0');
    if (value > max_integer_literal)
      throw ParseError("integer literal too large", start);
    ++c.pos;
  }
  if (c.pos == start) throw ParseError("expected an integer", start);
  if (value == 0) throw ParseError("integer must be positive", start);
  return value;
}

Term parse_term(Cursor& c);

inline Term parse_atom(Cursor& c) {
  c.skip_ws();
  if (c.pos >= c.text.size()) throw ParseError("unexpected end of input", c.pos);
  char ch = c.text[c.pos];
  if (std::isdigit(static_cast<unsigned char>(ch))) {
    return Term::integer(parse_integer(c));
  }
  if (c.eat_word("sh")) {
    c.expect('(', "'(' after sh");
    std::vector<Term> args;
    args.push_back(parse_term(c));
    while (c.eat(',')) args.push_back(parse_term(c));
    c.expect(')', "')' closing sh(...)");
    return Term::shuffle(std::move(args));
  }
  if (c.eat('(')) {
    Term inner = parse_term(c);
    c.expect(')', "')'");
    return inner;
  }
  throw ParseError("expected a term", c.pos);
}

inline Term parse_term(Cursor& c) {
  std::vector<Term> parts;
  parts.push_back(parse_atom(c));
  while (c.eat('^')) parts.push_back(parse_atom(c));
  if (parts.size() == 1) return std::move(parts[0]);
  return Term::concat(std::move(parts));
}

inline void render_to(std::ostream& os, const Term& t);

// Emits a run of parts, folding maximal singleton runs into their count.
inline void render_parts(std::ostream& os, const std::vector<Term>& parts) {
  std::size_t i = 0;
  bool first = true;
  while (i < parts.size()) {
    if (!first) os << '^';
    first = false;
    if (parts[i].is_singleton()) {
      std::size_t run = 0;
      while (i < parts.size() && parts[i].is_singleton()) ++run, ++i;
      os << run;
    } else {
      render_to(os, parts[i]);
      ++i;
    }
  }
}

inline void render_to(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::singleton:
      os << '1';
      break;
    case TermKind::concat:
      render_parts(os, t.children());
      break;
    case TermKind::shuffle: {
      os << "sh(";
      bool first = true;
      for (const Term& a : t.children()) {
        if (!first) os << ", ";
        first = false;
        render_to(os, a);
      }
      os << ')';
      break;
    }
  }
}

}  // namespace detail

// Grammar:
//   term := atom {"^" atom}
//   atom := "1" | integer >= 2 | "sh" "(" term {"," term} ")" | "(" term ")"
// An integer n is shorthand for the n-fold concatenation of singletons.
// Throws ParseError on malformed input, including trailing garbage.
inline Term parse(std::string_view text) {
  detail::Cursor c{text};
  Term t = detail::parse_term(c);
  if (!c.at_end()) throw ParseError("unexpected trailing input", c.pos);
  return t;
}

// Deterministic text form, parseable back to an equal term.  Maximal runs of
// singletons in a concat render as their count; concat parts are never
// concats themselves, so no parentheses are ever needed.
inline std::string render(const Term& t) {
  std::ostringstream os;
  detail::render_to(os, t);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  detail::render_to(os, t);
  return os;
}

}  // namespace qshuffle
