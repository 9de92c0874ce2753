#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qshuffle/parse.hpp"
#include "qshuffle/rewrite.hpp"
#include "qshuffle/term.hpp"

namespace qshuffle {

// A possibly infinite sequence of terms, presented finitely: the listed
// prefix, then nothing (none), an endless run of singletons (ones), or one
// term repeated forever (repeat).
enum class TailKind { none, ones, repeat };

struct TermSequence {
  std::vector<Term> prefix;
  TailKind tail = TailKind::none;
  std::optional<Term> repeated;  // engaged exactly when tail == repeat

  friend bool operator==(const TermSequence& a, const TermSequence& b) {
    if (a.tail != b.tail || a.prefix.size() != b.prefix.size()) return false;
    for (std::size_t i = 0; i < a.prefix.size(); ++i)
      if (!(a.prefix[i] == b.prefix[i])) return false;
    if (a.tail == TailKind::repeat && !(*a.repeated == *b.repeated)) return false;
    return true;
  }
};

// Raised when a repeat tail settles into a pattern the three supported tail
// shapes cannot express.  The supported shapes absorb every repeat tail in at
// most two steps (see normalize_sequence), so reaching this indicates a bug.
class UnsupportedTailError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Sum of the term complexities plus the sequence length; infinite sequences
// (any tail other than none) have no finite complexity.
inline std::optional<long long> sequence_complexity(const TermSequence& s) {
  if (s.tail != TailKind::none) return std::nullopt;
  long long total = static_cast<long long>(s.prefix.size());
  for (const Term& t : s.prefix) total += t.complexity();
  return total;
}

// A sequence is in normal form when every term is, no collapse window
// (S^S or S^t^S with t an argument of S) spans consecutive elements, and a
// finite element is followed either by an infinite one or by singletons
// forever.  Windows that involve the tail are checked on two unrolled tail
// copies, which covers every window shape a periodic tail can form.
inline bool is_normal_form_sequence(const TermSequence& s) {
  for (const Term& t : s.prefix)
    if (!is_normal_form(t)) return false;
  if (s.tail == TailKind::repeat && !is_normal_form(*s.repeated)) return false;

  std::vector<Term> v = s.prefix;
  if (s.tail == TailKind::ones) {
    v.push_back(Term::singleton());
    v.push_back(Term::singleton());
  } else if (s.tail == TailKind::repeat) {
    v.push_back(*s.repeated);
    v.push_back(*s.repeated);
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i].is_shuffle() && v[i] == v[i + 1]) return false;
  for (std::size_t i = 0; i + 2 < v.size(); ++i)
    if (v[i].is_shuffle() && v[i] == v[i + 2] && has_child(v[i], v[i + 1]))
      return false;

  for (std::size_t i = 0; i < s.prefix.size(); ++i) {
    if (!s.prefix[i].finite()) continue;
    bool is_last = i + 1 == s.prefix.size() && s.tail == TailKind::none;
    if (is_last) break;
    bool next_infinite = i + 1 < s.prefix.size()
                             ? !s.prefix[i + 1].finite()
                             : s.tail == TailKind::repeat && !s.repeated->finite();
    if (next_infinite) continue;
    // the next element is finite, so everything from here on must be 1s
    if (!s.prefix[i].is_singleton()) return false;
    for (std::size_t j = i + 1; j < s.prefix.size(); ++j)
      if (!s.prefix[j].is_singleton()) return false;
    if (s.tail == TailKind::none) return false;
    if (s.tail == TailKind::repeat && !s.repeated->is_singleton()) return false;
    break;
  }
  // a finite repeat tail pairs each copy with the next, so it must be 1s
  if (s.tail == TailKind::repeat && s.repeated->finite() &&
      !s.repeated->is_singleton())
    return false;
  return true;
}

namespace detail {

// Streaming pass of normalize_sequence.  Terms arrive already normalized; the
// emitted list plus the final tail is the sequence normal form.
struct SequenceBuilder {
  std::vector<Term> out;
  TailKind tail = TailKind::none;

  enum class Fed { emitted, merged, window3, window4, ones_stop };

  // later_infinite: some strictly later input term is infinite.
  // more_input: infinitely many input terms remain (any tail at all).
  Fed feed(const Term& t, bool later_infinite, bool more_input) {
    if (t.finite()) {
      bool back_finite = !out.empty() && out.back().finite();
      if (!later_infinite && more_input && (out.empty() || back_finite)) {
        // everything from here on is finite: the rest dissolves into 1s
        if (back_finite) out.pop_back();
        tail = TailKind::ones;
        return Fed::ones_stop;
      }
      if (back_finite) {
        Term merged = Term::concat({out.back(), t});
        out.back() = merged;
        return Fed::merged;
      }
      out.push_back(t);
      return Fed::emitted;
    }
    if (t.is_shuffle()) {
      if (out.size() >= 2 && out[out.size() - 2] == t &&
          has_child(t, out.back())) {
        out.pop_back();
        return Fed::window3;
      }
      if (!out.empty() && out.back() == t) return Fed::window4;
    }
    out.push_back(t);
    return Fed::emitted;
  }
};

}  // namespace detail

// One left-to-right pass producing the unique normal form of the denoted
// order's sequence presentation.  Finite runs merge into a single finite
// element (or dissolve into an all-1s tail when nothing infinite follows);
// collapse windows against the already-emitted elements are folded as they
// appear; a repeat tail is classified by feeding at most two unrolled copies:
// it either dissolves into 1s, is absorbed by the emitted prefix, or stands
// as a repeat of its normal form.
inline TermSequence normalize_sequence(const TermSequence& in) {
  using Fed = detail::SequenceBuilder::Fed;
  detail::SequenceBuilder b;

  auto later_infinite = [&](std::size_t i) {
    for (std::size_t j = i + 1; j < in.prefix.size(); ++j)
      if (!in.prefix[j].finite()) return true;
    return in.tail == TailKind::repeat && !in.repeated->finite();
  };
  bool more_input = in.tail != TailKind::none;

  for (std::size_t i = 0; i < in.prefix.size(); ++i) {
    Fed r = b.feed(normal_form(in.prefix[i]), later_infinite(i), more_input);
    if (r == Fed::ones_stop) return {std::move(b.out), TailKind::ones, {}};
  }

  switch (in.tail) {
    case TailKind::none:
      return {std::move(b.out), TailKind::none, {}};
    case TailKind::ones: {
      // at most two 1s are needed before the run dissolves
      for (int k = 0; k < 2; ++k) {
        Fed r = b.feed(Term::singleton(), false, true);
        if (r == Fed::ones_stop) return {std::move(b.out), TailKind::ones, {}};
      }
      throw UnsupportedTailError("ones tail failed to settle");
    }
    case TailKind::repeat: {
      Term t = normal_form(*in.repeated);
      bool inf = !t.finite();
      Fed first = b.feed(t, inf, true);
      if (first == Fed::ones_stop) return {std::move(b.out), TailKind::ones, {}};
      if (first == Fed::window4) return {std::move(b.out), TailKind::none, {}};
      Fed second = b.feed(t, inf, true);
      if (second == Fed::ones_stop) return {std::move(b.out), TailKind::ones, {}};
      if (second == Fed::window4) return {std::move(b.out), TailKind::none, {}};
      if (first == Fed::emitted && second == Fed::emitted) {
        // the copies stand on their own: drop them and keep the tail symbolic
        b.out.pop_back();
        b.out.pop_back();
        return {std::move(b.out), TailKind::repeat, t};
      }
      throw UnsupportedTailError("repeat tail failed to settle");
    }
  }
  throw UnsupportedTailError("unreachable");
}

// Sequence grammar:
//   sequence := "[" "]" | "[" item {";" item} "]"
//   item     := term | "ones" | "repeat" term     (tail items last only)
inline TermSequence parse_sequence(std::string_view text) {
  detail::Cursor c{text};
  c.expect('[', "'['");
  TermSequence s;
  if (!c.eat(']')) {
    for (;;) {
      if (c.eat_word("ones")) {
        s.tail = TailKind::ones;
      } else if (c.eat_word("repeat")) {
        s.tail = TailKind::repeat;
        s.repeated = detail::parse_term(c);
      } else {
        s.prefix.push_back(detail::parse_term(c));
      }
      if (!c.eat(';')) break;
      if (s.tail != TailKind::none)
        throw ParseError("tail must be the last item", c.pos);
    }
    c.expect(']', "']'");
  }
  if (!c.at_end()) throw ParseError("unexpected trailing input", c.pos);
  return s;
}

inline std::string render_sequence(const TermSequence& s) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const Term& t : s.prefix) {
    if (!first) os << "; ";
    first = false;
    detail::render_to(os, t);
  }
  if (s.tail != TailKind::none) {
    if (!first) os << "; ";
    if (s.tail == TailKind::ones) {
      os << "ones";
    } else {
      os << "repeat ";
      detail::render_to(os, *s.repeated);
    }
  }
  os << ']';
  return os.str();
}

}  // namespace qshuffle
