#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qshuffle/term.hpp"

namespace qshuffle {

// The rewrite rules that shrink a term toward its normal form.
//
//   dedup            sh(.., t, t, ..)            -> drop one copy
//   unnest           sh(u_0, .., u_k)            -> sh(A), when every u_j
//                    either occurs among the inner arguments A or is a copy
//                    of sh(A) flanked on either side by an optional element
//                    of A, and at least one u_j is such a copy
//   concat_collapse  ..^S^S^.. or ..^S^t^S^..    -> ..^S^.., for a shuffle S
//                    and t one of its arguments
//   flatten          listed for completeness of the trace schema; concats are
//                    kept flat by construction, so it is never emitted
enum class RewriteRule { dedup, unnest, concat_collapse, flatten };

inline const char* rule_name(RewriteRule r) {
  switch (r) {
    case RewriteRule::dedup: return "dedup";
    case RewriteRule::unnest: return "unnest";
    case RewriteRule::concat_collapse: return "concat_collapse";
    case RewriteRule::flatten: return "flatten";
  }
  return "?";
}

// One applied rewrite: the subterm `before` at `path` (child indices from the
// root at the time of application) was replaced by `after`.
struct RewriteStep {
  RewriteRule rule;
  std::vector<int> path;
  Term before;
  Term after;
};

// sh(.., t, t, ..) -> one copy dropped.  Arguments are sorted, so duplicates
// are adjacent.  Returns nullopt when t is not a shuffle or has no duplicate.
inline std::optional<Term> try_dedup(const Term& t) {
  if (!t.is_shuffle()) return std::nullopt;
  const auto& args = t.children();
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == args[i + 1]) {
      std::vector<Term> rest;
      rest.reserve(args.size() - 1);
      for (std::size_t j = 0; j < args.size(); ++j)
        if (j != i + 1) rest.push_back(args[j]);
      return Term::shuffle(std::move(rest));
    }
  }
  return std::nullopt;
}

namespace detail {

// The run of concat parts [first, last) as a single term; never called empty.
inline Term segment_term(const std::vector<Term>& parts, std::size_t first,
                         std::size_t last) {
  if (last - first == 1) return parts[first];
  return Term::concat(std::vector<Term>(parts.begin() + first, parts.begin() + last));
}

// Is u a copy of the shuffle `inner`, flanked on either side by an optional
// element of inner's arguments?  A bare `inner` counts, with both flanks
// absent.  Flanks are matched as segments of u's flattened part list, so a
// concat-valued flank spans several parts.
inline bool flanked_copy(const Term& u, const Term& inner) {
  if (u == inner) return true;
  if (!u.is_concat()) return false;
  const auto& parts = u.children();
  for (std::size_t s = 0; s < parts.size(); ++s) {
    if (parts[s] != inner) continue;
    if (s > 0 && !has_child(inner, segment_term(parts, 0, s))) continue;
    if (s + 1 < parts.size() &&
        !has_child(inner, segment_term(parts, s + 1, parts.size())))
      continue;
    return true;
  }
  return false;
}

// Does every argument of the outer shuffle either occur among the inner
// shuffle's arguments or read as a flanked copy of it?  Any argument the
// candidate was drawn from is covered by the flanked-copy case, so at least
// one copy is always present when this holds.
inline bool unnests_to(const Term& outer, const Term& inner) {
  for (const Term& arg : outer.children())
    if (!has_child(inner, arg) && !flanked_copy(arg, inner)) return false;
  return true;
}

}  // namespace detail

// sh(u_0, .., u_k) -> sh(A) where each u_j either occurs among the inner
// arguments A or is a flanked copy of sh(A); the candidate inner shuffles are
// the shuffle-valued arguments and the shuffle parts of concat-valued
// arguments.  Returns nullopt when t is not a shuffle or no candidate fits.
inline std::optional<Term> try_unnest(const Term& t) {
  if (!t.is_shuffle()) return std::nullopt;
  for (const Term& u : t.children()) {
    if (u.is_shuffle()) {
      if (detail::unnests_to(t, u)) return u;
      continue;
    }
    if (!u.is_concat()) continue;
    for (const Term& part : u.children()) {
      if (!part.is_shuffle()) continue;
      if (detail::flanked_copy(u, part) && detail::unnests_to(t, part))
        return part;
    }
  }
  return std::nullopt;
}

// Drops the leftmost window ..^S^S^.. or ..^S^t^S^.. down to a single S,
// where S is a shuffle and t one of its arguments.  Returns nullopt when t is
// not a concat or no window exists.  The result can degrade to S itself.
inline std::optional<Term> try_concat_collapse(const Term& t) {
  if (!t.is_concat()) return std::nullopt;
  const auto& parts = t.children();
  auto without = [&](std::size_t from, std::size_t count) {
    std::vector<Term> rest;
    rest.reserve(parts.size() - count);
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j < from || j >= from + count) rest.push_back(parts[j]);
    return Term::concat(std::move(rest));
  };
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!parts[i].is_shuffle()) continue;
    if (parts[i + 1] == parts[i]) return without(i + 1, 1);
    if (i + 2 < parts.size() && parts[i + 2] == parts[i] &&
        has_child(parts[i], parts[i + 1]))
      return without(i + 1, 2);
  }
  return std::nullopt;
}

// A term is in normal form when no rule applies anywhere in it.  Finite terms
// always are.
inline bool is_normal_form(const Term& t) {
  for (const Term& c : t.children())
    if (!is_normal_form(c)) return false;
  switch (t.kind()) {
    case TermKind::singleton: return true;
    case TermKind::concat: return !try_concat_collapse(t).has_value();
    case TermKind::shuffle:
      return !try_dedup(t).has_value() && !try_unnest(t).has_value();
  }
  return true;
}

struct NormalizeResult {
  Term term;
  std::vector<RewriteStep> steps;
};

namespace detail {

struct Normalizer {
  std::vector<RewriteStep> steps;
  std::vector<int> path;

  Term run(const Term& t) {
    if (t.is_singleton()) return t;
    std::vector<Term> kids;
    kids.reserve(t.children().size());
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      path.push_back(static_cast<int>(i));
      kids.push_back(run(t.children()[i]));
      path.pop_back();
    }
    if (t.is_concat()) {
      Term cur = Term::concat(std::move(kids));
      while (cur.is_concat()) {
        auto next = try_concat_collapse(cur);
        if (!next) break;
        steps.push_back({RewriteRule::concat_collapse, path, cur, *next});
        cur = *next;
      }
      return cur;
    }
    Term cur = Term::shuffle(std::move(kids));
    for (;;) {
      if (auto next = try_dedup(cur)) {
        steps.push_back({RewriteRule::dedup, path, cur, *next});
        cur = *next;
        continue;
      }
      if (auto next = try_unnest(cur)) {
        steps.push_back({RewriteRule::unnest, path, cur, *next});
        cur = *next;
        continue;
      }
      return cur;
    }
  }
};

}  // namespace detail

// Innermost-first reduction.  Each rule strictly decreases complexity and the
// rules only ever expose redexes at the rewritten node's position or above,
// so the loop at each node terminates with every subterm in normal form.
// The recorded path of a step addresses the rewritten subterm within the
// then-current tree; renumbering of shuffle arguments caused by canonical
// ordering is representational and is not traced.
inline NormalizeResult normalize(const Term& t) {
  detail::Normalizer n;
  Term result = n.run(t);
  return {std::move(result), std::move(n.steps)};
}

inline Term normal_form(const Term& t) { return normalize(t).term; }

// Two terms denote isomorphic orders exactly when their normal forms match.
inline bool equivalent(const Term& a, const Term& b) {
  return normal_form(a) == normal_form(b);
}

}  // namespace qshuffle
