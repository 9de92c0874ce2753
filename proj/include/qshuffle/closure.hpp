#pragma once

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "qshuffle/rewrite.hpp"
#include "qshuffle/term.hpp"

namespace qshuffle {

// Thrown when a search exceeds its configured memory budget; the caller gets
// no verdict, as opposed to a definite not-connected-within-bound answer.
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// One shrinking rewrite available somewhere in a term.
struct RewriteSite {
  RewriteRule rule;
  std::vector<int> path;
  Term result;  // the whole term after rewriting at path
};

namespace detail {

template <typename Fn>
void for_each_dedup(const Term& t, Fn&& emit) {
  const auto& args = t.children();
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (!(args[i] == args[i + 1])) continue;
    if (i > 0 && args[i - 1] == args[i]) continue;  // one site per run
    std::vector<Term> rest;
    rest.reserve(args.size() - 1);
    for (std::size_t j = 0; j < args.size(); ++j)
      if (j != i + 1) rest.push_back(args[j]);
    emit(RewriteRule::dedup, Term::shuffle(std::move(rest)));
  }
}

template <typename Fn>
void for_each_unnest(const Term& t, Fn&& emit) {
  std::vector<Term> found;  // distinct inners; the same one can fit many ways
  auto note = [&](const Term& inner) {
    for (const Term& f : found)
      if (f == inner) return;
    found.push_back(inner);
    emit(RewriteRule::unnest, inner);
  };
  for (const Term& u : t.children()) {
    if (u.is_shuffle()) {
      if (unnests_to(t, u)) note(u);
      continue;
    }
    if (!u.is_concat()) continue;
    for (const Term& part : u.children()) {
      if (!part.is_shuffle()) continue;
      if (flanked_copy(u, part) && unnests_to(t, part)) note(part);
    }
  }
}

template <typename Fn>
void for_each_collapse(const Term& t, Fn&& emit) {
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
    if (parts[i + 1] == parts[i])
      emit(RewriteRule::concat_collapse, without(i + 1, 1));
    if (i + 2 < parts.size() && parts[i + 2] == parts[i] &&
        has_child(parts[i], parts[i + 1]))
      emit(RewriteRule::concat_collapse, without(i + 1, 2));
  }
}

template <typename Fn>
void collect_sites(const Term& t, std::vector<int>& path, Fn&& wrap) {
  if (t.is_shuffle()) {
    for_each_dedup(t, [&](RewriteRule r, Term n) { wrap(r, path, std::move(n)); });
    for_each_unnest(t, [&](RewriteRule r, Term n) { wrap(r, path, std::move(n)); });
  } else if (t.is_concat()) {
    for_each_collapse(t, [&](RewriteRule r, Term n) { wrap(r, path, std::move(n)); });
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_sites(t.children()[i], path, wrap);
    path.pop_back();
  }
}

// Rebuilds the root after replacing the subterm at path with value.
inline Term replace_at(const Term& root, std::span<const int> path, const Term& value) {
  if (path.empty()) return value;
  std::size_t i = static_cast<std::size_t>(path.front());
  return with_child(root, i,
                    replace_at(root.children()[i], path.subspan(1), value));
}

}  // namespace detail

// Every position where a rule applies, with the rewritten whole term.  Sites
// within a run of equal shuffle arguments are reported once; distinct sites
// can still produce equal results.
inline std::vector<RewriteSite> rewrite_sites(const Term& t) {
  std::vector<RewriteSite> sites;
  std::vector<int> path;
  detail::collect_sites(t, path, [&](RewriteRule r, const std::vector<int>& p, Term local) {
    sites.push_back({r, p, detail::replace_at(t, p, local)});
  });
  return sites;
}

namespace detail {

// Expansions: terms one reverse rule application away, capped at the
// complexity bound.  Enumerated at every shuffle subterm s of the root:
//   reverse dedup     s              -> s with one argument repeated
//   reverse unnest    s              -> shuffle of (subset of s's args) plus
//                                       [flank?] s [flank?], flanks from s's args
//   reverse collapse  s              -> s ^ s  or  s ^ arg ^ s
template <typename Fn>
void for_each_expansion_at(const Term& s, long long budget, Fn&& emit) {
  const auto& args = s.children();
  std::vector<Term> distinct;
  for (const Term& a : args)
    if (distinct.empty() || !(distinct.back() == a)) distinct.push_back(a);

  for (const Term& a : distinct) {
    if (s.complexity() + 1 + a.complexity() > budget) continue;
    std::vector<Term> more = args;
    more.push_back(a);
    emit(Term::shuffle(std::move(more)));
  }

  // subsets of the distinct args become the outer extras; flanks optional
  std::size_t n = distinct.size();
  if (n <= 20) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      long long extras = 0;
      std::vector<Term> outer;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (std::size_t{1} << b)) {
          extras += distinct[b].complexity();
          outer.push_back(distinct[b]);
        }
      long long base = 1 + static_cast<long long>(outer.size()) + 1 + extras +
                       s.complexity();
      if (base > budget) continue;
      for (std::size_t f0 = 0; f0 <= n; ++f0) {
        long long c0 = f0 < n ? distinct[f0].complexity() + 1 : 0;
        if (base + c0 > budget) continue;
        for (std::size_t f1 = 0; f1 <= n; ++f1) {
          long long c1 = f1 < n ? distinct[f1].complexity() + 1 : 0;
          if (base + c0 + c1 > budget) continue;
          std::vector<Term> middle;
          if (f0 < n) middle.push_back(distinct[f0]);
          middle.push_back(s);
          if (f1 < n) middle.push_back(distinct[f1]);
          std::vector<Term> shuffled = outer;
          shuffled.push_back(middle.size() == 1 ? s : Term::concat(std::move(middle)));
          emit(Term::shuffle(std::move(shuffled)));
        }
      }
    }
  }

  if (2 * s.complexity() + 1 <= budget) {
    emit(Term::concat({s, s}));
    for (const Term& a : distinct)
      if (2 * s.complexity() + 2 + a.complexity() <= budget)
        emit(Term::concat({s, a, s}));
  }
}

template <typename Fn>
void collect_expansions(const Term& root, const Term& t, std::vector<int>& path,
                        long long budget, Fn&& emit) {
  if (t.is_shuffle()) {
    long long rest = root.complexity() - t.complexity();
    for_each_expansion_at(t, budget - rest, [&](Term local) {
      emit(replace_at(root, path, local));
    });
  }
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_expansions(root, t.children()[i], path, budget, emit);
    path.pop_back();
  }
}

}  // namespace detail

// Neighbors of t in the undirected rewrite graph: one rule application in
// either direction, keeping complexity within max_complexity.
inline std::vector<Term> closure_neighbors(const Term& t, long long max_complexity) {
  std::vector<Term> out;
  for (RewriteSite& s : rewrite_sites(t)) out.push_back(std::move(s.result));
  std::vector<int> path;
  detail::collect_expansions(t, t, path, max_complexity,
                             [&](Term n) { out.push_back(std::move(n)); });
  return out;
}

struct ClosureLimits {
  std::size_t frontier_cap = 1'000'000;
};

enum class ClosureVerdict { connected, not_connected_within_bound };

namespace detail {

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

template <typename Stop>
std::unordered_set<Term, TermHash> closure_search(const Term& start,
                                                  long long max_complexity,
                                                  const ClosureLimits& limits,
                                                  Stop&& stop) {
  std::unordered_set<Term, TermHash> seen;
  std::deque<Term> queue;
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    Term cur = std::move(queue.front());
    queue.pop_front();
    for (Term& n : closure_neighbors(cur, max_complexity)) {
      if (n.complexity() > max_complexity) continue;
      if (!seen.insert(n).second) continue;
      if (seen.size() > limits.frontier_cap)
        throw ResourceLimitError("rewrite closure exceeded its frontier cap");
      if (stop(n)) return seen;
      queue.push_back(std::move(n));
    }
  }
  return seen;
}

}  // namespace detail

// All terms reachable from start by rule applications in either direction
// without ever exceeding max_complexity.
inline std::unordered_set<Term, detail::TermHash> closure_component(
    const Term& start, long long max_complexity, const ClosureLimits& limits = {}) {
  return detail::closure_search(start, max_complexity, limits,
                                [](const Term&) { return false; });
}

// Are a and b joined by a chain of rule applications (run forward or
// backward) whose intermediate terms stay within max_complexity?  Connected
// is definitive for equivalence; not-connected only says the bound was too
// tight to witness it, except that equivalent terms are always connected
// once max_complexity covers both inputs, because each one's reduction to
// the shared normal form only ever shrinks complexity.
// Requires max_complexity >= complexity of both inputs.
inline ClosureVerdict closure_equivalent(const Term& a, const Term& b,
                                         long long max_complexity,
                                         const ClosureLimits& limits = {}) {
  if (a.complexity() > max_complexity || b.complexity() > max_complexity)
    throw std::invalid_argument("closure bound below the inputs' complexity");
  if (a == b) return ClosureVerdict::connected;
  bool found = false;
  detail::closure_search(a, max_complexity, limits, [&](const Term& n) {
    if (n == b) found = true;
    return found;
  });
  return found ? ClosureVerdict::connected
               : ClosureVerdict::not_connected_within_bound;
}

}  // namespace qshuffle
