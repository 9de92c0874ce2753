#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qshuffle {

enum class TermKind : std::uint8_t { singleton, concat, shuffle };

// A term denoting a countable linear order: the one-point order, a finite
// concatenation, or a shuffle of finitely many argument orders (the dense
// interleaving in which every argument's copies sit between any two points).
//
// Values are immutable and share structure, so copies are cheap.  The factory
// functions maintain two representation invariants:
//   - no concat appears directly under a concat (nested parts are spliced),
//   - shuffle arguments are sorted by canonical_cmp (duplicates kept).
// Metrics are computed once at construction.
class Term {
public:
  static Term singleton();

  // n-fold concatenation of singletons; requires n >= 1.
  static Term integer(long long n);

  // Throws std::invalid_argument on an empty part list.  A single part (after
  // splicing nested concats) is returned unwrapped.
  static Term concat(std::vector<Term> parts);

  // Throws std::invalid_argument on an empty argument list.
  static Term shuffle(std::vector<Term> args);

  TermKind kind() const { return node_->kind; }
  bool is_singleton() const { return node_->kind == TermKind::singleton; }
  bool is_concat() const { return node_->kind == TermKind::concat; }
  bool is_shuffle() const { return node_->kind == TermKind::shuffle; }

  // Concat parts or shuffle arguments; empty for the singleton.
  const std::vector<Term>& children() const { return node_->children; }

  // Number of binary concatenations plus, for each shuffle, one plus its
  // arity.  An n-ary concat counts as n-1 binary ones.
  long long complexity() const { return node_->complexity; }

  // Maximum shuffle nesting.  Zero exactly for the finite orders.
  int depth() const { return node_->depth; }

  bool finite() const { return node_->depth == 0; }

  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind || x.complexity != y.complexity ||
        x.depth != y.depth || x.children.size() != y.children.size())
      return false;
    for (std::size_t i = 0; i < x.children.size(); ++i)
      if (!(x.children[i] == y.children[i])) return false;
    return true;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
  struct Node {
    TermKind kind;
    std::vector<Term> children;
    long long complexity;
    int depth;
    std::size_t hash;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::size_t mix(std::size_t h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

  static Term make(TermKind kind, std::vector<Term> children);

  std::shared_ptr<const Node> node_;
};

// Total order used everywhere terms need a deterministic arrangement: by
// complexity, then depth, then constructor (singleton < concat < shuffle),
// then lexicographically over children.  Equivalence under this order is
// structural equality.
inline std::strong_ordering canonical_cmp(const Term& a, const Term& b) {
  if (a.hash() == b.hash() && a == b) return std::strong_ordering::equal;
  if (auto c = a.complexity() <=> b.complexity(); c != 0) return c;
  if (auto c = a.depth() <=> b.depth(); c != 0) return c;
  if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind()); c != 0)
    return c;
  const auto& xs = a.children();
  const auto& ys = b.children();
  std::size_t n = xs.size() < ys.size() ? xs.size() : ys.size();
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = canonical_cmp(xs[i], ys[i]); c != 0) return c;
  return xs.size() <=> ys.size();
}

inline bool canonical_less(const Term& a, const Term& b) {
  return canonical_cmp(a, b) < 0;
}

inline Term Term::make(TermKind kind, std::vector<Term> children) {
  long long complexity = 0;
  int depth = 0;
  std::size_t h = mix(0, static_cast<std::size_t>(kind) + 0x51);
  for (const Term& c : children) {
    complexity += c.complexity();
    if (c.depth() > depth) depth = c.depth();
    h = mix(h, c.hash());
  }
  if (kind == TermKind::concat) {
    complexity += static_cast<long long>(children.size()) - 1;
  } else if (kind == TermKind::shuffle) {
    complexity += 1 + static_cast<long long>(children.size());
    depth += 1;
  }
  auto node = std::make_shared<Node>(
      Node{kind, std::move(children), complexity, depth, h});
  return Term(std::move(node));
}

inline Term Term::singleton() {
  static const Term one = make(TermKind::singleton, {});
  return one;
}

inline Term Term::integer(long long n) {
  if (n < 1) throw std::invalid_argument("integer term requires n >= 1");
  if (n == 1) return singleton();
  std::vector<Term> parts(static_cast<std::size_t>(n), singleton());
  return make(TermKind::concat, std::move(parts));
}

inline Term Term::concat(std::vector<Term> parts) {
  if (parts.empty()) throw std::invalid_argument("concat of no parts");
  std::vector<Term> flat;
  flat.reserve(parts.size());
  for (Term& p : parts) {
    if (p.is_concat()) {
      for (const Term& q : p.children()) flat.push_back(q);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.size() == 1) return std::move(flat[0]);
  return make(TermKind::concat, std::move(flat));
}

inline Term Term::shuffle(std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("shuffle of no arguments");
  std::sort(args.begin(), args.end(), canonical_less);
  return make(TermKind::shuffle, std::move(args));
}

// Child replacement that re-establishes the factory invariants (splicing and
// argument order), so the result can differ in shape from a plain substitution.
inline Term with_child(const Term& t, std::size_t index, Term replacement) {
  std::vector<Term> kids = t.children();
  kids.at(index) = std::move(replacement);
  switch (t.kind()) {
    case TermKind::concat: return Term::concat(std::move(kids));
    case TermKind::shuffle: return Term::shuffle(std::move(kids));
    default: throw std::invalid_argument("singleton has no children");
  }
}

// Subterm at a path of child indices; throws std::out_of_range off the tree.
inline Term subterm_at(const Term& t, std::span<const int> path) {
  Term cur = t;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur.children().size())
      throw std::out_of_range("subterm path leaves the term");
    cur = cur.children()[static_cast<std::size_t>(i)];
  }
  return cur;
}

// Membership of x among the children of t, under structural equality.
// Children of a shuffle are sorted, so this can binary-search.
inline bool has_child(const Term& t, const Term& x) {
  const auto& kids = t.children();
  if (t.is_shuffle())
    return std::binary_search(kids.begin(), kids.end(), x, canonical_less);
  for (const Term& k : kids)
    if (k == x) return true;
  return false;
}

}  // namespace qshuffle
