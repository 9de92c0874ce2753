#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qshuffle/closure.hpp"  // ResourceLimitError
#include "qshuffle/term.hpp"

namespace qshuffle {

// Exact fraction used to tag shuffle copies.  Only order matters; fresh tags
// are midpoints or one beyond the extremes, so numerators and denominators
// stay far from overflow at any supported round count.
struct Rational {
  long long num = 0;
  long long den = 1;  // > 0, reduced

  static Rational of(long long n) { return {n, 1}; }

  static Rational make(long long n, long long d) {
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }

  Rational mid(const Rational& o) const {
    return make(num * o.den + o.num * den, 2 * den * o.den);
  }
  Rational minus_one() const { return {num - den, den}; }
  Rational plus_one() const { return {num + den, den}; }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

// One point of a term's denoted order, addressed structurally along the term:
// nothing at a singleton, a part index at a concat, and at a shuffle the
// rational tag of the copy plus the colour (argument index) the copy
// instantiates.
struct ConcatStep {
  int part;
};
struct ShuffleStep {
  Rational tag;
  int colour;
};
using AddressStep = std::variant<ConcatStep, ShuffleStep>;

struct PointAddress {
  std::vector<AddressStep> steps;
};

// Realizes the denoted order on points: concat parts in sequence, shuffle
// copies by tag.  Addresses of the same term diverge before either ends, and
// full equality means the same point.
inline std::strong_ordering compare_addresses(const PointAddress& a,
                                              const PointAddress& b) {
  std::size_t n = a.steps.size() < b.steps.size() ? a.steps.size() : b.steps.size();
  for (std::size_t i = 0; i < n; ++i) {
    const AddressStep& x = a.steps[i];
    const AddressStep& y = b.steps[i];
    if (auto c = x.index() <=> y.index(); c != 0) return c;
    if (std::holds_alternative<ConcatStep>(x)) {
      if (auto c = std::get<ConcatStep>(x).part <=> std::get<ConcatStep>(y).part;
          c != 0)
        return c;
    } else {
      const auto& sx = std::get<ShuffleStep>(x);
      const auto& sy = std::get<ShuffleStep>(y);
      if (auto c = sx.tag <=> sy.tag; c != 0) return c;
      if (auto c = sx.colour <=> sy.colour; c != 0) return c;
    }
  }
  return a.steps.size() <=> b.steps.size();
}

inline bool same_address(const PointAddress& a, const PointAddress& b) {
  return compare_addresses(a, b) == std::strong_ordering::equal;
}

enum class Side { left, right };

struct GamePosition {
  Term left;
  Term right;
  std::vector<PointAddress> picks_left;
  std::vector<PointAddress> picks_right;
  int rounds_left = 0;
};

namespace detail {

// A picked point viewed from somewhere inside the term: the address plus how
// many leading steps have already been consumed.
struct SubPick {
  const PointAddress* addr;
  std::size_t depth;
};

inline void collect_representatives(const Term& t, std::vector<SubPick> picks,
                                    PointAddress& prefix,
                                    std::vector<PointAddress>& out) {
  switch (t.kind()) {
    case TermKind::singleton:
      // the one point; if a pick already sits here, reuse covers it
      if (picks.empty()) out.push_back(prefix);
      return;
    case TermKind::concat: {
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        std::vector<SubPick> sub;
        for (const SubPick& p : picks) {
          const auto& step = std::get<ConcatStep>(p.addr->steps[p.depth]);
          if (step.part == static_cast<int>(i)) sub.push_back({p.addr, p.depth + 1});
        }
        prefix.steps.push_back(ConcatStep{static_cast<int>(i)});
        collect_representatives(t.children()[i], std::move(sub), prefix, out);
        prefix.steps.pop_back();
      }
      return;
    }
    case TermKind::shuffle: {
      struct Copy {
        Rational tag;
        int colour;
        std::vector<SubPick> sub;
      };
      std::vector<Copy> copies;  // sorted by tag
      for (const SubPick& p : picks) {
        const auto& step = std::get<ShuffleStep>(p.addr->steps[p.depth]);
        std::size_t j = 0;
        while (j < copies.size() && copies[j].tag < step.tag) ++j;
        if (j == copies.size() || !(copies[j].tag == step.tag))
          copies.insert(copies.begin() + j, Copy{step.tag, step.colour, {}});
        copies[j].sub.push_back({p.addr, p.depth + 1});
      }
      for (const Copy& c : copies) {
        prefix.steps.push_back(ShuffleStep{c.tag, c.colour});
        collect_representatives(t.children()[static_cast<std::size_t>(c.colour)],
                                c.sub, prefix, out);
        prefix.steps.pop_back();
      }
      // one fresh tag per gap determined by the existing tags
      std::vector<Rational> fresh;
      if (copies.empty()) {
        fresh.push_back(Rational::of(0));
      } else {
        fresh.push_back(copies.front().tag.minus_one());
        for (std::size_t j = 0; j + 1 < copies.size(); ++j)
          fresh.push_back(copies[j].tag.mid(copies[j + 1].tag));
        fresh.push_back(copies.back().tag.plus_one());
      }
      for (const Rational& q : fresh) {
        for (std::size_t colour = 0; colour < t.children().size(); ++colour) {
          prefix.steps.push_back(ShuffleStep{q, static_cast<int>(colour)});
          collect_representatives(t.children()[colour], {}, prefix, out);
          prefix.steps.pop_back();
        }
      }
      return;
    }
  }
}

}  // namespace detail

// Representative next picks for one side: every point of the structure is
// carried to one of these by an automorphism fixing the side's current picks
// (reuse an existing pick; take the point of a concat part; descend a copy at
// an existing shuffle tag; or open a fresh tag in any gap with any colour,
// whose copy is explored pick-free).  Homogeneity of the shuffle orders makes
// the gap/colour choice exhaustive up to automorphism.
inline std::vector<PointAddress> enumerate_moves(const GamePosition& pos, Side side) {
  const Term& t = side == Side::left ? pos.left : pos.right;
  const auto& picks = side == Side::left ? pos.picks_left : pos.picks_right;

  std::vector<PointAddress> out;
  for (const PointAddress& p : picks) {
    bool dup = false;
    for (const PointAddress& q : out)
      if (same_address(p, q)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  std::vector<detail::SubPick> sub;
  sub.reserve(picks.size());
  for (const PointAddress& p : picks) sub.push_back({&p, 0});
  PointAddress prefix;
  detail::collect_representatives(t, std::move(sub), prefix, out);
  return out;
}

struct GameLimits {
  int max_rounds = 6;
  std::size_t memo_cap = 1'000'000;
};

enum class GameWinner { spoiler, duplicator };

namespace detail {

inline int sign_of(std::strong_ordering o) {
  return o < 0 ? -1 : (o > 0 ? 1 : 0);
}

// Tags carry no information beyond their relative order within one shuffle
// instance, so replace each side's tags by their rank among the side's picks
// sharing the same address prefix.  Equal positions up to retagging then
// serialize identically.
inline void canonicalize_tags(std::vector<PointAddress>& addrs) {
  struct Group {
    std::vector<std::size_t> members;  // indices into addrs
    std::size_t depth;
  };
  std::vector<Group> stack;
  Group all;
  all.depth = 0;
  for (std::size_t i = 0; i < addrs.size(); ++i) all.members.push_back(i);
  stack.push_back(std::move(all));
  while (!stack.empty()) {
    Group g = std::move(stack.back());
    stack.pop_back();
    // partition members by their step at g.depth; addresses ending here drop out
    std::vector<std::size_t> live;
    for (std::size_t i : g.members)
      if (g.depth < addrs[i].steps.size()) live.push_back(i);
    if (live.empty()) continue;
    if (std::holds_alternative<ConcatStep>(addrs[live[0]].steps[g.depth])) {
      std::unordered_map<int, Group> parts;
      for (std::size_t i : live) {
        int part = std::get<ConcatStep>(addrs[i].steps[g.depth]).part;
        auto& sub = parts[part];
        sub.depth = g.depth + 1;
        sub.members.push_back(i);
      }
      for (auto& [part, sub] : parts) stack.push_back(std::move(sub));
    } else {
      std::vector<Rational> tags;
      for (std::size_t i : live) {
        const Rational& tag = std::get<ShuffleStep>(addrs[i].steps[g.depth]).tag;
        bool seen = false;
        for (const Rational& u : tags)
          if (u == tag) {
            seen = true;
            break;
          }
        if (!seen) tags.push_back(tag);
      }
      std::sort(tags.begin(), tags.end(),
                [](const Rational& a, const Rational& b) { return a < b; });
      std::unordered_map<long long, Group> groups;
      for (std::size_t i : live) {
        auto& step = std::get<ShuffleStep>(addrs[i].steps[g.depth]);
        long long rank = 0;
        while (!(tags[static_cast<std::size_t>(rank)] == step.tag)) ++rank;
        step.tag = Rational::of(rank);
        auto& sub = groups[rank];
        sub.depth = g.depth + 1;
        sub.members.push_back(i);
      }
      for (auto& [rank, sub] : groups) stack.push_back(std::move(sub));
    }
  }
}

inline void serialize_address(const PointAddress& a, std::string& out) {
  for (const AddressStep& s : a.steps) {
    if (std::holds_alternative<ConcatStep>(s)) {
      out += 'c';
      out += std::to_string(std::get<ConcatStep>(s).part);
    } else {
      const auto& sh = std::get<ShuffleStep>(s);
      out += 's';
      out += std::to_string(sh.tag.num);
      if (sh.tag.den != 1) {
        out += '/';
        out += std::to_string(sh.tag.den);
      }
      out += ':';
      out += std::to_string(sh.colour);
    }
    out += '.';
  }
  out += '|';
}

struct GameSolver {
  Term left;
  Term right;
  std::size_t memo_cap;
  std::unordered_map<std::string, bool> memo;

  // (position, rounds) -> does the player to move (Spoiler) force a win
  std::string key_of(const GamePosition& pos) const {
    std::vector<PointAddress> ls = pos.picks_left;
    std::vector<PointAddress> rs = pos.picks_right;
    canonicalize_tags(ls);
    canonicalize_tags(rs);
    std::vector<std::size_t> order(ls.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return compare_addresses(ls[a], ls[b]) < 0;
    });
    std::string key = std::to_string(pos.rounds_left);
    key += ';';
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      if (idx > 0 && same_address(ls[order[idx]], ls[order[idx - 1]]))
        continue;  // duplicate pair
      serialize_address(ls[order[idx]], key);
      serialize_address(rs[order[idx]], key);
    }
    return key;
  }

  static bool consistent(const GamePosition& pos, const PointAddress& x,
                         const PointAddress& y) {
    for (std::size_t j = 0; j < pos.picks_left.size(); ++j) {
      int cx = sign_of(compare_addresses(x, pos.picks_left[j]));
      int cy = sign_of(compare_addresses(y, pos.picks_right[j]));
      if (cx != cy) return false;
    }
    return true;
  }

  bool spoiler_wins(const GamePosition& pos) {
    if (pos.rounds_left <= 0) return false;
    std::string key = key_of(pos);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool win = solve(pos);
    if (memo.size() >= memo_cap)
      throw ResourceLimitError("EF game memo exceeded its cap");
    memo.emplace(std::move(key), win);
    return win;
  }

  bool solve(const GamePosition& pos) {
    for (Side side : {Side::left, Side::right}) {
      Side other = side == Side::left ? Side::right : Side::left;
      std::vector<PointAddress> moves = enumerate_moves(pos, side);
      std::vector<PointAddress> replies = enumerate_moves(pos, other);
      for (const PointAddress& m : moves) {
        bool survivable = false;
        for (const PointAddress& r : replies) {
          const PointAddress& x = side == Side::left ? m : r;
          const PointAddress& y = side == Side::left ? r : m;
          if (!consistent(pos, x, y)) continue;
          GamePosition next{pos.left, pos.right, pos.picks_left, pos.picks_right,
                            pos.rounds_left - 1};
          next.picks_left.push_back(x);
          next.picks_right.push_back(y);
          if (!spoiler_wins(next)) {
            survivable = true;
            break;
          }
        }
        if (!survivable) return true;
      }
    }
    return false;
  }
};

}  // namespace detail

// Exact winner of the k-round game where Spoiler tries to expose a structural
// difference between the denoted orders of a and b.  Spoiler winning proves
// the orders non-isomorphic; Duplicator winning at small k is evidence (and,
// for these orders, conclusive once k separates all inequivalent pairs in
// play).  Throws std::invalid_argument when k is negative or above the
// configured maximum, ResourceLimitError when the memo cap is hit.
inline GameWinner ef_winner(const Term& a, const Term& b, int k,
                            const GameLimits& limits = {}) {
  if (k < 0 || k > limits.max_rounds)
    throw std::invalid_argument("round count outside the configured range");
  detail::GameSolver solver{a, b, limits.memo_cap, {}};
  GamePosition start{a, b, {}, {}, k};
  return solver.spoiler_wins(start) ? GameWinner::spoiler : GameWinner::duplicator;
}

}  // namespace qshuffle
