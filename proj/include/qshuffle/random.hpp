#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qshuffle/term.hpp"

namespace qshuffle {

// Constructor weights and size caps for gen_random.
struct GenOptions {
  int weight_singleton = 2;
  int weight_concat = 3;
  int weight_shuffle = 3;
  int max_parts = 4;   // concat parts drawn from 2..max_parts
  int max_arity = 3;   // shuffle arity drawn from 1..max_arity
};

namespace detail {

// Modulo draw instead of uniform_int_distribution: the stream is then fixed
// by the mt19937_64 algorithm alone, identical across standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  return n <= 1 ? 0 : rng() % n;
}

inline Term gen_term(std::mt19937_64& rng, long long budget, int max_depth,
                     const GenOptions& opt) {
  bool can_concat = budget >= 1;
  bool can_shuffle = budget >= 2 && max_depth >= 1;
  int total = opt.weight_singleton + (can_concat ? opt.weight_concat : 0) +
              (can_shuffle ? opt.weight_shuffle : 0);
  long long roll = static_cast<long long>(draw(rng, static_cast<std::uint64_t>(total)));
  roll -= opt.weight_singleton;
  if (roll < 0) return Term::singleton();
  if (can_concat) {
    roll -= opt.weight_concat;
    if (roll < 0) {
      long long most = budget + 1 < opt.max_parts ? budget + 1 : opt.max_parts;
      long long k = 2 + static_cast<long long>(draw(rng, static_cast<std::uint64_t>(most - 1)));
      long long rest = budget - (k - 1);
      std::vector<Term> parts;
      parts.reserve(static_cast<std::size_t>(k));
      for (long long i = 0; i < k; ++i) {
        long long share = static_cast<long long>(
            draw(rng, static_cast<std::uint64_t>(rest + 1)));
        parts.push_back(gen_term(rng, share, max_depth, opt));
        rest -= parts.back().complexity();
      }
      return Term::concat(std::move(parts));
    }
  }
  long long most = budget - 1 < opt.max_arity ? budget - 1 : opt.max_arity;
  long long n = 1 + static_cast<long long>(draw(rng, static_cast<std::uint64_t>(most)));
  long long rest = budget - 1 - n;
  std::vector<Term> args;
  args.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    long long share =
        static_cast<long long>(draw(rng, static_cast<std::uint64_t>(rest + 1)));
    args.push_back(gen_term(rng, share, max_depth - 1, opt));
    rest -= args.back().complexity();
  }
  return Term::shuffle(std::move(args));
}

}  // namespace detail

// Deterministic seeded term with complexity <= max_complexity and
// depth <= max_depth.  With both bounds zero the only candidate is the
// singleton.
inline Term gen_random(std::uint64_t seed, long long max_complexity, int max_depth,
                       const GenOptions& opt = {}) {
  std::mt19937_64 rng(seed);
  return detail::gen_term(rng, max_complexity, max_depth, opt);
}

}  // namespace qshuffle
