#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "qshuffle/closure.hpp"
#include "qshuffle/parse.hpp"
#include "qshuffle/random.hpp"

using qshuffle::ClosureVerdict;
using qshuffle::Term;
using qshuffle::closure_equivalent;
using qshuffle::closure_neighbors;
using qshuffle::equivalent;
using qshuffle::rewrite_sites;

namespace {
Term t(const char* s) { return qshuffle::parse(s); }

bool contains(const std::vector<Term>& v, const Term& x) {
  return std::any_of(v.begin(), v.end(), [&](const Term& y) { return y == x; });
}
}  // namespace

TEST_CASE("closure connects rewrite-related terms", "[closure]") {
  CHECK(closure_equivalent(t("sh(1,1)"), t("sh(1)"), 8) ==
        ClosureVerdict::connected);
  CHECK(closure_equivalent(t("sh(1)"), t("sh(1)"), 2) ==
        ClosureVerdict::connected);
  CHECK(closure_equivalent(t("1"), t("1^1"), 8) ==
        ClosureVerdict::not_connected_within_bound);
  // joined only through a term above both: sh(1,1^1) <- sh(1,1^1,1^1) ... no,
  // directly reachable pairs with distinct normal forms stay apart
  CHECK(closure_equivalent(t("sh(1)"), t("sh(1,1^1)"), 10) ==
        ClosureVerdict::not_connected_within_bound);
  CHECK_THROWS_AS(closure_equivalent(t("sh(1)"), t("1"), 1),
                  std::invalid_argument);
}

TEST_CASE("neighbors include both contractions and expansions", "[closure]") {
  auto n = closure_neighbors(t("sh(1)"), 8);
  CHECK(contains(n, t("sh(1,1)")));        // reverse dedup
  CHECK(contains(n, t("sh(sh(1))")));      // reverse unnest, no extras
  CHECK(contains(n, t("sh(1, 1^sh(1))"))); // reverse unnest with flank
  CHECK(contains(n, t("sh(1)^sh(1)")));    // reverse collapse
  CHECK(contains(n, t("sh(1)^1^sh(1)")));  // reverse collapse with middle

  auto m = closure_neighbors(t("sh(1,1)"), 8);
  CHECK(contains(m, t("sh(1)")));          // forward dedup

  // expansions respect the bound
  for (const Term& x : closure_neighbors(t("sh(1)"), 4))
    CHECK(x.complexity() <= 4);
}

TEST_CASE("rewrite sites cover nested positions", "[closure]") {
  auto sites = rewrite_sites(t("sh(1,1)^1^sh(1,1)"));
  // dedup inside both copies
  CHECK(contains({sites[0].result, sites.size() > 1 ? sites[1].result : sites[0].result},
                 t("sh(1)^1^sh(1,1)")));
  bool found_whole = false;
  for (const auto& s : sites)
    if (s.result == t("sh(1,1)")) found_whole = true;
  CHECK(found_whole);  // collapse of the outer window

  CHECK(rewrite_sites(t("sh(1)")).empty());
  CHECK(rewrite_sites(t("1^1^1")).empty());
}

TEST_CASE("every recorded rewrite step is closure-connected", "[closure][prop]") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Term input = qshuffle::gen_random(seed, 12, 2);
    for (const auto& s : qshuffle::normalize(input).steps) {
      INFO("step on " << qshuffle::render(s.before));
      REQUIRE(closure_equivalent(s.before, s.after,
                                 s.before.complexity() + 2) ==
              ClosureVerdict::connected);
    }
  }
}

TEST_CASE("site results are equivalent to their origin", "[closure][prop]") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Term input = qshuffle::gen_random(seed, 14, 2);
    for (const auto& s : rewrite_sites(input)) {
      REQUIRE(s.result.complexity() < input.complexity());
      REQUIRE(equivalent(s.result, input));
    }
  }
}

TEST_CASE("frontier cap aborts oversized searches", "[closure]") {
  qshuffle::ClosureLimits tiny{10};
  CHECK_THROWS_AS(closure_equivalent(t("sh(1)"), t("sh(1,1^1)"), 12, tiny),
                  qshuffle::ResourceLimitError);
}
