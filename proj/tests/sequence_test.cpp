#include <catch2/catch_amalgamated.hpp>

#include "qshuffle/random.hpp"
#include "qshuffle/sequence.hpp"

using qshuffle::ParseError;
using qshuffle::TailKind;
using qshuffle::Term;
using qshuffle::TermSequence;
using qshuffle::is_normal_form_sequence;
using qshuffle::normalize_sequence;
using qshuffle::parse_sequence;
using qshuffle::render_sequence;
using qshuffle::sequence_complexity;

namespace {
TermSequence seq(const char* s) { return parse_sequence(s); }
std::string norm(const char* s) {
  return render_sequence(normalize_sequence(parse_sequence(s)));
}
}  // namespace

TEST_CASE("sequence grammar round trip", "[sequence]") {
  CHECK(render_sequence(seq("[]")) == "[]");
  CHECK(render_sequence(seq("[1; 1; sh(1)]")) == "[1; 1; sh(1)]");
  CHECK(render_sequence(seq("[ones]")) == "[ones]");
  CHECK(render_sequence(seq("[2; repeat sh(1)]")) == "[2; repeat sh(1)]");
  CHECK(render_sequence(seq(" [ 1 ;repeat  1 ] ")) == "[1; repeat 1]");
  CHECK(seq("[1;1]") == seq("[ 1 ; 1 ]"));

  CHECK_THROWS_AS(seq("["), ParseError);
  CHECK_THROWS_AS(seq("[1;]"), ParseError);
  CHECK_THROWS_AS(seq("[ones; 1]"), ParseError);
  CHECK_THROWS_AS(seq("[repeat]"), ParseError);
  CHECK_THROWS_AS(seq("[1] junk"), ParseError);
  CHECK_THROWS_AS(seq("1; 2"), ParseError);
}

TEST_CASE("sequence complexity is finite exactly for tail-free sequences", "[sequence]") {
  CHECK(sequence_complexity(seq("[1; 1; sh(1)]")) == 5);
  CHECK(sequence_complexity(seq("[]")) == 0);
  CHECK(sequence_complexity(seq("[ones]")) == std::nullopt);
  CHECK(sequence_complexity(seq("[1; repeat sh(1)]")) == std::nullopt);
}

TEST_CASE("sequence normal form predicate", "[sequence]") {
  CHECK(is_normal_form_sequence(seq("[1^1; sh(1)]")));
  CHECK(is_normal_form_sequence(seq("[]")));
  CHECK(is_normal_form_sequence(seq("[ones]")));
  CHECK(is_normal_form_sequence(seq("[2]")));
  CHECK(is_normal_form_sequence(seq("[sh(1); 2]")));
  CHECK(is_normal_form_sequence(seq("[repeat 1^sh(1)]")));

  // two finite elements in a row
  CHECK_FALSE(is_normal_form_sequence(seq("[1; 1]")));
  // a finite element with only finite successors must be a trailing 1-run
  CHECK_FALSE(is_normal_form_sequence(seq("[2; ones]")));
  CHECK(is_normal_form_sequence(seq("[1; ones]")));
  // collapse windows across elements
  CHECK_FALSE(is_normal_form_sequence(seq("[sh(1); sh(1)]")));
  CHECK_FALSE(is_normal_form_sequence(seq("[sh(1); 1; sh(1)]")));
  CHECK(is_normal_form_sequence(seq("[sh(1); 2; sh(1)]")));
  // windows formed with the repeat tail
  CHECK_FALSE(is_normal_form_sequence(seq("[sh(1); repeat sh(1)]")));
  CHECK_FALSE(is_normal_form_sequence(seq("[repeat sh(1)]")));
  CHECK_FALSE(is_normal_form_sequence(seq("[repeat 2]")));
  // non-normal element
  CHECK_FALSE(is_normal_form_sequence(seq("[sh(1,1)]")));
}

TEST_CASE("sequence normalization golden cases", "[sequence]") {
  CHECK(norm("[1; 1; sh(1)]") == "[2; sh(1)]");
  CHECK(norm("[sh(1); 1; sh(1)]") == "[sh(1)]");
  CHECK(norm("[repeat 1]") == "[ones]");
  CHECK(norm("[sh(1); repeat sh(1)]") == "[sh(1)]");
  CHECK(norm("[2; repeat 1]") == "[ones]");
  CHECK(norm("[sh(1); 2; 3]") == "[sh(1); 5]");
  CHECK(norm("[]") == "[]");
  CHECK(norm("[1; 1]") == "[2]");
  CHECK(norm("[sh(1,1); sh(1)]") == "[sh(1)]");
  CHECK(norm("[sh(2); repeat sh(1)]") == "[sh(2); sh(1)]");
  CHECK(norm("[sh(1); 1; repeat sh(1)]") == "[sh(1)]");
  CHECK(norm("[repeat 1^sh(1)]") == "[repeat 1^sh(1)]");
  CHECK(norm("[sh(1); 2; repeat 1]") == "[sh(1); ones]");
  CHECK(norm("[1; ones]") == "[ones]");
  CHECK(norm("[3]") == "[3]");
  CHECK(norm("[1; sh(1); 1; sh(1); 1]") == "[1; sh(1); 1]");
}

TEST_CASE("normalized sequences are in normal form", "[sequence][prop]") {
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    std::mt19937_64 rng(seed);
    TermSequence s;
    std::size_t len = rng() % 6;
    for (std::size_t i = 0; i < len; ++i)
      s.prefix.push_back(qshuffle::gen_random(rng(), 8, 2));
    switch (rng() % 3) {
      case 0: s.tail = TailKind::none; break;
      case 1: s.tail = TailKind::ones; break;
      default:
        s.tail = TailKind::repeat;
        s.repeated = qshuffle::gen_random(rng(), 8, 2);
    }
    TermSequence n = normalize_sequence(s);
    INFO("input: " << render_sequence(s) << " output: " << render_sequence(n));
    REQUIRE(is_normal_form_sequence(n));
    REQUIRE(normalize_sequence(n) == n);
  }
}

TEST_CASE("finite sequences agree with term normalization", "[sequence][prop]") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    std::mt19937_64 rng(seed);
    TermSequence s;
    std::size_t len = 1 + rng() % 5;
    for (std::size_t i = 0; i < len; ++i)
      s.prefix.push_back(qshuffle::gen_random(rng(), 8, 2));
    TermSequence n = normalize_sequence(s);
    REQUIRE(n.tail == TailKind::none);
    REQUIRE_FALSE(n.prefix.empty());
    Term via_sequence = qshuffle::normal_form(Term::concat(n.prefix));
    Term direct = qshuffle::normal_form(Term::concat(s.prefix));
    INFO("input: " << render_sequence(s));
    REQUIRE(via_sequence == direct);
  }
}
