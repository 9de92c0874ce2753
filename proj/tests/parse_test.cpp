#include <catch2/catch_amalgamated.hpp>

#include "qshuffle/parse.hpp"
#include "qshuffle/random.hpp"

using qshuffle::ParseError;
using qshuffle::Term;
using qshuffle::parse;
using qshuffle::render;

TEST_CASE("grammar basics", "[parse]") {
  CHECK(parse("1") == Term::singleton());
  CHECK(parse("3") == Term::integer(3));
  CHECK(parse("1^1^1") == Term::integer(3));
  CHECK(parse("(1^1)^1") == Term::integer(3));
  CHECK(parse("sh(1)") == Term::shuffle({Term::singleton()}));
  CHECK(parse("sh(1, 1^1)") ==
        Term::shuffle({Term::integer(2), Term::singleton()}));
  CHECK(parse(" sh( 1 ,\t1 ) ") == parse("sh(1,1)"));
  CHECK(parse("sh((1))") == parse("sh(1)"));
  CHECK(parse("2^sh(1)^3") == parse("1^1^sh(1)^1^1^1"));
}

TEST_CASE("render uses singleton-run shorthand and canonical arg order", "[parse]") {
  CHECK(render(parse("1")) == "1");
  CHECK(render(parse("1^1")) == "2");
  CHECK(render(parse("1^1^sh(1)^1")) == "2^sh(1)^1");
  CHECK(render(parse("sh(1^1, 1)")) == "sh(1, 2)");
  CHECK(render(parse("sh(1)^sh(1)")) == "sh(1)^sh(1)");
  CHECK(render(parse("sh(sh(1,1), 1)")) == "sh(1, sh(1, 1))");
}

TEST_CASE("parse rejects malformed input with an offset", "[parse]") {
  auto offset_of = [](const char* text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    FAIL("expected a parse error");
    return std::size_t{0};
  };

  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("sh()"), ParseError);
  CHECK_THROWS_AS(parse("0"), ParseError);
  CHECK_THROWS_AS(parse("sh(1"), ParseError);
  CHECK_THROWS_AS(parse("1)"), ParseError);
  CHECK_THROWS_AS(parse("1^"), ParseError);
  CHECK_THROWS_AS(parse("()"), ParseError);
  CHECK_THROWS_AS(parse("sh"), ParseError);
  CHECK_THROWS_AS(parse("shuffle(1)"), ParseError);
  CHECK_THROWS_AS(parse("1000001"), ParseError);

  CHECK(offset_of("1)") == 1);
  CHECK(offset_of("sh(1") == 4);
  CHECK(offset_of("0") == 0);
}

TEST_CASE("parse of render is the identity on random terms", "[parse]") {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Term t = qshuffle::gen_random(seed, 25, 3);
    Term back = parse(render(t));
    REQUIRE(back == t);
  }
}
