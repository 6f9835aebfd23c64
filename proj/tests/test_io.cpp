#include "doctest.h"
#include "t5/io.hpp"

using namespace t5;

TEST_CASE("key value parsing") {
  const auto kvs = parse_key_values("# comment\n a = 1 2 3 \n\nb=x # trailing\n", "cfg");
  REQUIRE(kvs.size() == 2);
  CHECK(kvs[0].key == "a");
  CHECK(kvs[0].value == "1 2 3");
  CHECK(kvs[0].line == 2);
  CHECK(kvs[1].value == "x");
  CHECK_THROWS_WITH_AS(parse_key_values("a = 1\na = 2\n", "cfg"), doctest::Contains("cfg:2"), ParseError);
  CHECK_THROWS_AS(parse_key_values("just words\n"), ParseError);
  CHECK_THROWS_WITH_AS(reject_unknown_keys(kvs, {"a"}, "cfg"), doctest::Contains("unknown key 'b'"), ParseError);
}

TEST_CASE("rational lists and matrices") {
  const auto v = parse_rational_list("1, -3/4  2.5");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == Rational(-3, 4));
  CHECK(v[2] == Rational(5, 2));
  const RatMatrix m = parse_matrix("1 2; -3/4 0");
  CHECK(m == RatMatrix{{1, 2}, {Rational(-3, 4), 0}});
  CHECK(format_matrix(m) == "1 2; -3/4 0");
  CHECK(parse_matrix(format_matrix(m)) == m);
  CHECK_THROWS_AS(parse_matrix("1 2; 3"), ParseError);
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
}

TEST_CASE("hessian files") {
  const HessianSet h = load_hessians(T5_DATA_DIR "/hessians.txt");
  for (const auto& m : h) CHECK(m.is_symmetric());
  const auto bad = parse_key_values("H1 = 1 2; 3 4\n", "x");
  CHECK_THROWS_AS(hessians_from(bad, "x"), ParseError);
}
