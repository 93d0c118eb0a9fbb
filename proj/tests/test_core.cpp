#include <doctest.h>

#include "ncr/bits.hpp"
#include "ncr/dyadic.hpp"
#include "ncr/verify.hpp"

using namespace ncr;

TEST_CASE("dyadic canonical form") {
  Dyadic a(6, 3);  // 6/8 -> 3/4
  CHECK(a.numerator() == 3);
  CHECK(a.exponent() == 2);
  Dyadic z(0, 9);
  CHECK(z.is_zero());
  CHECK(z.exponent() == 0);
}

TEST_CASE("dyadic parse and print") {
  CHECK(Dyadic::parse("3/2^2").str() == "3/2^2");
  CHECK(Dyadic::parse("5") == Dyadic(5));
  CHECK(Dyadic::parse("-7/2^3") == Dyadic(-7, 3));
  CHECK_THROWS_AS(Dyadic::parse("x"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("3/2^"), ParseError);
}

TEST_CASE("dyadic arithmetic is exact") {
  Dyadic half(1, 1), quarter(1, 2);
  CHECK(half + quarter == Dyadic(3, 2));
  CHECK(half - quarter == quarter);
  CHECK(half * half == quarter);
  CHECK(Dyadic::pow2(-3) == Dyadic(1, 3));
  CHECK(Dyadic::pow2(3) == Dyadic(8));
}

TEST_CASE("cmp_pow2") {
  CHECK(Dyadic(1, 3).cmp_pow2(3) == 0);
  CHECK(Dyadic(1, 3).cmp_pow2(2) < 0);
  CHECK(Dyadic(1, 3).cmp_pow2(4) > 0);
  CHECK(Dyadic(0).cmp_pow2(10) < 0);
  CHECK(Dyadic(3).cmp_pow2(-1) > 0);
}

TEST_CASE("interval sanity") {
  DyadicInterval iv(Dyadic(1, 2), Dyadic(1, 1));
  CHECK(iv.width() == Dyadic(1, 2));
  CHECK(iv.contains(Dyadic(3, 3)));
  CHECK_THROWS_AS(DyadicInterval(Dyadic(1), Dyadic(0)), ValidationError);
}

TEST_CASE("bitstring basics") {
  BitString s = BitString::from_string("0110");
  CHECK(s.size() == 4);
  CHECK(s.bit(1) == 1);
  CHECK(s.take(2).str() == "01");
  CHECK(s.take(2).is_prefix_of(s));
  CHECK_FALSE(BitString::from_string("1").is_prefix_of(s));
  CHECK_THROWS_AS(BitString::from_string("012"), ParseError);
  CHECK(concat_blocks({{1, 3}, {0, 1}, {1, 2}}).str() == "111011");
}

TEST_CASE("bitstream determinism and factories") {
  BitStream alt = BitStream::alternating();
  CHECK(alt.prefix(6).str() == "010101");
  CHECK(alt.prefix(6) == alt.prefix(6));
  CHECK(BitStream::periodic(BitString::from_string("110")).prefix(7).str() ==
        "1101101");
  BitStream ev =
      BitStream::eventually(BitString::from_string("01"), 1);
  CHECK(ev.prefix(5).str() == "01111");
}

TEST_CASE("core invariant suite is clean") {
  SuiteResult s = verify_core();
  CHECK(s.checks > 100);
  CHECK(s.violations.empty());
}
