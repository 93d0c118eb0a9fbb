#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ncr/solovay.hpp"
#include "ncr/verify.hpp"

using namespace ncr;

namespace {
bool exactly(const WeightBound& w, const Dyadic& v) {
  return w.exact && w.lo == v && w.hi == v;
}
}  // namespace

TEST_CASE("weights at power-of-two levels are exact") {
  CHECK(exactly(level_weight(1, 7), Dyadic(1, 7)));
  CHECK(exactly(level_weight(4, 10), Dyadic(100, 10)));
  CHECK(exactly(level_weight(2, 6), Dyadic(6, 6)));
  CHECK(exactly(level_weight(1, 0), Dyadic(1)));
  CHECK(exactly(level_weight(2, 0), Dyadic(0)));
  CHECK(exactly(level_weight(8, 4), Dyadic(64, 4)));
}

TEST_CASE("weights at other levels are tight enclosures") {
  for (std::size_t n : {std::size_t{3}, std::size_t{5}, std::size_t{6}}) {
    for (std::size_t x = 1; x <= 40; ++x) {
      WeightBound w = level_weight(n, x);
      CHECK(w.lo <= w.hi);
      CHECK(w.lo.sign() > 0);
      CHECK((w.hi - w.lo) * Dyadic::pow2(30) <= w.hi);
    }
  }
  // spot value: 3^{log2 3} / 8 ~ 5.7045 / 8
  WeightBound w = level_weight(3, 3);
  CHECK(w.lo.to_double() == doctest::Approx(0.71306).epsilon(1e-3));
}

TEST_CASE("safe threshold") {
  CHECK(above_safe_threshold(1, 1));
  CHECK_FALSE(above_safe_threshold(2, 2));
  CHECK(above_safe_threshold(2, 3));
  CHECK_FALSE(above_safe_threshold(4, 4));
  CHECK(above_safe_threshold(4, 5));
  CHECK(verify_weights().violations.empty());
}

TEST_CASE("budget accounting") {
  GranularityTable t = lebesgue_tight_table(20, 20);
  LevelTest test = make_level_test(1, lebesgue(), Dyadic(3, 2));  // 3/4
  push_element(test, BitString::from_string("01"), t);
  push_element(test, BitString::from_string("110"), t);
  CHECK(test.weight_sum.hi == Dyadic(3, 3));
  CHECK_THROWS_AS(push_element(test, BitString::from_string("0"), t),
                  BudgetExceeded);
  CHECK(test.elements.size() == 2);  // rejected element not appended
}

TEST_CASE("level test json round trip") {
  GranularityTable t = lebesgue_tight_table(20, 20);
  LevelTest test = make_level_test(2, lebesgue(), Dyadic(2));
  push_element(test, BitString::from_string("0101"), t);
  push_element(test, BitString::from_string("11"), t);
  LevelTest back = LevelTest::from_json(test.to_json());
  CHECK(back.to_json() == test.to_json());
  CHECK(back.level == 2);
  CHECK(back.elements.size() == 2);
}

TEST_CASE("covers_count") {
  GranularityTable t = lebesgue_tight_table(20, 20);
  LevelTest test = make_level_test(1, lebesgue(), Dyadic(4));
  push_element(test, BitString::from_string("01"), t);
  push_element(test, BitString::from_string("0101"), t);
  push_element(test, BitString::from_string("01"), t);  // duplicate
  push_element(test, BitString::from_string("11"), t);
  CHECK(covers_count(test, BitStream::alternating(), 16) == 2);
  CHECK(covers_count(test, BitStream::alternating(), 3) == 1);
}

TEST_CASE("build_cover picks certified prefixes and nests") {
  GranularityTable t = lebesgue_tight_table(100, 100);
  LevelTest cover = build_cover(BitStream::alternating(), 4, lebesgue(), t, 8);
  CHECK(cover.elements.size() == 8);
  CHECK(covers_count(cover, BitStream::alternating(), 100) == 8);
  NestingReport r43 = check_nesting(cover, t);
  CHECK(r43.tail_violations == 0);
  CHECK(r43.passed);
  LevelTest as3 = reaccount(cover, 3, t, r43.tail_weight_lower.hi +
                                             r43.head_weight.hi + Dyadic(1));
  NestingReport r32 = check_nesting(as3, t);
  CHECK(r32.tail_violations == 0);
}

TEST_CASE("build_cover reports the deepest index on exhaustion") {
  GranularityTable t = lebesgue_tight_table(12, 12);
  CHECK_THROWS_AS(
      build_cover(BitStream::alternating(), 4, lebesgue(), t, 10),
      DepthCapExceeded);
}

TEST_CASE("level-1 weight against mass: the solovay property") {
  GranularityTable t = lebesgue_tight_table(20, 20);
  LevelTest test = make_level_test(1, lebesgue(), Dyadic(4));
  push_element(test, BitString::from_string("000"), t);
  push_element(test, BitString::from_string("10"), t);
  WeightVsMassReport r = solovay_weight_vs_mass(test, t);
  CHECK(r.passed);
  CHECK(r.max_ratio == Dyadic(1));

  GranularityTable tb = build_table(bernoulli(Dyadic(1, 2)), 10, 10);
  LevelTest tbq = make_level_test(1, tb.measure, Dyadic(4));
  push_element(tbq, BitString::from_string("000"), tb);
  WeightVsMassReport rb = solovay_weight_vs_mass(tbq, tb);
  CHECK(rb.passed);
  // mass(000) = 27/64, h(3) = 2: ratio 27/16 < 2
  CHECK(rb.max_ratio == Dyadic(27, 4));
}
