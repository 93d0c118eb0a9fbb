#include <doctest.h>

#include <nlohmann/json.hpp>

#include "ncr/rea.hpp"
#include "ncr/verify.hpp"

using namespace ncr;

namespace {

EnumerationOperator worked_operator() {
  std::vector<OpRule> rules;
  rules.push_back({1, BitString{}, 37});
  rules.push_back({3, BitString{}, 134});
  rules.push_back({4, BitString{}, 28});
  return EnumerationOperator::from_rules(std::move(rules));
}

}  // namespace

TEST_CASE("operator load validation") {
  CHECK_THROWS_AS(
      EnumerationOperator::from_rules({{5, BitString{}, 3}}),
      ValidationError);  // target past its settling step
  CHECK_THROWS_AS(
      EnumerationOperator::from_rules({{1, BitString::from_string("0101"), 2}}),
      ValidationError);  // oracle use past the step bound
  CHECK_THROWS_AS(EnumerationOperator::from_rules({{1, BitString{}, 0}}),
                  ValidationError);
}

TEST_CASE("step-bounded enumeration and settling") {
  EnumerationOperator op = worked_operator();
  BitStream a = BitStream::ones();
  CHECK(op.enumerate(a, 27) == std::set<std::size_t>{0});
  CHECK(op.enumerate(a, 28) == std::set<std::size_t>{0, 4});
  CHECK(op.enumerate(a, 37) == std::set<std::size_t>{0, 1, 4});
  CHECK(op.enumerate(a, 200) == std::set<std::size_t>{0, 1, 3, 4});
  CHECK(op.settling(a, 0, 200) == 1);
  CHECK(op.settling(a, 1, 200) == 37);
  CHECK(op.settling(a, 3, 200) == 134);
  CHECK(op.settling(a, 4, 200) == 28);
  CHECK_FALSE(op.settling(a, 2, 200).has_value());
  CHECK_FALSE(op.settling(a, 3, 100).has_value());  // cap below settling
}

TEST_CASE("monotone in steps") {
  EnumerationOperator op = worked_operator();
  BitStream a = BitStream::zeros();
  for (std::size_t s = 1; s < 150; ++s) {
    auto now = op.enumerate(a, s);
    auto later = op.enumerate(a, s + 1);
    for (std::size_t j : now) CHECK(later.count(j) == 1);
  }
}

TEST_CASE("worked construction table") {
  ReaRun run = construction_one(worked_operator(), BitStream::ones(), 4, 200,
                                /*allow_truncation=*/true);
  CHECK(run.truncated);
  CHECK(run.i_max == 3);
  CHECK(run.b == std::vector<int>{1, 1, 0, 1});
  CHECK(run.m == std::vector<std::size_t>{1, 3, 3, 4});
  CHECK(run.f == std::vector<std::size_t>{37, 134, 1, 134});
  BitString expect = concat_blocks(
      {{1, 37}, {0, 1}, {1, 134}, {0, 1}, {0, 2}, {1, 134}});
  CHECK(run.c == expect);
  CHECK(run.peek_bit == 1);
  CHECK(run.c_with_peek() ==
        concat_blocks({{1, 37}, {0, 1}, {1, 134}, {0, 1}, {0, 2},
                       {1, 134}, {0, 1}, {1, 1}}));
}

TEST_CASE("construction throws without truncation") {
  CHECK_THROWS_AS(
      construction_one(worked_operator(), BitStream::ones(), 4, 200, false),
      CapExceeded);
}

TEST_CASE("decode_B") {
  CHECK(decode_B(BitString::from_string("1110")) ==
        BitString::from_string("1"));
  CHECK(decode_B(BitString::from_string("111000")) ==
        BitString::from_string("10"));
  CHECK(decode_B(BitString::from_string("11100011")) ==
        BitString::from_string("101"));  // final block unseparated
  CHECK_THROWS_AS(decode_B(BitString::from_string("0100")), ParseError);
}

TEST_CASE("t transform") {
  auto t1 = t_transform(BitString::from_string("0110"), 2);
  REQUIRE(t1.size() == 3);
  CHECK(t1[0] == BitString::from_string("01"));
  CHECK(t1[1] == BitString::from_string("1111"));
  CHECK(t1[2] == BitString::from_string("0111"));

  auto t2 = t_transform(BitString::from_string("0000"), 2);
  REQUIRE(t2.size() == 4);
  CHECK(t2[0] == BitString::from_string("00"));
  CHECK(t2[1] == BitString::from_string("1111"));
  CHECK(t2[2] == BitString::from_string("0111"));
  CHECK(t2[3] == BitString::from_string("0011"));

  auto small = t_transform(BitString::from_string("01"), 5);
  REQUIRE(small.size() == 1);
  CHECK(small[0] == BitString::from_string("01"));
}

TEST_CASE("approx_tau reproduces the coding on a staircase operator") {
  // j settles at step j for every j <= 12: B = {0..12} as far as the
  // horizon sees, so tau agrees with C on the approximation's length.
  std::vector<OpRule> rules;
  for (std::size_t j = 1; j <= 12; ++j) rules.push_back({j, BitString{}, j});
  EnumerationOperator op = EnumerationOperator::from_rules(std::move(rules));
  ReaRun run = construction_one(op, BitStream::zeros(), 8, 50);
  for (std::size_t s = 4; s <= 20; ++s) {
    BitString sigma = BitStream::zeros().prefix(s);
    BitString tau = approx_tau(sigma, op);
    CHECK(tau.size() <= s);
    CHECK(tau == run.c.take(tau.size()));
  }
}

TEST_CASE("operator json round trip") {
  EnumerationOperator op = worked_operator();
  auto j = op.to_json();
  CHECK(EnumerationOperator::from_json(j).to_json() == j);
}

TEST_CASE("lift of a level-2 cover is weight-certified and covers C") {
  std::vector<OpRule> rules;
  for (std::size_t j = 1; j <= 40; ++j) rules.push_back({j, BitString{}, j});
  EnumerationOperator op = EnumerationOperator::from_rules(std::move(rules));
  GranularityTable t = lebesgue_tight_table(200, 200);
  BitStream a = BitStream::alternating();
  LevelTest cover = build_cover(a, 2, lebesgue(), t, 8);
  ReaRun run = construction_one(op, a, 10, 200);
  LiftResult res = lift_test(cover, op, a, run.c_with_peek(), t);
  CHECK(res.lifted.level == 1);
  CHECK(res.bound_violations == 0);
  CHECK(res.cover_count >= 8);
  for (const auto& rep : res.per_element) {
    CHECK(rep.sigma_prefix_of_a);
    CHECK(rep.produced_c_prefix);
  }
}
