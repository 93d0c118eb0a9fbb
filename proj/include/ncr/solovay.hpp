#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncr/granularity.hpp"

namespace ncr {

// Enclosure of one weight value or a running weight sum. `exact` means
// lo == hi and the value is an exact dyadic.
struct WeightBound {
  Dyadic lo;
  Dyadic hi;
  bool exact = false;

  static WeightBound exactly(const Dyadic& v) { return {v, v, true}; }

  WeightBound operator+(const WeightBound& o) const {
    return {lo + o.lo, hi + o.hi, exact && o.exact};
  }
  WeightBound& operator+=(const WeightBound& o) { return *this = *this + o; }
  WeightBound scaled(const Dyadic& c) const {  // c >= 0
    return {lo * c, hi * c, exact};
  }
};

// Weight x^{log2 n} * 2^{-x} of one test element, where x stands for the
// n-fold dissipation iterate of the element's length. Exact when n is a
// power of two; otherwise a directed-rounding enclosure of relative width
// <= 2^{-30}. Convention at x = 0: weight 1 for n = 1, weight 0 for n >= 2.
WeightBound level_weight(std::size_t n, std::size_t x);

// 2^x > n^2, i.e. x > 2 log2 n: the region where x^{log2 n} 2^{-x} is
// provably strictly decreasing. Proof steps that invoke monotonicity are
// checked past this threshold only.
bool above_safe_threshold(std::size_t n, std::size_t x);

// Level-n Solovay test at desk scale: the "< infinity" of the definition
// becomes an explicit declared budget on the running weight sum.
struct LevelTest {
  std::size_t level = 1;
  MeasurePtr measure;
  std::vector<BitString> elements;
  WeightBound weight_sum = WeightBound::exactly(Dyadic(0));
  Dyadic budget = Dyadic(2);

  nlohmann::json to_json() const;
  static LevelTest from_json(const nlohmann::json& j);
};

LevelTest make_level_test(std::size_t level, MeasurePtr measure,
                          const Dyadic& budget);

// Appends sigma and accounts its weight; throws BudgetExceeded if the
// running sum's upper end would pass the budget.
void push_element(LevelTest& t, const BitString& sigma,
                  const GranularityTable& table);

// Number of distinct enumerated elements that are prefixes of X with
// length <= horizon.
std::size_t covers_count(const LevelTest& t, const BitStream& x,
                         std::size_t horizon);

// Builds a level-n test of m prefixes of A, each prefix sigma_i chosen so
// that h_hat^{(n)}(|sigma_i|) > n + log2 n and
// (h_hat^{(n)}(|sigma_i|) - n)^{log2 n} 2^{-h_hat^{(n)}(|sigma_i|)+n} < 2^{-i}.
// Throws DepthCapExceeded naming the deepest index reached if the table
// runs out first.
LevelTest build_cover(const BitStream& a, std::size_t n, MeasurePtr mu,
                      const GranularityTable& table, std::size_t m);

struct NestingReport {
  std::size_t from_level = 0;
  std::size_t to_level = 0;
  std::size_t head_count = 0;       // elements below the safe threshold
  WeightBound head_weight;          // their level-(n-1) weight, a finite constant
  WeightBound tail_weight_lower;    // tail sum at level n-1
  WeightBound tail_weight_upper;    // tail sum at level n
  std::size_t tail_violations = 0;  // per-element inequality failures
  std::size_t inconclusive = 0;     // enclosures too wide to decide strictly
  bool passed = false;

  nlohmann::json to_json() const;
};

// Verifies that a level-n test is a level-(n-1) test: the per-element
// weight inequality on the tail (elements past the safe threshold), with
// the finitely many head elements accounted as a constant.
NestingReport check_nesting(const LevelTest& t, const GranularityTable& table);

// Same elements re-accounted at a different level (used to walk the
// nesting chain downwards).
LevelTest reaccount(const LevelTest& t, std::size_t new_level,
                    const GranularityTable& table, const Dyadic& budget);

struct WeightVsMassReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  Dyadic max_ratio;  // max over elements of mass(sigma) / 2^{-h(|sigma|)}
  bool passed = false;

  nlohmann::json to_json() const;
};

// Level-1 tests are standard Solovay tests: checks per element that
// mass(sigma) < 2 * 2^{-h(|sigma|)}. Exact measures only.
WeightVsMassReport solovay_weight_vs_mass(const LevelTest& t,
                                          const GranularityTable& table);

}  // namespace ncr
