#pragma once

#include <optional>
#include <set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncr/solovay.hpp"

namespace ncr {

// One enumeration rule: target j enters the oracle set at step s provided
// the oracle extends the required prefix.
struct OpRule {
  std::size_t target = 0;
  BitString prefix;
  std::size_t step = 1;
};

// Step-bounded monotone oracle enumeration given by a finite rule table.
// The implicit rule (0, "", 1) is always present: the enumeration puts 0
// in at step 1 with no oracle use. Load-time validation enforces the use
// discipline |prefix| <= step and the step bound target <= step.
class EnumerationOperator {
 public:
  static EnumerationOperator from_rules(std::vector<OpRule> rules);
  static EnumerationOperator from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const std::vector<OpRule>& rules() const { return rules_; }

  // Enumerated targets after s steps with an infinite oracle.
  std::set<std::size_t> enumerate(const BitStream& oracle,
                                  std::size_t s) const;
  // Enumerated targets after s steps with a finite oracle string: a rule
  // fires only if its required prefix is a prefix of sigma.
  std::set<std::size_t> enumerate(const BitString& sigma, std::size_t s) const;

  // Least s <= cap at which j is enumerated; nullopt models "not within
  // this cap" (the answer for a divergent computation, or one that might
  // still change with a larger cap).
  std::optional<std::size_t> settling(const BitStream& oracle, std::size_t j,
                                      std::size_t cap) const;

 private:
  std::vector<OpRule> rules_;
};

// Construction of C from B = W^A_e: each bit b_i of B becomes the block
// b_i^{f(i)} ^ 0, where f(i) waits for every element of B up to the next
// one past i to settle.
struct ReaRun {
  std::size_t i_max = 0;  // blocks 0..i_max are complete
  std::size_t cap = 0;
  std::vector<int> b;             // bits of B, indices 0..i_max
  std::vector<std::size_t> m;     // m_i = least element of B greater than i
  std::vector<std::size_t> f;     // f(i); 1 when i not in B
  BitString c;                    // C_{i_max}
  bool truncated = false;         // stopped early because the cap cut off m_i/f(i)
  std::optional<int> peek_bit;    // first bit of block i_max+1, when settled

  // C_{i_max} followed by its separator and the next block's first bit,
  // when that bit is already settled.
  BitString c_with_peek() const;

  nlohmann::json to_json() const;
};

// Runs the construction for blocks 0..i_max. With allow_truncation, a cap
// hit while searching m_i or f(i) ends the run early (run.truncated) rather
// than throwing CapExceeded.
ReaRun construction_one(const EnumerationOperator& op, const BitStream& a,
                        std::size_t i_max, std::size_t cap,
                        bool allow_truncation = false);

// Inverse of the block coding: one B-bit per block, "1^k 0" => 1 and
// "0 0" => 0. Accepts a final block without its separator.
BitString decode_B(const BitString& c_prefix);

// t(sigma, n): {sigma} when |sigma| < n, else {sigma|n} together with
// sigma|i ^ 1^{|sigma|-i} for i = 0..n. Duplicates removed.
std::vector<BitString> t_transform(const BitString& sigma, std::size_t n);

// Approximation of C computed from a finite oracle segment: the block
// coding of W^sigma_{e,|sigma|}, truncated to |sigma|.
BitString approx_tau(const BitString& sigma, const EnumerationOperator& op);

struct LiftElementReport {
  BitString sigma;           // original level-2n test element
  BitString tau;             // its block-coded approximation
  bool sigma_prefix_of_a = false;
  bool produced_c_prefix = false;      // some t(tau, .) element is a prefix of C
  bool past_threshold = false;         // contribution bound checked
  bool bound_ok = true;                // <= 3x level-2n weight
  WeightBound contribution;            // level-n weight of t(tau, .)
};

struct LiftResult {
  LevelTest lifted;  // level n
  std::vector<LiftElementReport> per_element;
  std::size_t cover_count = 0;  // elements of the lifted test that prefix C
  std::size_t bound_violations = 0;

  nlohmann::json to_json() const;
};

// Lifts a level-2n test to a level-n test through the auxiliary transform,
// verifying the per-element 3x contribution bound past the safe threshold
// and reporting which produced elements are prefixes of the target C.
LiftResult lift_test(const LevelTest& t2n, const EnumerationOperator& op,
                     const BitStream& a, const BitString& c_prefix,
                     const GranularityTable& table);

}  // namespace ncr
