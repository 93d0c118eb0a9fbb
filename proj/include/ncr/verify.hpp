#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncr/rea.hpp"
#include "ncr/selfmod.hpp"

namespace ncr {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) violations.push_back(what);
  }
  nlohmann::json to_json() const;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  std::size_t total_checks() const;
  std::size_t total_violations() const;
  bool passed() const { return total_violations() == 0; }
  nlohmann::json to_json() const;
};

// The fixed measure corpus used by the invariant suites: Lebesgue,
// Bernoulli(1/4), Bernoulli(3/8), three seeded random split trees, and one
// perfect-set measure.
std::vector<MeasurePtr> verification_corpus(unsigned seed);

// Dyadic arithmetic laws and parse round trips.
SuiteResult verify_core();

// Measure oracle axioms: additivity, normalization, range, interval widths
// and nesting.
SuiteResult verify_measure_axioms(MeasurePtr mu, std::size_t depth);

// The five granularity/dissipation inequality clauses plus their
// cross-laws, on a fully built table.
SuiteResult verify_fact_gh(const GranularityTable& t);

// The approximation sandwiches h <= h_hat <= min(l, h+1),
// g <= g_hat <= g(.+1), and the iterate bound
// h^{(n)} <= h_hat^{(n)} <= h^{(n)} + n for n <= n_iter_max.
SuiteResult verify_approx_bounds(const GranularityTable& t,
                                 std::size_t n_iter_max = 4);

// Weight enclosure soundness and strict decrease past the safe threshold.
SuiteResult verify_weights();

// decode_B / decode_A / JSON round trips on seeded random corpora.
SuiteResult verify_round_trips(unsigned seed, std::size_t corpora = 100);

// Everything above over the corpus at the given depth.
VerifyReport verify_all(std::size_t depth, unsigned seed);

}  // namespace ncr
