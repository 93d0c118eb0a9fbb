#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncr/measure.hpp"

namespace ncr {

// Default exhaustive depth cap: 2^14 cylinders per level.
inline constexpr std::size_t kDefaultDepthCap = 14;

// Maximum cylinder mass at the given depth, by exhaustive enumeration with
// subtree pruning (a child's mass never exceeds its parent's). Exact
// oracles only.
Dyadic max_depth_mass(const MeasureOracle& mu, std::size_t depth);

// Dissipation h(l) = max{n : every depth-l cylinder has mass < 2^{-n+1}}.
std::size_t exact_h(const MeasureOracle& mu, std::size_t l,
                    std::size_t depth_cap = kDefaultDepthCap);

// Granularity g(n) = min{l : every depth-l cylinder has mass < 2^{-n}}.
std::size_t exact_g(const MeasureOracle& mu, std::size_t n,
                    std::size_t depth_cap = kDefaultDepthCap);

// Computable approximation h_hat(l): for each depth-l cylinder, the largest
// witness n <= l with 2^{-n} < mass < 2^{-n+2}, certified through interval
// refinement; combined by min over cylinders (see min_combine note below)
// and made non-decreasing by a running max. h_hat(0) = 0.
//
// The per-cylinder witness search refines the oracle's interval until some
// n is certified; `max_precision` bounds that refinement.
std::size_t approx_h(const MeasureOracle& mu, std::size_t l,
                     std::size_t depth_cap = kDefaultDepthCap,
                     unsigned max_precision = 96);

// g_hat(n) = min{l : h_hat(l) >= n+2}.
std::size_t approx_g(const MeasureOracle& mu, std::size_t n,
                     std::size_t depth_cap = kDefaultDepthCap,
                     unsigned max_precision = 96);

// n-fold composition of a tabulated function; iterate(f, 0, l) = l. Throws
// DomainEscape if an intermediate value leaves the table.
std::size_t iterate(const std::vector<std::size_t>& table, std::size_t n,
                    std::size_t l);

enum class Provenance { Exact, IntervalDerived, ClosedForm };

// Memoized h, g, h_hat, g_hat for one measure up to a depth cap. Entries
// beyond the computable range are simply absent (shorter arrays), never
// guessed.
struct GranularityTable {
  MeasurePtr measure;
  std::size_t depth_cap = 0;

  std::vector<std::size_t> h;      // indexed by l, size depth_cap+1 if exact
  std::vector<std::size_t> h_hat;  // indexed by l, size depth_cap+1
  std::vector<std::size_t> g;      // indexed by n, while g(n) <= depth_cap
  std::vector<std::size_t> g_hat;  // indexed by n, while g_hat(n) <= depth_cap

  Provenance h_provenance = Provenance::Exact;
  Provenance h_hat_provenance = Provenance::IntervalDerived;

  bool has_exact() const { return !h.empty(); }

  std::size_t h_at(std::size_t l) const;
  std::size_t h_hat_at(std::size_t l) const;
  std::size_t g_at(std::size_t n) const;
  std::size_t g_hat_at(std::size_t n) const;

  std::size_t h_iter(std::size_t n, std::size_t l) const {
    return iterate(h, n, l);
  }
  std::size_t h_hat_iter(std::size_t n, std::size_t l) const {
    return iterate(h_hat, n, l);
  }
  std::size_t g_hat_iter(std::size_t n, std::size_t l) const;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

// Populates the table by exhaustive enumeration (exact rows only for exact
// oracles). n_max caps the g rows; rows whose value would exceed the depth
// cap are dropped.
GranularityTable build_table(MeasurePtr mu, std::size_t depth_cap,
                             std::size_t n_max);

// Table from the oracle's closed-form maximum depth mass, valid to any
// depth. Requires max_mass_closed_form.
GranularityTable closed_form_table(MeasurePtr mu, std::size_t depth_cap,
                                   std::size_t n_max);

// The Lebesgue table with the tight granularity approximation g_hat = g
// (g_hat(n) = n+1, h_hat(l) = l); any g_hat between g and g(.+1) is a valid
// approximation, and the tight one matches the closed-form sums used by the
// self-modulus test family.
GranularityTable lebesgue_tight_table(std::size_t depth_cap,
                                      std::size_t n_max);

}  // namespace ncr
