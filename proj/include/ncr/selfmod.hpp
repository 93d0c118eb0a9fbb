#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncr/solovay.hpp"

namespace ncr {

// The padded coding B of a real A through its self-modulus f: block n is
// 1^{f(l_{n-1})} ^ 0 ^ a_n, so l_{n+1} = l_n + f(l_n) + 2. Block lengths
// are big integers because the "exp" modulus makes them astronomically
// large after a few blocks; only a bounded prefix of B is materialized.
struct SelfModRun {
  ModulusFunction f = ModulusFunction::poly(1);
  std::vector<mpz_class> lengths;      // l_0 .. l_{n_blocks}
  std::vector<mpz_class> ones_runs;    // run of block n: f(l_{n-1}), f(0) for n=0
  std::vector<int> a_bits;             // a_0 .. a_{n_blocks}
  BitString b_prefix;                  // materialized prefix of B
  std::size_t n_blocks = 0;

  // Bit of B at any index below l_{n_blocks}, from the block structure.
  int bit_at(const mpz_class& i) const;
  // Whether B_n ^ 1^count is a prefix of B (count against the next block's
  // 1-run); valid for n < n_blocks, or n == n_blocks with f evaluated
  // directly.
  bool ones_extension_is_prefix(std::size_t n, const mpz_class& count) const;

  nlohmann::json to_json() const;
};

SelfModRun construction_two(const ModulusFunction& f, const BitStream& a,
                            std::size_t n_blocks,
                            std::size_t materialize_cap = std::size_t{1}
                                                          << 22);

// Recovers a_0..a_n from a prefix of B ending exactly at some l_n.
BitString decode_A(const BitString& b_prefix, const ModulusFunction& f);

// The level-k test family {sigma ^ 1^{g_hat^{(k)}(2|sigma|)}} over all
// sigma with |sigma| <= sigma_len_max, with exact weight accounting.
LevelTest tk_enumerate(MeasurePtr mu, const GranularityTable& table,
                       std::size_t k, std::size_t sigma_len_max);

// Membership of one candidate string in the T_k family.
bool tk_member(const BitString& candidate, const GranularityTable& table,
               std::size_t k);

// Sound upper bound on the T_k weight sum: the exact head gamma_k
// (i <= log2 k) from the table, the majorant sum k * i^{log2 k} 2^{-i} for
// log2 k < i <= i_max, and a geometric tail certified by a ratio test.
WeightBound tk_weight_bound(std::size_t k, std::size_t i_max,
                            const GranularityTable& table);

// The iteration G(0) = g_hat^{(k)}(2*seed_length+1),
// G(i+1) = G(i) + g_hat^{(k)}(2 G(i) + 1) + 2, used to replay the
// domination argument at finite scale. Throws DomainEscape with the
// deepest reached index when the table runs out.
std::vector<std::size_t> domination_G(const GranularityTable& table,
                                      std::size_t k, std::size_t seed_length,
                                      std::size_t steps);

struct FailureWitness {
  std::size_t n = 0;
  mpz_class length;                    // l_n
  std::size_t g_hat_iter_value = 0;    // g_hat^{(k)}(2 l_n + 1)
  mpz_class modulus_value;             // f_A(l_n)
  bool prefix_verified = false;        // B_n ^ 1^{g_hat^{(k)}(2 l_n)} is a prefix of B
  bool tk_member_verified = false;     // ... and an element of T_k
};

struct FailureReport {
  std::size_t k = 1;
  std::vector<FailureWitness> witnesses;
  std::size_t checked_blocks = 0;      // blocks whose condition was decidable
  // cross-check with exact g where the measure admits it
  std::optional<std::size_t> exact_g_qualifying;

  nlohmann::json to_json() const;
};

// All n in the run with g_hat^{(k)}(2 l_n + 1) < f_A(l_n), each witness
// verified to be simultaneously a prefix of B and an element of T_k.
FailureReport failure_indices(const SelfModRun& run,
                              const GranularityTable& table, std::size_t k);

enum class WitnessStatus { Found, CertifiedAbsent, Indeterminate };

struct WitnessResult {
  WitnessStatus status = WitnessStatus::CertifiedAbsent;
  BitString tau;
};

// Budgeted stand-in for one c.e. set of strings: asked for an extension of
// the stem, answers with the length-lexicographically smallest member
// extending it, a certified absence, or an explicit "indeterminate within
// budget".
struct DenseSetEnumerator {
  std::string name;
  std::function<WitnessResult(const BitString& stem)> query;

  static DenseSetEnumerator all_strings();
  static DenseSetEnumerator empty_set();
  static DenseSetEnumerator from_list(std::string name,
                                      std::vector<BitString> members);
};

struct GenericRun {
  std::vector<BitString> stages;   // B_0 .. B_n
  std::vector<BitString> sigmas;   // sigma_0 .. sigma_{n-1}
  std::vector<bool> met;           // whether W_i supplied a witness
  BitString b_prefix;              // = stages.back()

  nlohmann::json to_json() const;
};

// The weakly-1-generic variant: at stage i the smallest witness of W_i
// extending B_i ^ 1 is taken if one exists, else B_i ^ 0; then the block
// padding continues as in the plain construction. Throws on an
// indeterminate enumerator answer.
GenericRun weakly_generic_build(const ModulusFunction& f, const BitStream& a,
                                const std::vector<DenseSetEnumerator>& dense,
                                std::size_t n_blocks);

struct SMembership {
  bool on_tree = false;
  std::size_t completed_blocks = 0;
};

// Classifies sigma against the perfect-set tree grammar driven by f.
SMembership nscr_S_membership(const ModulusFunction& f, const BitString& sigma);

}  // namespace ncr
