#include "ncr/selfmod.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ncr {

namespace {

std::size_t floor_log2(std::size_t n) {
  std::size_t e = 0;
  while ((std::size_t{1} << (e + 1)) <= n) ++e;
  return e;
}

std::size_t to_index(const mpz_class& v, const char* what) {
  if (!v.fits_ulong_p())
    throw DomainEscape(std::string(what) + ": value " + v.get_str() +
                       " does not fit an index");
  return static_cast<std::size_t>(v.get_ui());
}

}  // namespace

int SelfModRun::bit_at(const mpz_class& i) const {
  if (i < 0 || i >= lengths.back())
    throw ValidationError("bit_at: index " + i.get_str() +
                          " outside the constructed blocks");
  std::size_t n = 0;
  while (i >= lengths[n]) ++n;
  mpz_class offset = (n == 0) ? i : mpz_class(i - lengths[n - 1]);
  if (offset < ones_runs[n]) return 1;
  if (offset == ones_runs[n]) return 0;
  return a_bits[n];
}

bool SelfModRun::ones_extension_is_prefix(std::size_t n,
                                          const mpz_class& count) const {
  if (n > n_blocks)
    throw ValidationError("ones_extension_is_prefix: block " +
                          std::to_string(n) + " was not constructed");
  if (count <= 0) return true;
  mpz_class next_run =
      (n + 1 <= n_blocks) ? ones_runs[n + 1] : mpz_class(f(lengths[n]));
  return count <= next_run;
}

SelfModRun construction_two(const ModulusFunction& f, const BitStream& a,
                            std::size_t n_blocks,
                            std::size_t materialize_cap) {
  SelfModRun run;
  run.f = f;
  run.n_blocks = n_blocks;
  for (std::size_t n = 0; n <= n_blocks; ++n) {
    mpz_class prev = (n == 0) ? mpz_class(0) : run.lengths[n - 1];
    mpz_class r = f(prev);
    run.ones_runs.push_back(r);
    run.lengths.push_back(prev + r + 2);
    run.a_bits.push_back(a.bit(n));
  }
  for (std::size_t n = 0; n <= n_blocks; ++n) {
    if (!run.lengths[n].fits_ulong_p() ||
        run.lengths[n].get_ui() > materialize_cap)
      break;
    run.b_prefix.append_run(1, static_cast<std::size_t>(run.ones_runs[n].get_ui()));
    run.b_prefix.push_back(0);
    run.b_prefix.push_back(run.a_bits[n]);
  }
  return run;
}

BitString decode_A(const BitString& b_prefix, const ModulusFunction& f) {
  BitString out;
  std::uint64_t level = 0;
  std::size_t pos = 0;
  while (pos < b_prefix.size()) {
    std::uint64_t r = f.eval_small(level);
    if (pos + r + 2 > b_prefix.size())
      throw ParseError("decode_A: prefix truncated inside block " +
                       std::to_string(out.size()));
    for (std::uint64_t i = 0; i < r; ++i, ++pos)
      if (b_prefix.bit(pos) != 1)
        throw ParseError("decode_A: expected a 1-run of length " +
                         std::to_string(r) + " at position " +
                         std::to_string(pos));
    if (b_prefix.bit(pos) != 0)
      throw ParseError("decode_A: missing block terminator at position " +
                       std::to_string(pos));
    ++pos;
    out.push_back(b_prefix.bit(pos));
    ++pos;
    level += r + 2;
  }
  return out;
}

LevelTest tk_enumerate(MeasurePtr mu, const GranularityTable& table,
                       std::size_t k, std::size_t sigma_len_max) {
  if (k < 1) throw ValidationError("tk_enumerate: level must be >= 1");
  if (sigma_len_max > 16)
    throw ValidationError("tk_enumerate: 2^" + std::to_string(sigma_len_max) +
                          " strings per level is past the enumeration cap");
  std::size_t i_max = std::max(sigma_len_max, floor_log2(k) + 6);
  WeightBound bound = tk_weight_bound(k, i_max, table);
  LevelTest t = make_level_test(k, std::move(mu), bound.hi);
  for (std::size_t l = 0; l <= sigma_len_max; ++l) {
    std::size_t ext = table.g_hat_iter(k, 2 * l);
    for (std::size_t code = 0; code < (std::size_t{1} << l); ++code) {
      BitString sigma;
      for (std::size_t b = 0; b < l; ++b)
        sigma.push_back((code >> (l - 1 - b)) & 1u);
      sigma.append_run(1, ext);
      push_element(t, sigma, table);
    }
  }
  return t;
}

bool tk_member(const BitString& candidate, const GranularityTable& table,
               std::size_t k) {
  for (std::size_t l = 0; l <= candidate.size(); ++l) {
    std::size_t ext;
    try {
      ext = table.g_hat_iter(k, 2 * l);
    } catch (const DomainEscape&) {
      break;
    }
    if (l + ext != candidate.size()) continue;
    bool all_ones = true;
    for (std::size_t i = l; i < candidate.size(); ++i)
      all_ones = all_ones && candidate.bit(i) == 1;
    if (all_ones) return true;
  }
  return false;
}

WeightBound tk_weight_bound(std::size_t k, std::size_t i_max,
                            const GranularityTable& table) {
  if (k < 1) throw ValidationError("tk_weight_bound: level must be >= 1");
  std::size_t logk = floor_log2(k);
  if (i_max < logk + 2)
    throw ValidationError("tk_weight_bound: i_max must exceed log2(k) + 1");

  // exact head: levels i <= log2 k, the finitely many levels where the
  // per-level majorant does not yet apply
  WeightBound total = WeightBound::exactly(Dyadic(0));
  for (std::size_t i = 0; i <= logk; ++i) {
    std::size_t ext = table.g_hat_iter(k, 2 * i);
    std::size_t x = table.h_iter(k, i + ext);
    total += level_weight(k, x).scaled(Dyadic(mpz_class(1) << i, 0));
  }

  // majorant sum: level i contributes at most 2^i (2i)^{log2 k} 2^{-2i}
  //             = k * i^{log2 k} 2^{-i}
  Dyadic kd(static_cast<long>(k));
  for (std::size_t i = logk + 1; i <= i_max; ++i)
    total += level_weight(k, i).scaled(kd);

  // geometric tail: the term ratio ((i+1)/i)^{log2 k} / 2 is decreasing in
  // i, so one certified ratio <= 3/4 at i_max+1 bounds the whole tail by
  // 4 * term(i_max + 1)
  WeightBound first = level_weight(k, i_max + 1);
  WeightBound second = level_weight(k, i_max + 2);
  if (second.hi * Dyadic(4) > first.lo * Dyadic(3))
    throw ValidationError(
        "tk_weight_bound: tail ratio not certified <= 3/4 at i_max = " +
        std::to_string(i_max));
  total += WeightBound{Dyadic(0), first.hi * kd * Dyadic(4), false};
  return total;
}

std::vector<std::size_t> domination_G(const GranularityTable& table,
                                      std::size_t k, std::size_t seed_length,
                                      std::size_t steps) {
  std::vector<std::size_t> out;
  try {
    out.push_back(table.g_hat_iter(k, 2 * seed_length + 1));
    for (std::size_t i = 0; i < steps; ++i)
      out.push_back(out.back() + table.g_hat_iter(k, 2 * out.back() + 1) + 2);
  } catch (const DomainEscape&) {
    std::string deepest =
        out.empty() ? std::string("the seed") : std::to_string(out.back());
    throw DomainEscape("domination_G: table exhausted after " +
                       std::to_string(out.size()) + " of " +
                       std::to_string(steps + 1) + " values; deepest G = " +
                       deepest);
  }
  return out;
}

FailureReport failure_indices(const SelfModRun& run,
                              const GranularityTable& table, std::size_t k) {
  FailureReport rep;
  rep.k = k;
  std::size_t exact_qualifying = 0;
  bool exact_any = false;
  for (std::size_t n = 0; n <= run.n_blocks; ++n) {
    const mpz_class& l = run.lengths[n];
    std::size_t gv;
    try {
      std::size_t li = to_index(l, "failure_indices");
      gv = table.g_hat_iter(k, 2 * li + 1);
    } catch (const DomainEscape&) {
      break;  // later blocks are even longer; nothing further is decidable
    }
    ++rep.checked_blocks;
    mpz_class fv = run.f(l);
    if (!table.g.empty()) {
      try {
        std::size_t ge =
            iterate(table.g, k, 2 * static_cast<std::size_t>(l.get_ui()) + 1);
        exact_any = true;
        if (fv > static_cast<unsigned long>(ge)) ++exact_qualifying;
      } catch (const DomainEscape&) {
      }
    }
    if (fv <= static_cast<unsigned long>(gv)) continue;

    FailureWitness w;
    w.n = n;
    w.length = l;
    w.g_hat_iter_value = gv;
    w.modulus_value = fv;
    std::size_t ext = table.g_hat_iter(k, 2 * static_cast<std::size_t>(l.get_ui()));
    w.prefix_verified = run.ones_extension_is_prefix(n, mpz_class(
        static_cast<unsigned long>(ext)));
    if (l.fits_ulong_p() && l.get_ui() <= run.b_prefix.size()) {
      BitString candidate = run.b_prefix.take(static_cast<std::size_t>(l.get_ui()));
      candidate.append_run(1, ext);
      w.tk_member_verified = tk_member(candidate, table, k);
    }
    rep.witnesses.push_back(std::move(w));
  }
  if (exact_any) rep.exact_g_qualifying = exact_qualifying;
  return rep;
}

DenseSetEnumerator DenseSetEnumerator::all_strings() {
  return {"all", [](const BitString& stem) {
            return WitnessResult{WitnessStatus::Found, stem};
          }};
}

DenseSetEnumerator DenseSetEnumerator::empty_set() {
  return {"empty", [](const BitString&) {
            return WitnessResult{WitnessStatus::CertifiedAbsent, {}};
          }};
}

DenseSetEnumerator DenseSetEnumerator::from_list(std::string name,
                                                 std::vector<BitString> members) {
  return {std::move(name),
          [members = std::move(members)](const BitString& stem) {
            const BitString* best = nullptr;
            for (const auto& m : members) {
              if (!stem.is_prefix_of(m)) continue;
              if (!best || m.size() < best->size() ||
                  (m.size() == best->size() && m < *best))
                best = &m;
            }
            if (!best) return WitnessResult{WitnessStatus::CertifiedAbsent, {}};
            return WitnessResult{WitnessStatus::Found, *best};
          }};
}

GenericRun weakly_generic_build(const ModulusFunction& f, const BitStream& a,
                                const std::vector<DenseSetEnumerator>& dense,
                                std::size_t n_blocks) {
  GenericRun run;
  BitString b;
  b.append_run(1, static_cast<std::size_t>(f.eval_small(0)));
  b.push_back(0);
  b.push_back(a.bit(0));
  run.stages.push_back(b);
  for (std::size_t i = 0; i < n_blocks; ++i) {
    BitString sigma;
    bool met = false;
    if (!dense.empty()) {
      const auto& w = dense[i % dense.size()];
      BitString stem = b;
      stem.push_back(1);
      WitnessResult res = w.query(stem);
      if (res.status == WitnessStatus::Indeterminate)
        throw CapExceeded("weakly_generic_build: dense set \"" + w.name +
                          "\" indeterminate within budget at stage " +
                          std::to_string(i));
      if (res.status == WitnessStatus::Found) {
        if (!stem.is_prefix_of(res.tau))
          throw ValidationError("weakly_generic_build: dense set \"" + w.name +
                                "\" returned a witness off its stem");
        sigma = res.tau;
        met = true;
      }
    }
    if (!met) {
      sigma = b;
      sigma.push_back(0);
    }
    run.sigmas.push_back(sigma);
    run.met.push_back(met);
    b = sigma;
    b.append_run(1, static_cast<std::size_t>(f.eval_small(sigma.size())));
    b.push_back(0);
    b.push_back(a.bit(i + 1));
    run.stages.push_back(b);
  }
  run.b_prefix = b;
  return run;
}

SMembership nscr_S_membership(const ModulusFunction& f,
                              const BitString& sigma) {
  STreePosition p = s_tree_classify(f, sigma);
  return SMembership{p.on_tree, p.completed_choice_bits};
}

nlohmann::json SelfModRun::to_json() const {
  nlohmann::json lens = nlohmann::json::array();
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& l : lengths) lens.push_back(l.get_str());
  for (const auto& r : ones_runs) runs.push_back(r.get_str());
  return nlohmann::json{{"n_blocks", n_blocks},
                        {"lengths", lens},
                        {"ones_runs", runs},
                        {"a_bits", a_bits},
                        {"b_prefix", b_prefix.str()},
                        {"b_prefix_len", b_prefix.size()}};
}

nlohmann::json FailureReport::to_json() const {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : witnesses) {
    ws.push_back({{"n", w.n},
                  {"length", w.length.get_str()},
                  {"g_hat_iter", w.g_hat_iter_value},
                  {"modulus", w.modulus_value.get_str()},
                  {"prefix_verified", w.prefix_verified},
                  {"tk_member_verified", w.tk_member_verified}});
  }
  nlohmann::json j{{"k", k},
                   {"checked_blocks", checked_blocks},
                   {"witnesses", ws}};
  if (exact_g_qualifying)
    j["exact_g_qualifying"] = *exact_g_qualifying;
  else
    j["exact_g_qualifying"] = nullptr;
  return j;
}

nlohmann::json GenericRun::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  nlohmann::json sg = nlohmann::json::array();
  for (const auto& s : stages) st.push_back(s.str());
  for (const auto& s : sigmas) sg.push_back(s.str());
  return nlohmann::json{{"stages", st},
                        {"sigmas", sg},
                        {"met", met},
                        {"b_prefix", b_prefix.str()}};
}

}  // namespace ncr
