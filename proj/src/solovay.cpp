#include "ncr/solovay.hpp"

#include <mpfr.h>

#include <nlohmann/json.hpp>

namespace ncr {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned ilog2(std::size_t n) {
  unsigned e = 0;
  while ((std::size_t{1} << (e + 1)) <= n) ++e;
  return e;
}

Dyadic mpfr_to_dyadic(mpfr_t x) {
  if (mpfr_zero_p(x)) return Dyadic(0);
  mpz_class m;
  long e = static_cast<long>(mpfr_get_z_2exp(m.get_mpz_t(), x));
  if (e >= 0) return Dyadic(m << static_cast<unsigned long>(e), 0);
  return Dyadic(m, static_cast<unsigned long>(-e));
}

// Directed-rounding enclosure of x^{log2 n} 2^{-x} = 2^{log2(n) log2(x) - x}.
WeightBound transcendental_weight(std::size_t n, std::size_t x) {
  for (mpfr_prec_t prec = 96; prec <= 4096; prec *= 2) {
    mpfr_t ln, lx, y, w;
    mpfr_inits2(prec, ln, lx, y, w, static_cast<mpfr_ptr>(nullptr));

    auto bound = [&](mpfr_rnd_t rnd) {
      mpfr_set_ui(ln, static_cast<unsigned long>(n), rnd);
      mpfr_log2(ln, ln, rnd);
      mpfr_set_ui(lx, static_cast<unsigned long>(x), rnd);
      mpfr_log2(lx, lx, rnd);
      mpfr_mul(y, ln, lx, rnd);  // both factors >= 0
      mpfr_sub_ui(y, y, static_cast<unsigned long>(x), rnd);
      mpfr_exp2(w, y, rnd);
      return mpfr_to_dyadic(w);
    };
    Dyadic lo = bound(MPFR_RNDD);
    Dyadic hi = bound(MPFR_RNDU);
    mpfr_clears(ln, lx, y, w, static_cast<mpfr_ptr>(nullptr));

    if ((hi - lo) * Dyadic::pow2(30) <= hi && lo <= hi && lo.sign() > 0)
      return {lo, hi, false};
  }
  throw RefinementExhausted("level_weight: enclosure did not converge for n=" +
                            std::to_string(n) + ", x=" + std::to_string(x));
}

}  // namespace

WeightBound level_weight(std::size_t n, std::size_t x) {
  if (n < 1) throw ValidationError("level_weight: level must be >= 1");
  if (x == 0)
    return WeightBound::exactly(n == 1 ? Dyadic(1) : Dyadic(0));
  if (is_pow2(n)) {
    unsigned e = ilog2(n);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(x), e);
    return WeightBound::exactly(Dyadic(p, x));
  }
  return transcendental_weight(n, x);
}

bool above_safe_threshold(std::size_t n, std::size_t x) {
  mpz_class lhs = 1;
  lhs <<= x;
  mpz_class nn(static_cast<unsigned long>(n));
  return lhs > nn * nn;
}

LevelTest make_level_test(std::size_t level, MeasurePtr measure,
                          const Dyadic& budget) {
  if (level < 1) throw ValidationError("level test: level must be >= 1");
  LevelTest t;
  t.level = level;
  t.measure = std::move(measure);
  t.budget = budget;
  return t;
}

void push_element(LevelTest& t, const BitString& sigma,
                  const GranularityTable& table) {
  std::size_t x = table.h_iter(t.level, sigma.size());
  WeightBound w = level_weight(t.level, x);
  WeightBound next = t.weight_sum + w;
  if (next.hi > t.budget)
    throw BudgetExceeded("push_element: weight sum upper bound " +
                         next.hi.str() + " exceeds budget " + t.budget.str());
  t.elements.push_back(sigma);
  t.weight_sum = next;
}

std::size_t covers_count(const LevelTest& t, const BitStream& x,
                         std::size_t horizon) {
  std::vector<std::string> seen;
  std::size_t count = 0;
  for (const auto& sigma : t.elements) {
    if (sigma.size() > horizon) continue;
    if (!sigma.is_prefix_of(x.prefix(sigma.size()))) continue;
    std::string key = sigma.str();
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == key;
    if (!dup) {
      seen.push_back(key);
      ++count;
    }
  }
  return count;
}

LevelTest build_cover(const BitStream& a, std::size_t n, MeasurePtr mu,
                      const GranularityTable& table, std::size_t m) {
  LevelTest t = make_level_test(n, std::move(mu), Dyadic(2));
  std::size_t l = 0;
  for (std::size_t i = 0; i < m; ++i) {
    bool found = false;
    while (!found) {
      ++l;
      std::size_t hh;
      try {
        hh = table.h_hat_iter(n, l);
      } catch (const DomainEscape&) {
        throw DepthCapExceeded("build_cover: table exhausted after " +
                               std::to_string(i) + " of " + std::to_string(m) +
                               " prefixes");
      }
      if (hh <= n) continue;
      std::size_t d = hh - n;
      // h_hat^{(n)}(l) > n + log2 n  <=>  2^{h_hat^{(n)}(l)-n} > n
      mpz_class lhs = 1;
      lhs <<= d;
      if (lhs <= static_cast<unsigned long>(n)) continue;
      if (!(level_weight(n, d).hi.cmp_pow2(static_cast<long>(i)) < 0))
        continue;
      push_element(t, a.prefix(l), table);
      found = true;
    }
  }
  return t;
}

NestingReport check_nesting(const LevelTest& t, const GranularityTable& table) {
  if (t.level < 2)
    throw ValidationError("check_nesting: test level must be >= 2");
  NestingReport r;
  r.from_level = t.level;
  r.to_level = t.level - 1;
  r.head_weight = WeightBound::exactly(Dyadic(0));
  r.tail_weight_lower = WeightBound::exactly(Dyadic(0));
  r.tail_weight_upper = WeightBound::exactly(Dyadic(0));
  for (const auto& sigma : t.elements) {
    std::size_t xn = table.h_iter(t.level, sigma.size());
    std::size_t xn1 = table.h_iter(t.level - 1, sigma.size());
    WeightBound lower = level_weight(t.level - 1, xn1);
    if (!above_safe_threshold(t.level, xn)) {
      ++r.head_count;
      r.head_weight += lower;
      continue;
    }
    WeightBound upper = level_weight(t.level, xn);
    r.tail_weight_lower += lower;
    r.tail_weight_upper += upper;
    if (lower.hi < upper.lo) {
      // strict inequality certified
    } else if (lower.lo >= upper.hi) {
      ++r.tail_violations;
    } else {
      ++r.inconclusive;
    }
  }
  r.passed = r.tail_violations == 0 && r.inconclusive == 0;
  return r;
}

LevelTest reaccount(const LevelTest& t, std::size_t new_level,
                    const GranularityTable& table, const Dyadic& budget) {
  LevelTest out = make_level_test(new_level, t.measure, budget);
  for (const auto& sigma : t.elements) push_element(out, sigma, table);
  return out;
}

WeightVsMassReport solovay_weight_vs_mass(const LevelTest& t,
                                          const GranularityTable& table) {
  if (t.level != 1)
    throw ValidationError("solovay_weight_vs_mass: level-1 tests only");
  if (!table.measure->exact())
    throw ValidationError("solovay_weight_vs_mass: exact measures only");
  WeightVsMassReport r;
  r.max_ratio = Dyadic(0);
  for (const auto& sigma : t.elements) {
    std::size_t h1 = table.h_at(sigma.size());
    Dyadic ratio = table.measure->mass(sigma) * Dyadic::pow2(static_cast<long>(h1));
    if (ratio > r.max_ratio) r.max_ratio = ratio;
    ++r.checked;
    if (!(ratio < Dyadic(2))) ++r.violations;
  }
  r.passed = r.violations == 0;
  return r;
}

nlohmann::json LevelTest::to_json() const {
  nlohmann::json j;
  j["level"] = level;
  j["measure"] = measure->spec();
  nlohmann::json els = nlohmann::json::array();
  for (const auto& e : elements) els.push_back(e.str());
  j["elements"] = els;
  j["weight_sum"] = {{"lo", weight_sum.lo.str()}, {"hi", weight_sum.hi.str()}};
  j["budget"] = budget.str();
  return j;
}

LevelTest LevelTest::from_json(const nlohmann::json& j) {
  LevelTest t;
  t.level = j.at("level").get<std::size_t>();
  if (t.level < 1) throw ValidationError("level test: level must be >= 1");
  t.measure = load_measure(j.at("measure"));
  for (const auto& e : j.at("elements"))
    t.elements.push_back(BitString::from_string(e.get<std::string>()));
  t.weight_sum.lo = Dyadic::parse(j.at("weight_sum").at("lo").get<std::string>());
  t.weight_sum.hi = Dyadic::parse(j.at("weight_sum").at("hi").get<std::string>());
  t.weight_sum.exact = t.weight_sum.lo == t.weight_sum.hi;
  t.budget = Dyadic::parse(j.at("budget").get<std::string>());
  if (t.weight_sum.hi > t.budget)
    throw ValidationError("level test: weight sum exceeds budget");
  return t;
}

nlohmann::json NestingReport::to_json() const {
  return nlohmann::json{
      {"from_level", from_level},
      {"to_level", to_level},
      {"head_count", head_count},
      {"head_weight_hi", head_weight.hi.str()},
      {"tail_weight_lower_hi", tail_weight_lower.hi.str()},
      {"tail_weight_upper_lo", tail_weight_upper.lo.str()},
      {"tail_violations", tail_violations},
      {"inconclusive", inconclusive},
      {"passed", passed}};
}

nlohmann::json WeightVsMassReport::to_json() const {
  return nlohmann::json{{"checked", checked},
                        {"violations", violations},
                        {"max_ratio", max_ratio.str()},
                        {"max_ratio_approx", max_ratio.to_double()},
                        {"passed", passed}};
}

}  // namespace ncr
