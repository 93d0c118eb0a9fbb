#include "ncr/rea.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ncr {

namespace {

bool prefix_matches(const BitString& required, const BitStream& oracle) {
  return required == oracle.prefix(required.size());
}

bool prefix_matches(const BitString& required, const BitString& sigma) {
  return required.is_prefix_of(sigma);
}

// Least step at which a matching rule for target j has fired; the step
// bound delays enumeration of j until step j at the earliest.
template <typename Oracle>
std::optional<std::size_t> first_settle(const std::vector<OpRule>& rules,
                                        const Oracle& oracle, std::size_t j) {
  std::optional<std::size_t> best;
  for (const auto& r : rules) {
    if (r.target != j || !prefix_matches(r.prefix, oracle)) continue;
    std::size_t s = std::max(r.step, j);
    if (!best || s < *best) best = s;
  }
  return best;
}

}  // namespace

EnumerationOperator EnumerationOperator::from_rules(std::vector<OpRule> rules) {
  EnumerationOperator op;
  op.rules_.push_back(OpRule{0, BitString{}, 1});  // implicit rule
  for (auto& r : rules) {
    if (r.step < 1)
      throw ValidationError("operator rule: settling step must be >= 1");
    if (r.prefix.size() > r.step)
      throw ValidationError(
          "operator rule: oracle use " + std::to_string(r.prefix.size()) +
          " exceeds settling step " + std::to_string(r.step));
    if (r.target > r.step)
      throw ValidationError("operator rule: target " +
                            std::to_string(r.target) +
                            " can never be enumerated by step " +
                            std::to_string(r.step));
    op.rules_.push_back(std::move(r));
  }
  return op;
}

std::set<std::size_t> EnumerationOperator::enumerate(const BitStream& oracle,
                                                     std::size_t s) const {
  std::set<std::size_t> out;
  for (const auto& r : rules_)
    if (r.target <= s && r.step <= s && prefix_matches(r.prefix, oracle))
      out.insert(r.target);
  return out;
}

std::set<std::size_t> EnumerationOperator::enumerate(const BitString& sigma,
                                                     std::size_t s) const {
  std::set<std::size_t> out;
  for (const auto& r : rules_)
    if (r.target <= s && r.step <= s && prefix_matches(r.prefix, sigma))
      out.insert(r.target);
  return out;
}

std::optional<std::size_t> EnumerationOperator::settling(
    const BitStream& oracle, std::size_t j, std::size_t cap) const {
  auto s = first_settle(rules_, oracle, j);
  if (s && *s <= cap) return s;
  return std::nullopt;
}

ReaRun construction_one(const EnumerationOperator& op, const BitStream& a,
                        std::size_t i_max, std::size_t cap,
                        bool allow_truncation) {
  if (cap < 1) throw ValidationError("construction_one: cap must be >= 1");
  ReaRun run;
  run.cap = cap;

  auto settle = [&](std::size_t j) { return op.settling(a, j, cap); };

  std::vector<std::size_t> fs;
  std::vector<int> bs;
  std::vector<std::size_t> ms;
  for (std::size_t i = 0; i <= i_max; ++i) {
    auto si = settle(i);
    int bit = si ? 1 : 0;
    // m_i: least element of B greater than i, within the cap
    std::optional<std::size_t> mi;
    for (std::size_t j = i + 1; j <= cap; ++j) {
      if (settle(j)) {
        mi = j;
        break;
      }
    }
    if (!mi) {
      if (allow_truncation) {
        run.truncated = true;
        break;
      }
      throw CapExceeded("construction_one: no element of B greater than " +
                        std::to_string(i) + " within cap " +
                        std::to_string(cap));
    }
    std::size_t fi = 1;
    if (bit == 1) {
      for (std::size_t j = 0; j <= *mi; ++j) {
        auto sj = settle(j);
        if (sj && *sj > fi) fi = *sj;
      }
    }
    bs.push_back(bit);
    ms.push_back(*mi);
    fs.push_back(fi);
  }
  if (bs.empty())
    throw CapExceeded("construction_one: no complete block within cap");

  run.b = std::move(bs);
  run.m = std::move(ms);
  run.f = std::move(fs);
  run.i_max = run.b.size() - 1;
  for (std::size_t i = 0; i <= run.i_max; ++i) {
    if (i > 0) run.c.push_back(0);  // separator of the previous block
    run.c.append_run(run.b[i], run.f[i]);
  }
  if (auto s_next = op.settling(a, run.i_max + 1, cap)) {
    (void)s_next;
    run.peek_bit = 1;
  }
  return run;
}

BitString ReaRun::c_with_peek() const {
  BitString out = c;
  if (peek_bit) {
    out.push_back(0);
    out.push_back(*peek_bit);
  }
  return out;
}

BitString decode_B(const BitString& c_prefix) {
  BitString out;
  std::size_t i = 0;
  const std::size_t n = c_prefix.size();
  while (i < n) {
    if (c_prefix.bit(i) == 1) {
      while (i < n && c_prefix.bit(i) == 1) ++i;
      if (i < n) ++i;  // separator; a final block may end unseparated
      out.push_back(1);
    } else {
      ++i;  // the zero block "0"
      if (i < n) {
        if (c_prefix.bit(i) != 0)
          throw ParseError("decode_B: zero block missing its separator at " +
                           std::to_string(i));
        ++i;
      }
      out.push_back(0);
    }
  }
  return out;
}

std::vector<BitString> t_transform(const BitString& sigma, std::size_t n) {
  std::vector<BitString> out;
  auto add = [&](const BitString& s) {
    for (const auto& e : out)
      if (e == s) return;
    out.push_back(s);
  };
  if (sigma.size() < n) {
    add(sigma);
    return out;
  }
  add(sigma.take(n));
  for (std::size_t i = 0; i <= n; ++i) {
    BitString s = sigma.take(i);
    s.append_run(1, sigma.size() - i);
    add(s);
  }
  return out;
}

BitString approx_tau(const BitString& sigma, const EnumerationOperator& op) {
  if (sigma.empty()) throw ValidationError("approx_tau: |sigma| >= 1 required");
  const std::size_t s = sigma.size();
  auto w = op.enumerate(sigma, s);

  // characteristic bits of W^sigma_{e,s}, with a sentinel 1 at s+1
  std::vector<int> b(s + 2, 0);
  for (std::size_t j : w) b[j] = 1;
  b[s + 1] = 1;

  auto settle = [&](std::size_t j) {
    return first_settle(op.rules(), sigma, j);
  };

  BitString tau;
  for (std::size_t k = 0; k <= s && tau.size() < s; ++k) {
    std::size_t mk = k + 1;
    while (b[mk] == 0) ++mk;
    std::size_t fk;
    if (b[k] == 0) {
      fk = 1;
    } else if (mk != s + 1) {
      fk = 1;
      for (std::size_t j = 0; j <= mk; ++j) {
        if (b[j] != 1) continue;
        auto sj = settle(j);
        if (sj && *sj > fk) fk = *sj;
      }
    } else {
      fk = s;
    }
    if (k > 0) tau.push_back(0);  // separator of the previous block
    tau.append_run(b[k], fk);
  }
  if (tau.size() > s) tau = tau.take(s);
  return tau;
}

LiftResult lift_test(const LevelTest& t2n, const EnumerationOperator& op,
                     const BitStream& a, const BitString& c_prefix,
                     const GranularityTable& table) {
  if (t2n.level < 2 || t2n.level % 2 != 0)
    throw ValidationError("lift_test: input test level must be even and >= 2");
  const std::size_t n = t2n.level / 2;

  LiftResult res;
  std::vector<BitString> union_elements;
  auto add_union = [&](const BitString& s) {
    for (const auto& e : union_elements)
      if (e == s) return;
    union_elements.push_back(s);
  };

  for (const auto& sigma : t2n.elements) {
    LiftElementReport rep;
    rep.sigma = sigma;
    rep.tau = approx_tau(sigma, op);
    std::size_t hh_n = table.h_hat_iter(n, sigma.size());
    auto family = t_transform(rep.tau, hh_n);
    rep.contribution = WeightBound::exactly(Dyadic(0));
    for (const auto& e : family) {
      rep.contribution += level_weight(n, table.h_iter(n, e.size()));
      add_union(e);
      if (e.size() <= c_prefix.size() && e.is_prefix_of(c_prefix) &&
          !e.empty())
        rep.produced_c_prefix = true;
    }
    std::size_t h2n = table.h_iter(t2n.level, sigma.size());
    std::size_t hn = table.h_iter(n, sigma.size());
    rep.past_threshold =
        above_safe_threshold(t2n.level, h2n) && hh_n + 1 < 2 * hn;
    if (rep.past_threshold) {
      WeightBound cap3 = level_weight(t2n.level, h2n).scaled(Dyadic(3));
      rep.bound_ok = rep.contribution.hi <= cap3.lo;
      if (!rep.bound_ok) ++res.bound_violations;
    }
    rep.sigma_prefix_of_a = sigma == a.prefix(sigma.size());
    res.per_element.push_back(std::move(rep));
  }

  // assemble the lifted test over the de-duplicated union
  WeightBound total = WeightBound::exactly(Dyadic(0));
  for (const auto& e : union_elements)
    total += level_weight(n, table.h_iter(n, e.size()));
  res.lifted = make_level_test(n, t2n.measure, total.hi);
  for (const auto& e : union_elements) push_element(res.lifted, e, table);

  for (const auto& e : union_elements)
    if (!e.empty() && e.size() <= c_prefix.size() && e.is_prefix_of(c_prefix))
      ++res.cover_count;
  return res;
}

EnumerationOperator EnumerationOperator::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rules"))
    throw ParseError("operator spec: expected object with \"rules\"");
  std::vector<OpRule> rules;
  for (const auto& r : j.at("rules")) {
    OpRule rule;
    rule.target = r.at("j").get<std::size_t>();
    rule.prefix = BitString::from_string(r.value("prefix", std::string{}));
    rule.step = r.at("s").get<std::size_t>();
    rules.push_back(std::move(rule));
  }
  return from_rules(std::move(rules));
}

nlohmann::json EnumerationOperator::to_json() const {
  nlohmann::json rules = nlohmann::json::array();
  for (std::size_t i = 1; i < rules_.size(); ++i) {  // skip the implicit rule
    rules.push_back({{"j", rules_[i].target},
                     {"prefix", rules_[i].prefix.str()},
                     {"s", rules_[i].step}});
  }
  return nlohmann::json{{"rules", rules}};
}

nlohmann::json ReaRun::to_json() const {
  nlohmann::json j;
  j["i_max"] = i_max;
  j["cap"] = cap;
  j["B"] = b;
  j["m"] = m;
  j["f"] = f;
  j["C"] = c.str();
  j["C_with_peek"] = c_with_peek().str();
  j["truncated"] = truncated;
  return j;
}

nlohmann::json LiftResult::to_json() const {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& r : per_element) {
    per.push_back({{"sigma", r.sigma.str()},
                   {"tau", r.tau.str()},
                   {"sigma_prefix_of_a", r.sigma_prefix_of_a},
                   {"produced_c_prefix", r.produced_c_prefix},
                   {"past_threshold", r.past_threshold},
                   {"bound_ok", r.bound_ok},
                   {"contribution_hi", r.contribution.hi.str()}});
  }
  return nlohmann::json{{"lifted", lifted.to_json()},
                        {"per_element", per},
                        {"cover_count", cover_count},
                        {"bound_violations", bound_violations}};
}

}  // namespace ncr
