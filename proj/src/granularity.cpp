#include "ncr/granularity.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace ncr {

namespace {

void max_mass_dfs(const MeasureOracle& mu, BitString& node, std::size_t depth,
                  Dyadic& best) {
  for (int b = 0; b < 2; ++b) {
    node.push_back(b);
    Dyadic child = mu.mass(node);
    // A child's mass never exceeds its parent's; skip subtrees that cannot
    // improve the current maximum.
    if (child > best) {
      if (depth == 1)
        best = child;
      else
        max_mass_dfs(mu, node, depth - 1, best);
    }
    node = node.take(node.size() - 1);
  }
}

// Largest n >= 0 with M < 2^{-n+1}.
std::size_t h_from_max_mass(const Dyadic& M) {
  std::size_t n = 0;
  while (M.cmp_pow2(static_cast<long>(n)) < 0) ++n;  // M < 2^{-n} => h > n
  return n;
}

// Largest n with 2^{-n} < M < 2^{-n+2}; M in (0, 1].
std::size_t witness_from_exact_mass(const Dyadic& M) {
  // Canonical M = m * 2^{-k}, m odd: m == 1 means M = 2^{-k} exactly.
  std::size_t k = M.exponent();
  if (M.numerator() == 1) return k + 1;
  std::size_t bits = mpz_sizeinbase(M.numerator().get_mpz_t(), 2);
  // 2^{-j-1} < M < 2^{-j} with j = k - bits; the two valid witnesses are
  // j+1 and j+2, take the larger.
  return k - bits + 2;
}

// Per-cylinder witness for one depth-l cylinder through interval
// refinement; nullopt means the cylinder's mass is certified < 2^{-l}
// (it cannot be the depth maximum and is skipped by the combiner).
std::optional<std::size_t> interval_witness(const MeasureOracle& mu,
                                            const BitString& sigma,
                                            std::size_t l,
                                            unsigned max_precision) {
  for (unsigned prec = static_cast<unsigned>(l) + 4;; prec *= 2) {
    if (prec > max_precision) prec = max_precision;
    DyadicInterval iv = mu.mass_interval(sigma, prec);
    if (iv.hi.cmp_pow2(static_cast<long>(l)) < 0) return std::nullopt;
    // Witnesses reach l+1 (mass exactly 2^{-l}); the caller clamps at l.
    for (std::size_t n = l + 1; n >= 1; --n) {
      if (iv.lo.cmp_pow2(static_cast<long>(n)) > 0 &&
          iv.hi.cmp_pow2(static_cast<long>(n) - 2) < 0)
        return n;
    }
    if (prec == max_precision)
      throw RefinementExhausted(
          "approx_h: no witness certified for cylinder " + sigma.str() +
          " at precision " + std::to_string(max_precision));
  }
}

// Min over depth-l cylinders of the clamped per-cylinder witness.
std::size_t raw_approx_h(const MeasureOracle& mu, std::size_t l,
                         unsigned max_precision) {
  if (l == 0) return 0;
  std::size_t best = l;  // witnesses are clamped at l
  BitString node;
  // iterative DFS over all depth-l strings
  std::function<void(BitString&, std::size_t)> walk = [&](BitString& cur,
                                                          std::size_t depth) {
    if (depth == 0) {
      auto w = interval_witness(mu, cur, l, max_precision);
      if (w && *w < best) best = *w;
      return;
    }
    for (int b = 0; b < 2; ++b) {
      cur.push_back(b);
      walk(cur, depth - 1);
      cur = cur.take(cur.size() - 1);
    }
  };
  walk(node, l);
  return best;
}

}  // namespace

Dyadic max_depth_mass(const MeasureOracle& mu, std::size_t depth) {
  if (!mu.exact())
    throw ValidationError("max_depth_mass requires an exact oracle");
  BitString root;
  Dyadic root_mass = mu.mass(root);
  if (depth == 0) return root_mass;
  Dyadic best = 0;
  max_mass_dfs(mu, root, depth, best);
  return best;
}

std::size_t exact_h(const MeasureOracle& mu, std::size_t l,
                    std::size_t depth_cap) {
  if (l > depth_cap)
    throw DepthCapExceeded("exact_h: depth " + std::to_string(l) +
                           " exceeds cap " + std::to_string(depth_cap));
  return h_from_max_mass(max_depth_mass(mu, l));
}

std::size_t exact_g(const MeasureOracle& mu, std::size_t n,
                    std::size_t depth_cap) {
  for (std::size_t l = 0; l <= depth_cap; ++l) {
    if (max_depth_mass(mu, l).cmp_pow2(static_cast<long>(n)) < 0) return l;
  }
  throw DepthCapExceeded("exact_g: threshold 2^-" + std::to_string(n) +
                         " not reached by depth " + std::to_string(depth_cap));
}

std::size_t approx_h(const MeasureOracle& mu, std::size_t l,
                     std::size_t depth_cap, unsigned max_precision) {
  if (l > depth_cap)
    throw DepthCapExceeded("approx_h: depth " + std::to_string(l) +
                           " exceeds cap " + std::to_string(depth_cap));
  std::size_t acc = 0;
  for (std::size_t k = 1; k <= l; ++k)
    acc = std::max(acc, raw_approx_h(mu, k, max_precision));
  return acc;
}

std::size_t approx_g(const MeasureOracle& mu, std::size_t n,
                     std::size_t depth_cap, unsigned max_precision) {
  std::size_t acc = 0;
  for (std::size_t l = 0; l <= depth_cap; ++l) {
    if (l > 0) acc = std::max(acc, raw_approx_h(mu, l, max_precision));
    if (acc >= n + 2) return l;
  }
  throw DepthCapExceeded("approx_g: h_hat below " + std::to_string(n + 2) +
                         " through depth " + std::to_string(depth_cap));
}

std::size_t iterate(const std::vector<std::size_t>& table, std::size_t n,
                    std::size_t l) {
  std::size_t v = l;
  for (std::size_t i = 0; i < n; ++i) {
    if (v >= table.size())
      throw DomainEscape("iterate: argument " + std::to_string(v) +
                         " outside table of size " +
                         std::to_string(table.size()));
    v = table[v];
  }
  return v;
}

std::size_t GranularityTable::h_at(std::size_t l) const {
  if (l >= h.size())
    throw DomainEscape("h not tabulated at " + std::to_string(l));
  return h[l];
}

std::size_t GranularityTable::h_hat_at(std::size_t l) const {
  if (l >= h_hat.size())
    throw DomainEscape("h_hat not tabulated at " + std::to_string(l));
  return h_hat[l];
}

std::size_t GranularityTable::g_at(std::size_t n) const {
  if (n >= g.size())
    throw DomainEscape("g not tabulated at " + std::to_string(n));
  return g[n];
}

std::size_t GranularityTable::g_hat_at(std::size_t n) const {
  if (n >= g_hat.size())
    throw DomainEscape("g_hat not tabulated at " + std::to_string(n));
  return g_hat[n];
}

std::size_t GranularityTable::g_hat_iter(std::size_t n, std::size_t l) const {
  return iterate(g_hat, n, l);
}

namespace {

std::vector<std::size_t> g_rows_from(
    const std::function<Dyadic(std::size_t)>& max_mass, std::size_t depth_cap,
    std::size_t n_max) {
  std::vector<std::size_t> g;
  for (std::size_t n = 0; n <= n_max; ++n) {
    bool found = false;
    for (std::size_t l = g.empty() ? 0 : g.back(); l <= depth_cap; ++l) {
      if (max_mass(l).cmp_pow2(static_cast<long>(n)) < 0) {
        g.push_back(l);
        found = true;
        break;
      }
    }
    if (!found) break;  // beyond computable range: absent, never guessed
  }
  return g;
}

std::vector<std::size_t> g_hat_rows_from(const std::vector<std::size_t>& h_hat,
                                         std::size_t n_max) {
  std::vector<std::size_t> g_hat;
  for (std::size_t n = 0; n <= n_max; ++n) {
    bool found = false;
    for (std::size_t l = 0; l < h_hat.size(); ++l) {
      if (h_hat[l] >= n + 2) {
        g_hat.push_back(l);
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  return g_hat;
}

}  // namespace

GranularityTable build_table(MeasurePtr mu, std::size_t depth_cap,
                             std::size_t n_max) {
  GranularityTable t;
  t.measure = mu;
  t.depth_cap = depth_cap;

  t.h_hat.resize(depth_cap + 1, 0);
  std::size_t acc = 0;
  for (std::size_t l = 1; l <= depth_cap; ++l) {
    acc = std::max(acc, raw_approx_h(*mu, l, 96));
    t.h_hat[l] = acc;
  }
  t.h_hat_provenance =
      mu->exact() ? Provenance::Exact : Provenance::IntervalDerived;

  if (mu->exact()) {
    std::vector<Dyadic> max_mass(depth_cap + 1);
    for (std::size_t l = 0; l <= depth_cap; ++l)
      max_mass[l] = max_depth_mass(*mu, l);
    t.h.resize(depth_cap + 1);
    for (std::size_t l = 0; l <= depth_cap; ++l)
      t.h[l] = h_from_max_mass(max_mass[l]);
    t.g = g_rows_from([&](std::size_t l) { return max_mass[l]; }, depth_cap,
                      n_max);
    t.h_provenance = Provenance::Exact;
  }

  t.g_hat = g_hat_rows_from(t.h_hat, n_max);
  return t;
}

GranularityTable closed_form_table(MeasurePtr mu, std::size_t depth_cap,
                                   std::size_t n_max) {
  if (!mu->max_mass_closed_form(0))
    throw ValidationError(
        "closed_form_table: oracle has no closed-form depth mass");
  GranularityTable t;
  t.measure = mu;
  t.depth_cap = depth_cap;
  std::vector<Dyadic> max_mass(depth_cap + 1);
  for (std::size_t l = 0; l <= depth_cap; ++l)
    max_mass[l] = *mu->max_mass_closed_form(l);

  t.h.resize(depth_cap + 1);
  t.h_hat.resize(depth_cap + 1, 0);
  std::size_t acc = 0;
  for (std::size_t l = 0; l <= depth_cap; ++l) {
    t.h[l] = h_from_max_mass(max_mass[l]);
    if (l > 0) {
      std::size_t w = std::min(l, witness_from_exact_mass(max_mass[l]));
      acc = std::max(acc, w);
      t.h_hat[l] = acc;
    }
  }
  t.g = g_rows_from([&](std::size_t l) { return max_mass[l]; }, depth_cap,
                    n_max);
  t.g_hat = g_hat_rows_from(t.h_hat, n_max);
  t.h_provenance = Provenance::ClosedForm;
  t.h_hat_provenance = Provenance::ClosedForm;
  return t;
}

GranularityTable lebesgue_tight_table(std::size_t depth_cap,
                                      std::size_t n_max) {
  GranularityTable t;
  t.measure = lebesgue();
  t.depth_cap = depth_cap;
  t.h.resize(depth_cap + 1);
  t.h_hat.resize(depth_cap + 1);
  for (std::size_t l = 0; l <= depth_cap; ++l) t.h[l] = t.h_hat[l] = l;
  for (std::size_t n = 0; n <= n_max && n + 1 <= depth_cap; ++n) {
    t.g.push_back(n + 1);
    t.g_hat.push_back(n + 1);
  }
  t.h_provenance = Provenance::ClosedForm;
  t.h_hat_provenance = Provenance::ClosedForm;
  return t;
}

nlohmann::json GranularityTable::to_json() const {
  nlohmann::json j;
  j["measure"] = measure->spec();
  j["D"] = depth_cap;
  j["h"] = h;
  j["g"] = g;
  j["h_hat"] = h_hat;
  j["g_hat"] = g_hat;
  return j;
}

std::string GranularityTable::to_csv() const {
  std::ostringstream os;
  os << "l,h,h_hat,n,g,g_hat\n";
  std::size_t rows = std::max(h_hat.size(), std::max(g.size(), g_hat.size()));
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < h_hat.size()) {
      os << i << ',';
      if (i < h.size()) os << h[i];
      os << ',' << h_hat[i];
    } else {
      os << ",,";
    }
    os << ',';
    if (i < g.size() || i < g_hat.size()) {
      os << i << ',';
      if (i < g.size()) os << g[i];
      os << ',';
      if (i < g_hat.size()) os << g_hat[i];
    } else {
      os << ",,";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ncr
