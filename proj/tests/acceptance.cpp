#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "ncr/cli.hpp"
#include "ncr/verify.hpp"

using namespace ncr;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " " << idx << ": " << what;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

template <typename F>
void criterion(int idx, const std::string& what, F body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(idx, what, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = argc > 1 ? argv[1] : "data";

  criterion(1, "lebesgue closed forms h(l)=l, g(n)=n+1", [] {
    auto t0 = std::chrono::steady_clock::now();
    MeasurePtr mu = lebesgue();
    bool ok = true;
    for (std::size_t l = 0; l <= 14; ++l) ok = ok && exact_h(*mu, l) == l;
    for (std::size_t n = 0; n <= 12; ++n)
      ok = ok && exact_g(*mu, n, 14) == n + 1;
    double dt = seconds_since(t0);
    report(1, "lebesgue closed forms h(l)=l, g(n)=n+1", ok && dt < 10.0,
           std::to_string(dt) + "s");
  });

  // criteria 2 and 3 share the exhaustively built corpus tables
  std::vector<GranularityTable> tables;
  criterion(2, "fact clauses on the measure corpus, depth 14", [&] {
    std::size_t checks = 0, violations = 0;
    for (const auto& mu : verification_corpus(2024)) {
      tables.push_back(build_table(mu, 14, 14));
      SuiteResult s = verify_fact_gh(tables.back());
      checks += s.checks;
      violations += s.violations.size();
      for (const auto& v : s.violations)
        std::cout << "  violation: " << s.name << ": " << v << "\n";
    }
    report(2, "fact clauses on the measure corpus, depth 14", violations == 0,
           std::to_string(checks) + " checks");
  });

  criterion(3, "approximation sandwiches and iterate bounds", [&] {
    std::size_t checks = 0, violations = 0;
    for (const auto& t : tables) {
      SuiteResult s = verify_approx_bounds(t, 4);
      checks += s.checks;
      violations += s.violations.size();
      for (const auto& v : s.violations)
        std::cout << "  violation: " << s.name << ": " << v << "\n";
    }
    report(3, "approximation sandwiches and iterate bounds",
           !tables.empty() && violations == 0,
           std::to_string(checks) + " checks");
  });

  criterion(4, "level-1 weight vs mass ratio < 2 on random elements", [&] {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> len_d(1, 12);
    std::uniform_int_distribution<int> bit_d(0, 1);
    std::size_t checked = 0, violations = 0;
    for (const auto& t : tables) {
      LevelTest test = make_level_test(1, t.measure, Dyadic(1000));
      for (int i = 0; i < 200; ++i) {
        BitString sigma;
        std::size_t len = len_d(rng);
        for (std::size_t b = 0; b < len; ++b) sigma.push_back(bit_d(rng));
        push_element(test, sigma, t);
      }
      WeightVsMassReport r = solovay_weight_vs_mass(test, t);
      checked += r.checked;
      violations += r.violations;
    }
    report(4, "level-1 weight vs mass ratio < 2 on random elements",
           checked >= 200 && violations == 0,
           std::to_string(checked) + " elements");
  });

  criterion(5, "level-4 covers nest to levels 3 and 2", [] {
    bool ok = true;
    std::string detail;
    for (MeasurePtr mu : {lebesgue(), bernoulli(Dyadic(1, 2))}) {
      GranularityTable t = closed_form_table(mu, 1200, 1200);
      LevelTest cover = build_cover(BitStream::alternating(), 4, mu, t, 12);
      NestingReport r43 = check_nesting(cover, t);
      Dyadic budget =
          r43.head_weight.hi + r43.tail_weight_lower.hi + Dyadic(1);
      LevelTest as3 = reaccount(cover, 3, t, budget);
      NestingReport r32 = check_nesting(as3, t);
      ok = ok && r43.tail_violations == 0 && r32.tail_violations == 0 &&
           r43.inconclusive == 0 && r32.inconclusive == 0;
      detail += mu->describe() + " heads " + std::to_string(r43.head_count) +
                "/" + std::to_string(r32.head_count) + "; ";
    }
    report(5, "level-4 covers nest to levels 3 and 2", ok, detail);
  });

  criterion(6, "worked construction reproduces the published table", [&] {
    std::ifstream in(data_dir + "/worked_operator.json");
    nlohmann::json j;
    in >> j;
    EnumerationOperator op = EnumerationOperator::from_json(j);
    ReaRun run = construction_one(op, BitStream::ones(), 4, 200, true);
    BitString expect = concat_blocks({{1, 37}, {0, 1}, {1, 134}, {0, 1},
                                      {0, 2}, {1, 134}, {0, 1}, {1, 1}});
    bool ok = run.f == std::vector<std::size_t>{37, 134, 1, 134} &&
              run.b == std::vector<int>{1, 1, 0, 1} &&
              run.c_with_peek() == expect;
    report(6, "worked construction reproduces the published table", ok);
  });

  criterion(7, "decoder round trips on 100 randomized corpora each", [] {
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult s = verify_round_trips(1234, 100);
    for (const auto& v : s.violations)
      std::cout << "  violation: " << v << "\n";
    double dt = seconds_since(t0);
    report(7, "decoder round trips on 100 randomized corpora each",
           s.violations.empty() && dt < 30.0, std::to_string(dt) + "s");
  });

  criterion(8, "level-2 cover lifts to a certified level-1 cover of C", [] {
    std::vector<OpRule> rules;
    for (std::size_t j = 1; j <= 40; ++j)
      rules.push_back({j, BitString{}, j});
    EnumerationOperator op = EnumerationOperator::from_rules(std::move(rules));
    GranularityTable t = lebesgue_tight_table(400, 400);
    BitStream a = BitStream::alternating();
    LevelTest cover = build_cover(a, 2, lebesgue(), t, 12);
    ReaRun run = construction_one(op, a, 14, 200);
    LiftResult res = lift_test(cover, op, a, run.c_with_peek(), t);
    bool ok = cover.elements.size() == 12 && res.bound_violations == 0 &&
              res.cover_count >= 12;
    report(8, "level-2 cover lifts to a certified level-1 cover of C", ok,
           "cover_count " + std::to_string(res.cover_count));
  });

  criterion(9, "tk partial sums below bound; t1 converges to 2/3", [] {
    GranularityTable t = lebesgue_tight_table(64, 64);
    bool ok = true;
    for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
      LevelTest test = tk_enumerate(lebesgue(), t, k, 10);
      WeightBound bound = tk_weight_bound(k, 12, t);
      ok = ok && test.weight_sum.hi <= bound.hi;
    }
    LevelTest t1 = tk_enumerate(lebesgue(), t, 1, 10);
    Dyadic diff = Dyadic(2) - Dyadic(3) * t1.weight_sum.hi;
    // |sum - 2/3| <= 2^{-16}  <=>  |3 sum - 2| <= 3 * 2^{-16}
    ok = ok && diff.sign() >= 0 && diff <= Dyadic(3, 16);
    report(9, "tk partial sums below bound; t1 converges to 2/3", ok,
           "3*sum deficit " + diff.str());
  });

  criterion(10, "exponential self-modulus yields verified failure indices",
            [] {
    GranularityTable t = lebesgue_tight_table(40000, 40000);
    SelfModRun run =
        construction_two(ModulusFunction::exp2(), BitStream::ones(), 2);
    bool ok = true;
    std::string detail;
    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
      FailureReport rep = failure_indices(run, t, k);
      bool nonempty = !rep.witnesses.empty();
      bool verified = true;
      for (const auto& w : rep.witnesses)
        verified = verified && w.prefix_verified && w.tk_member_verified;
      ok = ok && nonempty && verified;
      detail += "k=" + std::to_string(k) + ": " +
                std::to_string(rep.witnesses.size()) + " witnesses; ";
    }
    report(10, "exponential self-modulus yields verified failure indices", ok,
           detail);
  });

  criterion(11, "cli byte reproducibility under fixed seeds", [&] {
    std::vector<std::vector<std::string>> cases = {
        {"table", "--measure", "lebesgue", "--depth", "10"},
        {"table", "--measure", "bernoulli:1/2^2", "--depth", "10", "--out",
         "csv"},
        {"verify", "--suite", "roundtrips", "--seed", "42"},
        {"rea", "demo", "--op", data_dir + "/worked_operator.json", "--oracle",
         "ones", "--imax", "4"},
        {"selfmod", "build", "--modulus", "exp", "--stream", "ones",
         "--blocks", "2"},
        {"selfmod", "failures", "--modulus", "exp", "--stream", "ones",
         "--blocks", "2", "--level", "1", "--depth", "40000"},
        {"nscr", "classify", "--modulus", "poly:2", "--sigma", "1110"},
    };
    bool ok = true;
    for (const auto& args : cases) {
      std::ostringstream o1, e1, o2, e2;
      int c1 = cli_run(args, o1, e1);
      int c2 = cli_run(args, o2, e2);
      ok = ok && c1 == c2 && o1.str() == o2.str() && !o1.str().empty();
    }
    report(11, "cli byte reproducibility under fixed seeds", ok);
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}
