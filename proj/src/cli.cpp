#include "ncr/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncr/verify.hpp"

namespace ncr {

namespace {

nlohmann::json load_json_arg(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{')
    return nlohmann::json::parse(spec);
  std::ifstream in(spec);
  if (!in) throw ParseError("cannot open " + spec);
  nlohmann::json j;
  in >> j;
  return j;
}

// Table used by the test/selfmod subcommands: the tight Lebesgue table on
// request, a closed-form table when the oracle admits one (valid to any
// depth), otherwise exhaustive enumeration under the hard cap.
GranularityTable make_table(MeasurePtr mu, std::size_t depth, bool tight) {
  if (tight) return lebesgue_tight_table(depth, depth);
  if (mu->max_mass_closed_form(1)) return closed_form_table(mu, depth, depth);
  std::size_t d = std::min(depth, kDefaultDepthCap);
  return build_table(std::move(mu), d, d);
}

std::vector<DenseSetEnumerator> dense_sets_from_json(const nlohmann::json& j) {
  std::vector<DenseSetEnumerator> out;
  for (const auto& e : j) {
    std::string kind = e.at("kind").get<std::string>();
    if (kind == "all") {
      out.push_back(DenseSetEnumerator::all_strings());
    } else if (kind == "empty") {
      out.push_back(DenseSetEnumerator::empty_set());
    } else if (kind == "list") {
      std::vector<BitString> members;
      for (const auto& s : e.at("strings"))
        members.push_back(BitString::from_string(s.get<std::string>()));
      out.push_back(DenseSetEnumerator::from_list(
          e.value("name", std::string("list")), std::move(members)));
    } else {
      throw ParseError("dense set kind \"" + kind + "\" unknown");
    }
  }
  return out;
}

void emit(std::ostream& out, const nlohmann::json& j) {
  out << j.dump(2) << "\n";
}

}  // namespace

BitStream streamspec_parse(const std::string& spec, std::ostream* warn) {
  if (spec == "zeros") return BitStream::zeros();
  if (spec == "ones") return BitStream::ones();
  if (spec == "alt") return BitStream::alternating();
  if (spec.rfind("periodic:", 0) == 0)
    return BitStream::periodic(BitString::from_string(spec.substr(9)));
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    BitString prefix;
    char c;
    while (in.get(c)) {
      if (c == '0' || c == '1')
        prefix.push_back(c - '0');
      else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
        throw ParseError(std::string("stream file: unexpected character '") +
                         c + "'");
    }
    if (prefix.empty()) throw ParseError("stream file " + path + " is empty");
    int tail = prefix.bit(prefix.size() - 1);
    if (warn)
      *warn << "warning: " << path << " supplies " << prefix.size()
            << " bits; extending with repeated final bit " << tail << "\n";
    return BitStream::eventually(prefix, tail);
  }
  throw ParseError("stream spec \"" + spec + "\" not recognized");
}

MeasurePtr measurespec_parse(const std::string& spec) {
  if (spec == "lebesgue") return lebesgue();
  if (spec.rfind("bernoulli:", 0) == 0)
    return bernoulli(Dyadic::parse(spec.substr(10)));
  return load_measure(load_json_arg(spec));
}

ModulusFunction modulusspec_parse(const std::string& spec) {
  if (spec == "exp") return ModulusFunction::exp2();
  if (spec.rfind("poly:", 0) == 0)
    return ModulusFunction::poly(
        static_cast<unsigned>(std::stoul(spec.substr(5))));
  if (spec.rfind("table:", 0) == 0) {
    std::vector<std::uint64_t> vals;
    std::stringstream ss(spec.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stoull(item));
    return ModulusFunction::table(std::move(vals));
  }
  return ModulusFunction::from_json(load_json_arg(spec));
}

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"finite-scale granularity, level tests, and padded codings"};
  app.require_subcommand(1);

  std::string measure_spec = "lebesgue";
  std::string stream_spec = "zeros";
  std::string op_spec;
  std::string modulus_spec = "poly:1";
  std::string test_path;
  std::string dense_path;
  std::string sigma_text;
  std::string out_format = "json";
  std::string suite = "all";
  std::size_t depth = kDefaultDepthCap;
  std::size_t n_max = 0;
  std::size_t level = 1;
  std::size_t count = 8;
  std::size_t i_max = 4;
  std::size_t cap = 200;
  std::size_t blocks = 2;
  std::size_t sigma_max = 6;
  unsigned seed = 0;
  bool closed_form = false;
  bool tight = false;
  bool no_truncate = false;

  auto* table_cmd = app.add_subcommand("table", "granularity table");
  table_cmd->add_option("--measure", measure_spec);
  table_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  table_cmd->add_option("--nmax", n_max);
  table_cmd->add_option("--out", out_format)
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  table_cmd->add_flag("--closed-form", closed_form);

  auto* test_cmd = app.add_subcommand("test", "level tests");
  auto* build_cover_cmd = test_cmd->add_subcommand("build-cover");
  build_cover_cmd->add_option("--measure", measure_spec);
  build_cover_cmd->add_option("--stream", stream_spec);
  build_cover_cmd->add_option("--level", level)->check(CLI::PositiveNumber);
  build_cover_cmd->add_option("--count", count)->check(CLI::PositiveNumber);
  build_cover_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  build_cover_cmd->add_flag("--tight", tight);
  auto* nesting_cmd = test_cmd->add_subcommand("check-nesting");
  nesting_cmd->add_option("--test", test_path)->required();
  nesting_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  nesting_cmd->add_flag("--tight", tight);
  test_cmd->require_subcommand(1);

  auto* rea_cmd = app.add_subcommand("rea", "oracle enumeration coding");
  auto* demo_cmd = rea_cmd->add_subcommand("demo");
  demo_cmd->add_option("--op", op_spec)->required();
  demo_cmd->add_option("--oracle", stream_spec);
  demo_cmd->add_option("--imax", i_max);
  demo_cmd->add_option("--cap", cap)->check(CLI::PositiveNumber);
  demo_cmd->add_flag("--no-truncate", no_truncate);
  auto* lift_cmd = rea_cmd->add_subcommand("lift");
  lift_cmd->add_option("--op", op_spec)->required();
  lift_cmd->add_option("--oracle", stream_spec);
  lift_cmd->add_option("--test", test_path)->required();
  lift_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  lift_cmd->add_option("--imax", i_max);
  lift_cmd->add_option("--cap", cap)->check(CLI::PositiveNumber);
  lift_cmd->add_flag("--tight", tight);
  rea_cmd->require_subcommand(1);

  auto* selfmod_cmd = app.add_subcommand("selfmod", "self-modulus padding");
  auto* sm_build = selfmod_cmd->add_subcommand("build");
  sm_build->add_option("--modulus", modulus_spec);
  sm_build->add_option("--stream", stream_spec);
  sm_build->add_option("--blocks", blocks);
  auto* sm_tk = selfmod_cmd->add_subcommand("tk");
  sm_tk->add_option("--measure", measure_spec);
  sm_tk->add_option("--level", level)->check(CLI::PositiveNumber);
  sm_tk->add_option("--sigma-max", sigma_max);
  sm_tk->add_option("--depth", depth)->check(CLI::PositiveNumber);
  sm_tk->add_flag("--tight", tight);
  auto* sm_failures = selfmod_cmd->add_subcommand("failures");
  sm_failures->add_option("--modulus", modulus_spec);
  sm_failures->add_option("--stream", stream_spec);
  sm_failures->add_option("--blocks", blocks);
  sm_failures->add_option("--level", level)->check(CLI::PositiveNumber);
  sm_failures->add_option("--depth", depth)->check(CLI::PositiveNumber);
  auto* sm_generic = selfmod_cmd->add_subcommand("generic");
  sm_generic->add_option("--modulus", modulus_spec);
  sm_generic->add_option("--stream", stream_spec);
  sm_generic->add_option("--blocks", blocks);
  sm_generic->add_option("--dense", dense_path);
  selfmod_cmd->require_subcommand(1);

  auto* nscr_cmd = app.add_subcommand("nscr", "perfect-set tree");
  auto* classify_cmd = nscr_cmd->add_subcommand("classify");
  classify_cmd->add_option("--modulus", modulus_spec);
  classify_cmd->add_option("--sigma", sigma_text)->required();
  nscr_cmd->require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "invariant suites");
  verify_cmd->add_option("--suite", suite)
      ->check(CLI::IsMember(
          {"all", "core", "weights", "roundtrips", "measures", "granularity"}));
  verify_cmd->add_option("--depth", depth)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (table_cmd->parsed()) {
      MeasurePtr mu = measurespec_parse(measure_spec);
      if (n_max == 0) n_max = depth;
      GranularityTable t = closed_form
                               ? closed_form_table(mu, depth, n_max)
                               : build_table(mu, depth, n_max);
      if (out_format == "csv") {
        out << t.to_csv();
      } else if (out_format == "pretty") {
        out << mu->describe() << ", depth " << t.depth_cap << "\n"
            << t.to_csv();
      } else {
        emit(out, t.to_json());
      }
      return 0;
    }
    if (build_cover_cmd->parsed()) {
      MeasurePtr mu = measurespec_parse(measure_spec);
      GranularityTable t = make_table(mu, depth, tight);
      BitStream a = streamspec_parse(stream_spec, &err);
      LevelTest test = build_cover(a, level, mu, t, count);
      emit(out, test.to_json());
      return 0;
    }
    if (nesting_cmd->parsed()) {
      LevelTest test = LevelTest::from_json(load_json_arg(test_path));
      GranularityTable t = make_table(test.measure, depth, tight);
      NestingReport rep = check_nesting(test, t);
      emit(out, rep.to_json());
      return rep.passed ? 0 : 1;
    }
    if (demo_cmd->parsed()) {
      EnumerationOperator op =
          EnumerationOperator::from_json(load_json_arg(op_spec));
      BitStream a = streamspec_parse(stream_spec, &err);
      ReaRun run = construction_one(op, a, i_max, cap, !no_truncate);
      emit(out, run.to_json());
      return 0;
    }
    if (lift_cmd->parsed()) {
      EnumerationOperator op =
          EnumerationOperator::from_json(load_json_arg(op_spec));
      BitStream a = streamspec_parse(stream_spec, &err);
      LevelTest test = LevelTest::from_json(load_json_arg(test_path));
      GranularityTable t = make_table(test.measure, depth, tight);
      ReaRun run = construction_one(op, a, i_max, cap, true);
      LiftResult res = lift_test(test, op, a, run.c_with_peek(), t);
      emit(out, res.to_json());
      return res.bound_violations == 0 ? 0 : 1;
    }
    if (sm_build->parsed()) {
      ModulusFunction f = modulusspec_parse(modulus_spec);
      BitStream a = streamspec_parse(stream_spec, &err);
      SelfModRun run = construction_two(f, a, blocks);
      emit(out, run.to_json());
      return 0;
    }
    if (sm_tk->parsed()) {
      MeasurePtr mu = measurespec_parse(measure_spec);
      GranularityTable t = make_table(mu, depth, tight);
      LevelTest test = tk_enumerate(mu, t, level, sigma_max);
      WeightBound bound =
          tk_weight_bound(level, std::max<std::size_t>(sigma_max, 10), t);
      nlohmann::json j{{"test", test.to_json()},
                       {"bound_hi", bound.hi.str()},
                       {"weight_sum_hi", test.weight_sum.hi.str()}};
      emit(out, j);
      return test.weight_sum.hi <= bound.hi ? 0 : 1;
    }
    if (sm_failures->parsed()) {
      ModulusFunction f = modulusspec_parse(modulus_spec);
      BitStream a = streamspec_parse(stream_spec, &err);
      SelfModRun run = construction_two(f, a, blocks);
      GranularityTable t = lebesgue_tight_table(depth, depth);
      FailureReport rep = failure_indices(run, t, level);
      emit(out, rep.to_json());
      for (const auto& w : rep.witnesses)
        if (!w.prefix_verified || !w.tk_member_verified) return 1;
      return 0;
    }
    if (sm_generic->parsed()) {
      ModulusFunction f = modulusspec_parse(modulus_spec);
      BitStream a = streamspec_parse(stream_spec, &err);
      std::vector<DenseSetEnumerator> dense;
      if (!dense_path.empty())
        dense = dense_sets_from_json(load_json_arg(dense_path));
      GenericRun run = weakly_generic_build(f, a, dense, blocks);
      emit(out, run.to_json());
      return 0;
    }
    if (classify_cmd->parsed()) {
      ModulusFunction f = modulusspec_parse(modulus_spec);
      BitString sigma = BitString::from_string(sigma_text);
      SMembership m = nscr_S_membership(f, sigma);
      MeasurePtr mu = perfect_set_measure(f);
      emit(out, nlohmann::json{{"sigma", sigma.str()},
                               {"on_tree", m.on_tree},
                               {"completed_blocks", m.completed_blocks},
                               {"mass", mu->mass(sigma).str()}});
      return 0;
    }
    if (verify_cmd->parsed()) {
      VerifyReport report;
      if (suite == "all") {
        report = verify_all(depth, seed);
      } else if (suite == "core") {
        report.suites.push_back(verify_core());
      } else if (suite == "weights") {
        report.suites.push_back(verify_weights());
      } else if (suite == "roundtrips") {
        report.suites.push_back(verify_round_trips(seed));
      } else if (suite == "measures") {
        for (const auto& mu : verification_corpus(seed))
          report.suites.push_back(verify_measure_axioms(mu, depth));
      } else {  // granularity
        for (const auto& mu : verification_corpus(seed)) {
          GranularityTable t = build_table(mu, depth, depth);
          report.suites.push_back(verify_fact_gh(t));
          report.suites.push_back(verify_approx_bounds(t));
        }
      }
      emit(out, report.to_json());
      return report.passed() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand executed\n";
  return 2;
}

}  // namespace ncr
