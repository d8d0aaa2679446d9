#include "twospace/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twospace/montecarlo.hpp"
#include "twospace/paradox.hpp"
#include "twospace/report.hpp"

namespace twospace {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 3;

struct UsageError : Error {
  using Error::Error;
};

OutputFormat parse_format(const std::string& name) {
  if (name == "human")
    return OutputFormat::Human;
  if (name == "json")
    return OutputFormat::Json;
  if (name == "csv")
    return OutputFormat::Csv;
  throw UsageError("unknown format '" + name + "'");
}

Rational parse_flag_rational(const std::string& text, const std::string& flag) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw UsageError("flag " + flag + ": bad rational '" + text + "'");
  }
}

Rational parse_unit_rational(const std::string& text, const std::string& flag) {
  const Rational value = parse_flag_rational(text, flag);
  if (value < Rational(0) || value > Rational(1))
    throw UsageError("flag " + flag + ": value " + value.str() + " outside [0,1]");
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StrategySpec make_spec(Strategy kind, Fallback fallback, const Rational& lambda) {
  StrategySpec spec;
  spec.kind = kind;
  spec.fallback = fallback;
  spec.lambda = lambda;
  return spec;
}

std::vector<StrategySpec> strategies_for(const std::string& name,
                                         Fallback fallback,
                                         const Rational& lambda) {
  if (name == "all") {
    std::vector<StrategySpec> all;
    for (Strategy kind :
         {Strategy::AssumeS1, Strategy::AssumeS2, Strategy::Mixed,
          Strategy::BayesOptimal, Strategy::ReceiverEmulation,
          Strategy::TripleSampling})
      all.push_back(make_spec(kind, fallback, lambda));
    return all;
  }
  const auto kind = strategy_from_string(name);
  if (!kind)
    throw UsageError("unknown strategy '" + name + "'");
  return {make_spec(*kind, fallback, lambda)};
}

Fallback parse_fallback(const std::string& name) {
  if (name == "abstain")
    return Fallback::Abstain;
  if (name == "uniform")
    return Fallback::UniformGuess;
  throw UsageError("unknown fallback '" + name + "'");
}

std::optional<TwoChildCondition> parse_two_child_variant(const std::string& v) {
  if (v == "younger-boy")
    return TwoChildCondition{TwoChildVariant::YoungerBoy, std::nullopt};
  if (v == "at-least-one-boy")
    return TwoChildCondition{TwoChildVariant::AtLeastOneBoy, std::nullopt};
  for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
    const std::string day = kWeekdayNames[i];
    if (v == "younger-boy-" + day)
      return TwoChildCondition{TwoChildVariant::YoungerBoyBornOnDay,
                               static_cast<Weekday>(i)};
    if (v == "at-least-one-boy-" + day)
      return TwoChildCondition{TwoChildVariant::AtLeastOneBoyBornOnDay,
                               static_cast<Weekday>(i)};
  }
  return std::nullopt;
}

std::string decimal_str(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", r.to_double());
  return buf;
}

void emit_single_value(std::ostream& out, OutputFormat format,
                       const std::string& what, const Rational& value,
                       const std::vector<std::pair<std::string, std::string>>& extras) {
  switch (format) {
  case OutputFormat::Human:
    out << value.str() << " (" << decimal_str(value) << ")\n";
    return;
  case OutputFormat::Json: {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["paradox"] = what;
    for (const auto& [k, v] : extras)
      j[k] = v;
    j["value"] = value.str();
    j["value_dec"] = value.to_double();
    out << j.dump(2) << "\n";
    return;
  }
  case OutputFormat::Csv:
    out << "item,value,decimal\n"
        << what << "," << value.str() << "," << decimal_str(value) << "\n";
    return;
  }
}

int run_analyze(const std::string& path, const std::string& strategy_name,
                Fallback fallback, const Rational& lambda, OutputFormat format,
                std::ostream& out) {
  const std::string bytes = read_file(path);
  const SchemeInstance scheme = parse_scheme_json(bytes);
  const auto strategies = strategies_for(strategy_name, fallback, lambda);
  const AnalysisReport report =
      analyze_scheme(scheme, strategies, content_digest(bytes));
  out << render_analysis(report, format);
  return report.valid() ? kExitOk : kExitValidation;
}

int run_simulate(const std::string& path, const std::string& strategy_name,
                 Fallback fallback, const Rational& lambda,
                 std::uint64_t trials, std::uint64_t seed,
                 const Rational& confidence, OutputFormat format,
                 std::ostream& out) {
  if (strategy_name == "all")
    throw UsageError("simulate needs a single strategy, not 'all'");
  const auto kind = strategy_from_string(strategy_name);
  if (!kind)
    throw UsageError("unknown strategy '" + strategy_name + "'");

  const std::string bytes = read_file(path);
  const SchemeInstance scheme = parse_scheme_json(bytes);
  SimConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.strategy = make_spec(*kind, fallback, lambda);
  cfg.confidence = confidence;
  const SimResult result = simulate_scheme(scheme, cfg);
  out << render_simulation(scheme, cfg.strategy, result, format);
  return kExitOk;
}

int run_simpson(const std::string& table_path, OutputFormat format,
                std::ostream& out) {
  const StratifiedTable table = parse_stratified_csv(read_file(table_path));
  const SimpsonReport report = simpson_check(table);

  switch (format) {
  case OutputFormat::Human: {
    for (std::size_t i = 0; i < table.strata.size(); ++i) {
      const auto& s = table.strata[i];
      out << "stratum " << s.name << ": " << to_string(report.per_stratum[i].second)
          << " (" << s.success_a << "/" << s.total_a << " vs " << s.success_b << "/"
          << s.total_b << ")\n";
    }
    out << "aggregate: " << to_string(report.aggregate) << "\n";
    out << "reversal: " << (report.reversal ? "true" : "false") << "\n";
    return kExitOk;
  }
  case OutputFormat::Json: {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["paradox"] = "simpson";
    nlohmann::ordered_json strata = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < table.strata.size(); ++i) {
      const auto& s = table.strata[i];
      nlohmann::ordered_json sj;
      sj["name"] = s.name;
      sj["rate_a"] = Rational(s.success_a, s.total_a).str();
      sj["rate_a_dec"] = Rational(s.success_a, s.total_a).to_double();
      sj["rate_b"] = Rational(s.success_b, s.total_b).str();
      sj["rate_b_dec"] = Rational(s.success_b, s.total_b).to_double();
      sj["direction"] = to_string(report.per_stratum[i].second);
      strata.push_back(std::move(sj));
    }
    j["per_stratum"] = std::move(strata);
    j["aggregate"] = to_string(report.aggregate);
    j["reversal"] = report.reversal;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  case OutputFormat::Csv: {
    out << "stratum,direction\n";
    for (const auto& [name, dir] : report.per_stratum)
      out << name << "," << to_string(dir) << "\n";
    out << "aggregate," << to_string(report.aggregate) << "\n";
    out << "reversal," << (report.reversal ? "true" : "false") << "\n";
    return kExitOk;
  }
  }
  throw Error("run_simpson: unknown format");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact analyzer and simulator for two-space bit-transmission schemes"};
  app.require_subcommand(1);

  std::string path, strategy = "all", fallback_name = "abstain";
  std::string lambda_text = "1/2", confidence_text = "999/1000";
  std::string format_name = "human";

  auto* analyze = app.add_subcommand("analyze", "Exact analysis of a scheme file");
  analyze->add_option("path", path, "scheme JSON file")->required();
  analyze->add_option("--strategy", strategy, "all or a single strategy name");
  analyze->add_option("--fallback", fallback_name, "abstain|uniform");
  analyze->add_option("--lambda", lambda_text, "mixing weight for 'mixed'");
  analyze->add_option("--format", format_name, "human|json|csv");

  auto* paradox = app.add_subcommand("paradox", "Worked probability examples");
  paradox->require_subcommand(1);
  int doors = 3;
  std::string monty_strategy = "switch", variant, table_path;
  auto* monty = paradox->add_subcommand("monty-hall", "stay-or-switch win probability");
  monty->add_option("--doors", doors, "number of doors (>= 3)");
  monty->add_option("--strategy", monty_strategy, "stay|switch");
  monty->add_option("--format", format_name, "human|json|csv");
  auto* two_child_cmd = paradox->add_subcommand("two-child", "two-child family puzzles");
  two_child_cmd->add_option("--variant", variant, "condition variant")->required();
  two_child_cmd->add_option("--format", format_name, "human|json|csv");
  auto* simpson = paradox->add_subcommand("simpson", "stratified-rate reversal check");
  simpson->add_option("--table", table_path, "stratified CSV table")->required();
  simpson->add_option("--format", format_name, "human|json|csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo cross-check");
  simulate->add_option("path", path, "scheme JSON file")->required();
  simulate->add_option("--strategy", strategy, "strategy to simulate")->required();
  simulate->add_option("--fallback", fallback_name, "abstain|uniform");
  simulate->add_option("--lambda", lambda_text, "mixing weight for 'mixed'");
  std::uint64_t trials = 1000000, seed = SimConfig::kDefaultSeed;
  simulate->add_option("--trials", trials, "number of trials");
  simulate->add_option("--seed", seed, "PRNG seed");
  simulate->add_option("--confidence", confidence_text, "Hoeffding confidence");
  simulate->add_option("--format", format_name, "human|json|csv");

  std::vector<const char*> argv;
  argv.push_back("twospace");
  for (const auto& a : args)
    argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const OutputFormat format = parse_format(format_name);
    const Fallback fallback = parse_fallback(fallback_name);
    const Rational lambda = parse_unit_rational(lambda_text, "--lambda");

    if (*analyze)
      return run_analyze(path, strategy, fallback, lambda, format, out);
    if (*monty) {
      if (monty_strategy != "stay" && monty_strategy != "switch")
        throw UsageError("unknown monty-hall strategy '" + monty_strategy + "'");
      const Rational value = monty_hall(
          doors, monty_strategy == "stay" ? MontyStrategy::Stay : MontyStrategy::Switch);
      emit_single_value(out, format, "monty-hall", value,
                        {{"doors", std::to_string(doors)}, {"strategy", monty_strategy}});
      return kExitOk;
    }
    if (*two_child_cmd) {
      const auto cond = parse_two_child_variant(variant);
      if (!cond)
        throw UsageError("unknown two-child variant '" + variant + "'");
      emit_single_value(out, format, "two-child", two_child(*cond),
                        {{"variant", variant}});
      return kExitOk;
    }
    if (*simpson)
      return run_simpson(table_path, format, out);
    if (*simulate) {
      const Rational confidence = parse_unit_rational(confidence_text, "--confidence");
      return run_simulate(path, strategy, fallback, lambda, trials, seed, confidence,
                          format, out);
    }
    throw UsageError("no subcommand selected");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

} // namespace twospace
