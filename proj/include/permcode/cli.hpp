#pragma once

// Command-line front end. Parsing and dispatch live here so they can be
// exercised without spawning a process; tools/permcode.cpp is a thin main().

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permcode/asymptotics.hpp"
#include "permcode/coding.hpp"
#include "permcode/errors.hpp"
#include "permcode/qsim.hpp"
#include "permcode/report_io.hpp"
#include "permcode/young.hpp"

namespace permcode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInternal = 2;

enum class Command { Pmax, Classical, Sweep, Sample, Verify, Bounds };
enum class Format { Csv, Json, Table };

struct RunConfig {
  Command command = Command::Pmax;
  int n = 0;
  int d = 0;
  double r = 0.0;
  std::vector<int> n_list;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  int cap = young::kDefaultEnumerationCap;
  std::string output_path;
  Format format = Format::Table;

  std::string method = "auto";       // pmax: auto | exact | plancherel | schur-weyl
  std::uint64_t trials = 0;          // classical: Monte Carlo trials, 0 = exact only
  std::string measure = "plancherel";  // sample
  std::string suite = "all";         // verify: n3 | symmetrize | orthogonality | all
  std::string kind = "kerov";        // bounds: kerov | kerov-row | erdos | lemma1 | lemma2
  double a_threshold = 2.0;
  double erdos_c = asymptotics::kHardyRamanujanC;
};

struct RunResult {
  int exit_status = kExitOk;
  std::string output;
  std::string error;
};

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Pmax: return "pmax";
    case Command::Classical: return "classical";
    case Command::Sweep: return "sweep";
    case Command::Sample: return "sample";
    case Command::Verify: return "verify";
    case Command::Bounds: return "bounds";
  }
  return "?";
}

/// Enumeration cap from PERMCODE_CAP, falling back to the default.
inline int cap_from_environment(const char* value) {
  if (value == nullptr || *value == '\0') return young::kDefaultEnumerationCap;
  try {
    std::size_t used = 0;
    const int cap = std::stoi(value, &used);
    if (used == std::string(value).size() && cap >= 1) return cap;
  } catch (const std::exception&) {
  }
  throw DomainError(std::string("PERMCODE_CAP must be a positive integer, got '") + value + "'");
}

namespace detail {

class Writer {
public:
  Writer(const RunConfig& config, std::string method) : config_(config), method_(std::move(method)) {}

  /// Metadata as '#' comment lines (csv/table).
  std::string header() const {
    std::ostringstream out;
    out << "# permcode " << io::kVersion << " command=" << command_name(config_.command) << " method=" << method_
        << " cap=" << config_.cap << " seed=" << config_.seed << '\n';
    return out.str();
  }

  nlohmann::json metadata() const {
    return {{"version", io::kVersion},
            {"command", command_name(config_.command)},
            {"method", method_},
            {"cap", config_.cap},
            {"seed", config_.seed}};
  }

  std::string json(nlohmann::json body) const {
    nlohmann::json doc{{"metadata", metadata()}};
    for (auto& [key, value] : body.items()) doc[key] = value;
    return doc.dump(2) + "\n";
  }

private:
  const RunConfig& config_;
  std::string method_;
};

inline std::string render_rows(const RunConfig& config, const std::string& method,
                               const std::vector<asymptotics::SweepRow>& rows) {
  Writer writer(config, method);
  if (config.format == Format::Json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& row : rows) list.push_back(io::to_json(row));
    return writer.json({{"rows", list}});
  }
  std::ostringstream out;
  out << writer.header() << io::kSweepCsvHeader << '\n';
  for (const auto& row : rows) out << io::sweep_csv_row(row) << '\n';
  return out.str();
}

inline std::string run_pmax(const RunConfig& config) {
  const coding::CodingInstance instance(config.n, config.d);
  std::string method = config.method;
  if (method == "auto") {
    if (config.n <= config.cap) method = "exact";
    else method = instance.ratio() > asymptotics::kInverseE ? "plancherel" : "schur-weyl";
  }

  coding::CodingReport report{.instance = instance};
  report.p_classical = coding::classical_success(instance);
  report.p_info_bound = coding::info_bound(instance);
  if (method == "exact") {
    report = coding::quantum_pmax_exact(instance, config.cap);
  } else if (method == "plancherel") {
    report.method = coding::Method::PlancherelMc;
    report.p_quantum_estimate =
        asymptotics::pmax_estimate_plancherel(config.n, config.d, config.samples, config.seed);
  } else {
    report.method = coding::Method::SchurWeylMc;
    const auto estimate = asymptotics::pmax_estimate_schur_weyl(config.n, config.d, config.samples, config.seed);
    if (!estimate.p_max) throw CapacityError("d^N / N! is not representable; use sweep for the ratio");
    report.p_quantum_estimate = *estimate.p_max;
  }

  const std::string method_name(coding::to_string(report.method));
  Writer writer(config, method_name);
  if (config.format == Format::Json) return writer.json({{"report", io::to_json(report)}});
  if (config.format == Format::Csv) return render_rows(config, method_name, {io::sweep_row_from_report(report)});

  std::ostringstream out;
  out << writer.header();
  if (report.p_quantum_exact) {
    out << io::exact_with_decimal(*report.p_quantum_exact) << '\n';
    out << "dim_w        " << report.dim_w->str() << '\n';
    out << "min_side     D<m " << report.sides.dim_smaller << ", D=m " << report.sides.tie << ", m<D "
        << report.sides.mult_smaller << ", m=0 " << report.sides.mult_zero << '\n';
  } else {
    out << io::format_double(report.p_quantum()) << " +- " << io::format_double(report.p_quantum_stderr()) << '\n';
  }
  out << "classical    " << io::exact_with_decimal(report.p_classical) << '\n';
  out << "info_bound   " << io::exact_with_decimal(report.p_info_bound) << '\n';
  return out.str();
}

inline std::string run_classical(const RunConfig& config) {
  const coding::CodingInstance instance(config.n, config.d);
  const Rational exact = coding::classical_success(instance);
  std::optional<coding::Estimate> simulated;
  if (config.trials > 0) simulated = qsim::classical_channel_mc(config.n, config.d, config.trials, config.seed);
  Writer writer(config, config.trials > 0 ? "classical-mc" : "exact");
  if (config.format == Format::Json) {
    nlohmann::json body{{"n", config.n}, {"d", config.d}, {"p_classical", to_fraction_string(exact)}};
    if (simulated) body["simulated"] = {{"trials", config.trials}, {"p", simulated->value}, {"stderr", simulated->std_error}};
    return writer.json(body);
  }
  std::ostringstream out;
  out << writer.header();
  if (config.format == Format::Csv) {
    out << "n,d,p_classical,p_classical_decimal,simulated,simulated_stderr\n"
        << config.n << ',' << config.d << ',' << to_fraction_string(exact) << ',' << to_decimal_string(exact) << ','
        << (simulated ? io::format_double(simulated->value) : "") << ','
        << (simulated ? io::format_double(simulated->std_error) : "") << '\n';
    return out.str();
  }
  out << io::exact_with_decimal(exact) << '\n';
  if (simulated)
    out << "simulated    " << io::format_double(simulated->value) << " +- " << io::format_double(simulated->std_error)
        << " (" << config.trials << " trials)\n";
  return out.str();
}

inline std::string run_sweep(const RunConfig& config) {
  if (config.n_list.empty()) throw DomainError("--n: sweep needs at least one size");
  asymptotics::SweepOptions options{.sample_count = config.samples, .seed = config.seed, .cap = config.cap};
  const auto rows = asymptotics::theorem1_sweep(config.r, config.n_list, options);
  return render_rows(config, "auto", rows);
}

inline std::string run_sample(const RunConfig& config) {
  const bool plancherel = config.measure == "plancherel";
  young::Engine rng(config.seed);
  std::vector<young::YoungDiagram> shapes;
  for (std::uint64_t i = 0; i < config.samples; ++i)
    shapes.push_back(plancherel ? young::sample_plancherel(config.n, rng)
                                : young::sample_schur_weyl(config.n, config.d, rng));
  Writer writer(config, plancherel ? "plancherel-rsk" : "schur-weyl-rsk");
  if (config.format == Format::Json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : shapes) list.push_back(s.rows());
    return writer.json({{"n", config.n}, {"d", config.d}, {"shapes", list}});
  }
  std::ostringstream out;
  out << writer.header();
  if (config.format == Format::Csv) out << "index,shape,first_row,first_column\n";
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (config.format == Format::Csv)
      out << i << ",\"" << shapes[i].to_string() << "\"," << shapes[i].first_row() << ',' << shapes[i].first_column()
          << '\n';
    else
      out << shapes[i].to_string() << '\n';
  }
  return out.str();
}

inline std::vector<qsim::CheckResult> collect_checks(const RunConfig& config) {
  std::vector<qsim::CheckResult> checks;
  auto append = [&](std::vector<qsim::CheckResult> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  if (config.suite == "n3" || config.suite == "all") append(qsim::verify_n3_suite());
  if (config.suite == "orthogonality") {
    const auto ex = qsim::build_n3_example();
    append(qsim::orthogonality_check_n3(ex.basis, ex.phi));
  }
  if (config.suite == "symmetrize" || config.suite == "all")
    append(qsim::verify_symmetrization_suite(3, 2, 20, config.seed));
  return checks;
}

inline std::string render_checks(const RunConfig& config, const std::vector<qsim::CheckResult>& checks) {
  Writer writer(config, "dense-simulation");
  if (config.format == Format::Json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) list.push_back(io::to_json(c));
    return writer.json({{"suite", config.suite}, {"checks", list}});
  }
  std::ostringstream out;
  out << writer.header();
  if (config.format == Format::Csv) out << "check_name,max_residual,tolerance,pass\n";
  for (const auto& c : checks) {
    if (config.format == Format::Csv)
      out << c.check_name << ',' << io::format_double(c.max_residual) << ',' << io::format_double(c.tolerance) << ','
          << (c.pass ? "true" : "false") << '\n';
    else
      out << (c.pass ? "PASS " : "FAIL ") << c.check_name << "  residual " << io::format_double(c.max_residual)
          << " <= " << io::format_double(c.tolerance) << '\n';
  }
  return out.str();
}

inline std::string run_bounds(const RunConfig& config) {
  nlohmann::json body;
  if (config.kind == "kerov") {
    const auto r = asymptotics::kerov_bound_check(config.n, config.cap);
    body = io::to_json(r);
  } else if (config.kind == "kerov-row") {
    const auto r = asymptotics::kerov_row_bound_check(config.n, config.d, config.cap);
    body = io::to_json(r);
  } else if (config.kind == "erdos") {
    const auto r = asymptotics::erdos_bound_check(config.n, config.erdos_c);
    body = io::to_json(r);
  } else {
    const auto r = config.kind == "lemma1" ? asymptotics::lemma1_scan(config.n, config.d, config.a_threshold, config.cap)
                                           : asymptotics::lemma2_scan(config.n, config.d, config.a_threshold, config.cap);
    body = io::to_json(r);
  }
  Writer writer(config, config.kind);
  if (config.format == Format::Json) return writer.json({{"kind", config.kind}, {"report", body}});
  std::ostringstream out;
  out << writer.header();
  if (config.format == Format::Csv) {
    std::string keys, values;
    for (auto& [key, value] : body.items()) {
      if (value.is_array()) continue;
      keys += (keys.empty() ? "" : ",") + key;
      values += (values.empty() ? "" : ",") + (value.is_number_float() ? io::format_double(value.get<double>()) : value.dump());
    }
    out << keys << '\n' << values << '\n';
    return out.str();
  }
  for (auto& [key, value] : body.items()) out << key << " = " << value.dump() << '\n';
  return out.str();
}

}  // namespace detail

/// Executes one command. Validation and capacity problems exit with 1,
/// internal invariant failures (including failed verification checks) with 2.
inline RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    switch (config.command) {
      case Command::Pmax: result.output = detail::run_pmax(config); break;
      case Command::Classical: result.output = detail::run_classical(config); break;
      case Command::Sweep: result.output = detail::run_sweep(config); break;
      case Command::Sample: result.output = detail::run_sample(config); break;
      case Command::Verify: {
        const auto checks = detail::collect_checks(config);
        result.output = detail::render_checks(config, checks);
        for (const auto& c : checks)
          if (!c.pass) result.exit_status = kExitInternal;
        break;
      }
      case Command::Bounds: result.output = detail::run_bounds(config); break;
    }
  } catch (const InvariantError& e) {
    result.exit_status = kExitInternal;
    result.error = std::string("internal invariant failure: ") + e.what();
  } catch (const CapacityError& e) {
    result.exit_status = kExitError;
    result.error = std::string("capacity error: ") + e.what();
  } catch (const DomainError& e) {
    result.exit_status = kExitError;
    result.error = std::string("invalid input: ") + e.what();
  }
  return result;
}

/// Parses argv into a RunConfig; on failure returns a RunResult carrying the
/// usage message and exit status.
struct ParseOutcome {
  std::optional<RunConfig> config;
  RunResult failure;
};

inline ParseOutcome parse_args(int argc, const char* const* argv, const char* cap_env = nullptr) {
  RunConfig config;
  ParseOutcome outcome;
  try {
    config.cap = cap_from_environment(cap_env);
  } catch (const DomainError& e) {
    outcome.failure = {kExitError, "", e.what()};
    return outcome;
  }

  CLI::App app{"Quantum and classical color-coding of permutations: exact success probabilities, "
               "Monte Carlo estimates and dense-matrix verification.",
               "permcode"};
  app.require_subcommand(1, 1);

  const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}, {"table", Format::Table}};
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    sub->add_option("--output", config.output_path, "Write to this path instead of stdout");
    sub->add_option("--cap", config.cap, "Enumeration cap (overrides PERMCODE_CAP)")->check(CLI::Range(1, 200));
    sub->add_option("--seed", config.seed, "Random seed (always recorded in the output)");
  };
  const auto size_range = CLI::Range(1, 100000);

  auto* pmax = app.add_subcommand("pmax", "Optimal quantum success probability");
  pmax->add_option("--n", config.n, "Number of boxes N")->required()->check(size_range);
  pmax->add_option("--d", config.d, "Number of colors d")->required()->check(size_range);
  pmax->add_option("--method", config.method, "Evaluation route")
      ->check(CLI::IsMember({"auto", "exact", "plancherel", "schur-weyl"}));
  pmax->add_option("--samples", config.samples, "Monte Carlo draws")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000'000}));
  add_common(pmax);

  auto* classical = app.add_subcommand("classical", "Optimal classical success probability");
  classical->add_option("--n", config.n, "Number of boxes N")->required()->check(size_range);
  classical->add_option("--d", config.d, "Number of colors d")->required()->check(size_range);
  classical->add_option("--trials", config.trials, "Channel simulation trials (0 = exact only)");
  add_common(classical);

  auto* sweep = app.add_subcommand("sweep", "P_max along d = floor(r N)");
  sweep->add_option("--r", config.r, "Colors per box r")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--n", config.n_list, "Comma-separated sizes N")->required()->delimiter(',')->check(size_range);
  sweep->add_option("--samples", config.samples, "Monte Carlo draws above the cap")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1'000'000'000}));
  add_common(sweep);

  auto* sample = app.add_subcommand("sample", "Draw random Young diagrams by RSK");
  sample->add_option("--n", config.n, "Number of boxes N")->required()->check(size_range);
  sample->add_option("--d", config.d, "Alphabet size for the Schur-Weyl measure")->check(size_range);
  sample->add_option("--measure", config.measure, "Measure")->check(CLI::IsMember({"plancherel", "schur-weyl"}));
  sample->add_option("--samples", config.samples, "Number of diagrams")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100'000'000}));
  add_common(sample);

  auto* verify = app.add_subcommand("verify", "Dense-matrix verification suites");
  verify->add_option("--suite", config.suite, "Suite")->check(CLI::IsMember({"n3", "symmetrize", "orthogonality", "all"}));
  add_common(verify);

  auto* bounds = app.add_subcommand("bounds", "Tail-bound and lemma diagnostics");
  bounds->add_option("--kind", config.kind, "Check")->check(CLI::IsMember({"kerov", "kerov-row", "erdos", "lemma1", "lemma2"}));
  bounds->add_option("--n", config.n, "N (n_max for erdos)")->required()->check(size_range);
  bounds->add_option("--d", config.d, "Number of colors d")->check(size_range);
  bounds->add_option("--a", config.a_threshold, "Threshold multiplier A")->check(CLI::PositiveNumber);
  bounds->add_option("--c", config.erdos_c, "Constant C for the partition-count bound")->check(CLI::PositiveNumber);
  add_common(bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    outcome.failure = {kExitOk, app.help(), ""};
    return outcome;
  } catch (const CLI::CallForAllHelp&) {
    outcome.failure = {kExitOk, app.help("", CLI::AppFormatMode::All), ""};
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.failure = {kExitError, "", std::string(e.what()) + "\nRun with --help for usage."};
    return outcome;
  }

  if (*pmax) config.command = Command::Pmax;
  else if (*classical) config.command = Command::Classical;
  else if (*sweep) config.command = Command::Sweep;
  else if (*sample) config.command = Command::Sample;
  else if (*verify) config.command = Command::Verify;
  else config.command = Command::Bounds;

  const bool needs_d = (config.command == Command::Sample && config.measure == "schur-weyl") ||
                       (config.command == Command::Bounds && config.kind != "kerov" && config.kind != "erdos");
  if (needs_d && config.d < 1) {
    outcome.failure = {kExitError, "", "--d: required here, valid range [1 - 100000]"};
    return outcome;
  }
  outcome.config = config;
  return outcome;
}

}  // namespace permcode::cli
