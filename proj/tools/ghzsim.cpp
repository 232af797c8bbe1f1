#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghz/lhv.hpp"
#include "ghz/paradox.hpp"
#include "ghz/quantum.hpp"
#include "ghz/serialize.hpp"

namespace {

using ghz::Complex;
using ghz::OrderedJson;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CommonOptions {
  std::string format = "table";
  std::string out_path;
  std::uint64_t cap = 0;  // 0 means per-operation default
  std::uint64_t seed = 12345;
};

void add_common_options(CLI::App* cmd, CommonOptions* options) {
  cmd->add_option("--format", options->format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  cmd->add_option("--out", options->out_path, "Write the report to a file instead of stdout");
  cmd->add_option("--cap", options->cap, "Enumeration cap override");
  cmd->add_option("--seed", options->seed, "Seed for randomized self-tests")
      ->capture_default_str();
}

std::uint64_t outcome_cap(const CommonOptions& options) {
  return options.cap ? options.cap : ghz::kDefaultOutcomeCap;
}

std::uint64_t strategy_cap(const CommonOptions& options) {
  return options.cap ? options.cap : ghz::kDefaultStrategyCap;
}

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

void emit(const CommonOptions& options, const OrderedJson& report, const std::string& table) {
  std::string text =
      options.format == "json" ? report.dump(2) + "\n" : table;
  if (options.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(options.out_path);
  if (!file) throw std::invalid_argument("cannot open output file " + options.out_path);
  file << text;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::stringstream stream(text);
  while (std::getline(stream, item, ',')) {
    std::size_t first = item.find_first_not_of(" \t");
    std::size_t last = item.find_last_not_of(" \t");
    items.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
  }
  return items;
}

std::string describe_bell(const ghz::BellValue& value) {
  return "gamma_" + std::to_string(value.order) + "^" + std::to_string(value.exponent) +
         " = " + ghz::format_complex(value.value());
}

// ---------------------------------------------------------------- correlate

ghz::ExperimentConfig config_from_flags(int dim, std::optional<int> parties,
                                        const std::vector<std::string>& sets) {
  ghz::ExperimentConfig config;
  config.dim = dim;
  config.parties = parties ? *parties : static_cast<int>(sets.size());
  for (const std::string& set : sets) {
    ghz::LocalSetting setting;
    for (const std::string& item : split_list(set)) setting.phases.push_back(ghz::Turn::parse(item));
    config.settings.push_back(std::move(setting));
  }
  config.validate();
  return config;
}

int run_correlate(const ghz::ExperimentConfig& config, const CommonOptions& options) {
  Timer timer;
  Complex closed = ghz::correlation_closed(config);
  std::optional<ghz::BellValue> perfect = ghz::perfect_correlation_value(config);

  std::optional<Complex> direct;
  std::vector<ghz::OutcomeProbability> distribution;
  std::string omission;
  try {
    direct = ghz::correlation_direct(config, outcome_cap(options));
    distribution = ghz::outcome_distribution(config, outcome_cap(options));
  } catch (const ghz::EnumerationCapExceeded& e) {
    omission = e.what();
  }

  std::optional<int> exponent;
  if (perfect) exponent = perfect->exponent;

  OrderedJson outputs;
  outputs["correlation_closed"] = ghz::complex_to_json(closed, config.dim, exponent);
  if (perfect) {
    outputs["perfect_correlation"] =
        OrderedJson{{"exponent", perfect->exponent}, {"order", perfect->order}};
  } else {
    outputs["perfect_correlation"] = nullptr;
  }
  if (direct) {
    outputs["correlation_direct"] = ghz::complex_to_json(*direct, config.dim, exponent);
    OrderedJson rows = OrderedJson::array();
    for (const ghz::OutcomeProbability& entry : distribution)
      rows.push_back(OrderedJson{{"outcome", entry.outcome.detectors},
                                 {"probability", ghz::round_significant(entry.probability)}});
    outputs["distribution"] = std::move(rows);
  } else {
    outputs["enumeration_omitted"] = omission;
  }

  OrderedJson report;
  report["command"] = "correlate";
  report["inputs"] = ghz::config_to_json(config);
  report["outputs"] = std::move(outputs);
  report["timing_ms"] = ghz::round_significant(timer.elapsed_ms());

  std::ostringstream table;
  table << "correlate: dim=" << config.dim << " parties=" << config.parties << "\n";
  for (int l = 0; l < config.parties; ++l) {
    table << "  party " << (l + 1) << ":";
    for (const ghz::Turn& phase : config.settings[l].phases) table << " " << phase.str();
    table << "\n";
  }
  table << "correlation (closed form)  " << ghz::format_complex(closed) << "\n";
  if (perfect)
    table << "perfect correlation        " << describe_bell(*perfect) << "\n";
  else
    table << "perfect correlation        none (|E| < 1)\n";
  if (direct) {
    table << "correlation (enumerated)   " << ghz::format_complex(*direct) << "\n";
    table << "distribution (" << distribution.size() << " outcomes):\n";
    for (const ghz::OutcomeProbability& entry : distribution) {
      table << "  (";
      for (std::size_t i = 0; i < entry.outcome.detectors.size(); ++i)
        table << (i ? "," : "") << entry.outcome.detectors[i];
      char buffer[32];
      std::snprintf(buffer, sizeof buffer, "%.12f", entry.probability);
      table << ")  " << buffer << "\n";
    }
  } else {
    table << "enumeration omitted: " << omission << "\n";
  }

  emit(options, report, table.str());
  return kExitOk;
}

// ------------------------------------------------------------------ paradox

OrderedJson certificate_to_json(const ghz::ParadoxCertificate& cert) {
  OrderedJson doc;
  doc["dim"] = cert.dim;
  OrderedJson phi = OrderedJson::array(), phi_prime = OrderedJson::array();
  for (const ghz::Turn& t : cert.settings.phi.phases) phi.push_back(t.str());
  for (const ghz::Turn& t : cert.settings.phi_prime.phases) phi_prime.push_back(t.str());
  doc["settings"] = OrderedJson{{"phi", phi}, {"phi_prime", phi_prime}};
  OrderedJson configs = OrderedJson::array();
  for (const ghz::ExperimentConfig& config : cert.constraint_configs)
    configs.push_back(ghz::config_to_json(config));
  doc["constraint_configs"] = std::move(configs);
  doc["constraint_value"] = ghz::complex_to_json(cert.constraint_value.value(), cert.dim,
                                                 cert.constraint_value.exponent);
  doc["lhv_forced_value"] = ghz::complex_to_json(cert.lhv_forced_value.value(), cert.dim,
                                                 cert.lhv_forced_value.exponent);
  std::optional<int> probe_exponent;
  std::optional<ghz::BellValue> probe_perfect;
  {
    ghz::ExperimentConfig all_phi;
    all_phi.dim = cert.dim;
    all_phi.parties = cert.dim;
    all_phi.settings.assign(static_cast<std::size_t>(cert.dim), cert.settings.phi);
    probe_perfect = ghz::perfect_correlation_value(all_phi);
    if (probe_perfect) probe_exponent = probe_perfect->exponent;
  }
  doc["quantum_probe_value"] =
      ghz::complex_to_json(cert.quantum_probe_value, cert.dim, probe_exponent);
  doc["discrepancy"] = ghz::round_significant(cert.discrepancy);
  return doc;
}

std::string certificate_table(const ghz::ParadoxCertificate& cert) {
  std::ostringstream table;
  table << "paradox certificate, dim = parties = " << cert.dim << " ("
        << (cert.dim % 2 ? "odd" : "even") << ")\n";
  table << "  phi       =";
  for (const ghz::Turn& t : cert.settings.phi.phases) table << " " << t.str();
  table << "\n  phi'      = all zeros\n";
  table << "  constraints: " << cert.dim << " single-phi' rotations + all-phi' baseline\n";
  table << "  constraint value   " << describe_bell(cert.constraint_value) << "\n";
  table << "  baseline value     " << describe_bell(ghz::BellValue{0, cert.dim}) << "\n";
  table << "  LHV forced value   " << describe_bell(cert.lhv_forced_value) << "\n";
  table << "  quantum probe      " << ghz::format_complex(cert.quantum_probe_value) << "\n";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", cert.discrepancy);
  table << "  discrepancy        " << buffer << "\n";
  return table.str();
}

int run_paradox(int n, const CommonOptions& options) {
  Timer timer;
  ghz::ParadoxCertificate cert = ghz::build_certificate(n, strategy_cap(options));

  OrderedJson report;
  report["command"] = "paradox";
  report["inputs"] = OrderedJson{{"n", n}};
  report["outputs"] = certificate_to_json(cert);
  report["timing_ms"] = ghz::round_significant(timer.elapsed_ms());

  emit(options, report, certificate_table(cert));
  return cert.discrepancy > 0.0 ? kExitOk : kExitInternal;
}

// --------------------------------------------------------------------- scan

int run_scan(int n_min, int n_max, int limit, const CommonOptions& options) {
  Timer timer;
  std::vector<ghz::ParadoxCertificate> certificates =
      ghz::scan(n_min, n_max, limit, strategy_cap(options));

  OrderedJson rows = OrderedJson::array();
  for (const ghz::ParadoxCertificate& cert : certificates) {
    OrderedJson row;
    row["n"] = cert.dim;
    row["parity"] = cert.dim % 2 ? "odd" : "even";
    row["constraint_value"] = ghz::complex_to_json(cert.constraint_value.value(), cert.dim,
                                                   cert.constraint_value.exponent);
    row["lhv_forced_value"] = ghz::complex_to_json(cert.lhv_forced_value.value(), cert.dim,
                                                   cert.lhv_forced_value.exponent);
    row["quantum_probe_value"] = ghz::complex_to_json(cert.quantum_probe_value, cert.dim,
                                                      std::nullopt);
    row["discrepancy"] = ghz::round_significant(cert.discrepancy);
    rows.push_back(std::move(row));
  }

  OrderedJson report;
  report["command"] = "scan";
  report["inputs"] = OrderedJson{{"min", n_min}, {"max", n_max}};
  report["outputs"] = OrderedJson{{"rows", std::move(rows)}};
  report["timing_ms"] = ghz::round_significant(timer.elapsed_ms());

  std::ostringstream table;
  table << "  n parity  constraint value                      quantum probe value          "
           "       discrepancy\n";
  for (const ghz::ParadoxCertificate& cert : certificates) {
    char line[256];
    std::string constraint = describe_bell(cert.constraint_value);
    std::snprintf(line, sizeof line, "%3d %-6s  %-36s  %-33s  %.9f\n", cert.dim,
                  cert.dim % 2 ? "odd" : "even", constraint.c_str(),
                  ghz::format_complex(cert.quantum_probe_value).c_str(), cert.discrepancy);
    table << line;
  }

  emit(options, report, table.str());
  return kExitOk;
}

// ---------------------------------------------------------------------- lhv

int run_lhv(const std::string& path, const std::string& probe_override,
            const CommonOptions& options) {
  Timer timer;
  ghz::LhvProblem problem = ghz::lhv_problem_from_json(
      ghz::parse_json_text(read_file(path), path));
  if (!probe_override.empty()) problem.probe = split_list(probe_override);

  ghz::CongruenceSystem system =
      ghz::to_congruences(problem.dim, problem.parties, problem.menu, problem.constraints);
  ghz::SolutionSet solution = ghz::solve_congruences(system);

  // achievable_values cross-checks itself against enumeration under the cap
  std::set<int> achievable =
      ghz::achievable_values(problem.dim, problem.parties, problem.menu, problem.constraints,
                             problem.probe, strategy_cap(options));

  std::string cross_check = "skipped (strategy space above cap)";
  try {
    std::uint64_t enumerated = ghz::count_consistent(problem.dim, problem.parties, problem.menu,
                                                     problem.constraints, strategy_cap(options));
    if (solution.count.fits_uint64() && solution.count.as_uint64() != enumerated)
      throw std::logic_error("lhv: solver and enumeration disagree on the solution count");
    cross_check = "enumerated";
  } catch (const ghz::EnumerationCapExceeded&) {
  }

  OrderedJson outputs;
  outputs["status"] = solution.consistent ? "consistent" : "inconsistent";
  outputs["solution_count"] = solution.count.decimal();
  outputs["achievable_exponents"] = achievable;
  outputs["order"] = problem.dim;
  outputs["cross_check"] = cross_check;

  OrderedJson report;
  report["command"] = "lhv";
  report["inputs"] = ghz::lhv_problem_to_json(problem);
  report["outputs"] = std::move(outputs);
  report["timing_ms"] = ghz::round_significant(timer.elapsed_ms());

  std::ostringstream table;
  table << "lhv: dim=" << problem.dim << " parties=" << problem.parties << " constraints="
        << problem.constraints.size() << "\n";
  table << "  status            " << (solution.consistent ? "consistent" : "inconsistent")
        << "\n";
  table << "  solution count    " << solution.count.decimal() << "\n";
  table << "  achievable probe values:";
  if (achievable.empty()) table << " (none)";
  for (int e : achievable) table << " " << describe_bell(ghz::BellValue{e, problem.dim});
  table << "\n  cross check       " << cross_check << "\n";

  emit(options, report, table.str());
  return kExitOk;
}

// ----------------------------------------------------------------- selftest

ghz::Turn random_turn(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, 12);
  std::int64_t den = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(0, den - 1);
  return ghz::Turn::fraction(num_dist(rng), den);
}

ghz::ExperimentConfig random_config(std::mt19937_64& rng, int max_dim, int max_parties) {
  std::uniform_int_distribution<int> dim_dist(2, max_dim);
  std::uniform_int_distribution<int> party_dist(1, max_parties);
  ghz::ExperimentConfig config;
  config.dim = dim_dist(rng);
  config.parties = party_dist(rng);
  for (int l = 0; l < config.parties; ++l) {
    ghz::LocalSetting setting;
    for (int j = 0; j < config.dim; ++j) setting.phases.push_back(random_turn(rng));
    config.settings.push_back(std::move(setting));
  }
  return config;
}

int run_selftest(int cases, const CommonOptions& options) {
  Timer timer;
  std::mt19937_64 rng(options.seed);
  double worst_pair = 0.0, worst_norm = 0.0, worst_cosine = 0.0;
  int failures = 0;

  for (int i = 0; i < cases; ++i) {
    ghz::ExperimentConfig config = random_config(rng, 5, 5);
    Complex direct = ghz::correlation_direct(config, outcome_cap(options));
    Complex closed = ghz::correlation_closed(config);
    worst_pair = std::max(worst_pair, std::abs(direct - closed));
    double total = 0.0;
    for (const ghz::OutcomeProbability& entry :
         ghz::outcome_distribution(config, outcome_cap(options)))
      total += entry.probability;
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
  }
  if (worst_pair > 1e-9 || worst_norm > 1e-9) ++failures;

  for (int i = 0; i < cases; ++i) {
    ghz::ExperimentConfig config = random_config(rng, 2, 6);
    ghz::Turn sum;
    for (const ghz::LocalSetting& setting : config.settings)
      sum += setting.phases[0] - setting.phases[1];
    double cosine = sum.to_complex().real();
    worst_cosine =
        std::max(worst_cosine, std::abs(ghz::correlation_closed(config) - Complex(cosine, 0)));
  }
  if (worst_cosine > 1e-12) ++failures;

  OrderedJson outputs;
  outputs["cases"] = cases;
  outputs["max_direct_vs_closed"] = ghz::round_significant(worst_pair);
  outputs["max_distribution_defect"] = ghz::round_significant(worst_norm);
  outputs["max_qubit_cosine_defect"] = ghz::round_significant(worst_cosine);
  outputs["result"] = failures == 0 ? "pass" : "fail";

  OrderedJson report;
  report["command"] = "selftest";
  report["inputs"] = OrderedJson{{"seed", options.seed}, {"cases", cases}};
  report["outputs"] = std::move(outputs);
  report["timing_ms"] = ghz::round_significant(timer.elapsed_ms());

  std::ostringstream table;
  table << "selftest: " << cases << " randomized configurations, seed " << options.seed << "\n";
  table << "  max |direct - closed|        " << worst_pair << "\n";
  table << "  max |sum(P) - 1|             " << worst_norm << "\n";
  table << "  max qubit cosine deviation   " << worst_cosine << "\n";
  table << "  result: " << (failures == 0 ? "pass" : "FAIL") << "\n";

  emit(options, report, table.str());
  return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and local-realism certifier for N-party multiport GHZ experiments"};
  app.require_subcommand(1);

  CommonOptions options;

  auto* correlate = app.add_subcommand(
      "correlate", "Correlation function and outcome distribution of a configuration");
  std::string config_path;
  int dim = 0;
  std::optional<int> parties;
  std::vector<std::string> sets;
  auto* config_opt =
      correlate->add_option("--config", config_path, "Configuration file (JSON)");
  auto* dim_opt = correlate->add_option("--dim", dim, "Ports per party (N)");
  correlate->add_option("--parties", parties, "Party count (defaults to the number of --set)");
  auto* set_opt = correlate->add_option(
      "--set", sets, "One party's phases as N comma-separated turn fractions (repeatable)");
  config_opt->excludes(dim_opt)->excludes(set_opt);
  add_common_options(correlate, &options);

  auto* paradox = app.add_subcommand("paradox", "Certify the N-observer contradiction");
  int paradox_n = 0;
  paradox->add_option("--n", paradox_n, "Dimension = party count (>= 3)")->required();
  add_common_options(paradox, &options);

  auto* scan = app.add_subcommand("scan", "Certificates for every dimension in a range");
  int scan_min = 3, scan_max = 3, scan_limit = ghz::kDefaultScanLimit;
  scan->add_option("--min", scan_min, "Smallest dimension")->required();
  scan->add_option("--max", scan_max, "Largest dimension")->required();
  scan->add_option("--limit", scan_limit, "Upper bound on --max")->capture_default_str();
  add_common_options(scan, &options);

  auto* lhv = app.add_subcommand("lhv", "Solve a local-strategy constraint system");
  std::string constraints_path, probe_override;
  lhv->add_option("--constraints", constraints_path, "Constraint file (JSON)")->required();
  lhv->add_option("--probe", probe_override,
                  "Override the file's probe (comma-separated labels)");
  add_common_options(lhv, &options);

  auto* selftest = app.add_subcommand("selftest", "Randomized consistency checks");
  int cases = 100;
  selftest->add_option("--cases", cases, "Cases per check")->capture_default_str();
  add_common_options(selftest, &options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (correlate->parsed()) {
      ghz::ExperimentConfig config;
      if (!config_path.empty()) {
        config = ghz::config_from_json(ghz::parse_json_text(read_file(config_path), config_path));
      } else if (dim > 0 && !sets.empty()) {
        config = config_from_flags(dim, parties, sets);
      } else {
        throw std::invalid_argument("correlate needs --config or --dim with --set flags");
      }
      return run_correlate(config, options);
    }
    if (paradox->parsed()) return run_paradox(paradox_n, options);
    if (scan->parsed()) return run_scan(scan_min, scan_max, scan_limit, options);
    if (lhv->parsed()) return run_lhv(constraints_path, probe_override, options);
    if (selftest->parsed()) return run_selftest(cases, options);
    throw std::logic_error("no subcommand dispatched");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
