#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ghz/serialize.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  std::string command = std::string(GHZSIM_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  std::filesystem::path path = std::filesystem::temp_directory_path() / name;
  std::ofstream file(path);
  file << content;
  return path;
}

const char* kQutritConstraints = R"({
  "dim": 3, "parties": 3, "menu": ["phi", "phi_prime"],
  "constraints": [
    {"choice": ["phi", "phi", "phi_prime"], "exponent": 2},
    {"choice": ["phi_prime", "phi", "phi"], "exponent": 2},
    {"choice": ["phi", "phi_prime", "phi"], "exponent": 2},
    {"choice": ["phi_prime", "phi_prime", "phi_prime"], "exponent": 0}
  ],
  "probe": ["phi", "phi", "phi"]
})";

}  // namespace

TEST_CASE("correlate: inline qutrit constraint run") {
  RunResult result = run_cli(
      "correlate --dim 3 --set 0,1/6,1/3 --set 0,1/6,1/3 --set 0,0,0 --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  CHECK(report["command"] == "correlate");
  CHECK(report["outputs"]["correlation_closed"]["re"].get<double>() ==
        doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(report["outputs"]["correlation_closed"]["im"].get<double>() ==
        doctest::Approx(-0.866025403784).epsilon(1e-9));
  CHECK(report["outputs"]["correlation_closed"]["exact_exponent"] == 2);
  CHECK(report["outputs"]["perfect_correlation"]["exponent"] == 2);
  CHECK(report["outputs"]["correlation_direct"]["re"].get<double>() ==
        doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(report["outputs"]["distribution"].size() == 27);

  // the report's inputs are the canonical config and re-parse identically
  ghz::ExperimentConfig echoed = ghz::config_from_json(report["inputs"]);
  ghz::LocalSetting phi{{ghz::Turn{}, ghz::Turn::fraction(1, 6), ghz::Turn::fraction(1, 3)}};
  ghz::LocalSetting phi_prime{std::vector<ghz::Turn>(3)};
  CHECK(echoed == ghz::ExperimentConfig{3, 3, {phi, phi, phi_prime}});
}

TEST_CASE("correlate: config file with no perfect correlation") {
  auto path = write_temp("ghz_all_phi.json",
                         R"({"dim":3,"parties":3,"settings":[["0","1/6","1/3"],
                             ["0","1/6","1/3"],["0","1/6","1/3"]]})");
  RunResult result = run_cli("correlate --config " + path.string() + " --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  CHECK(report["outputs"]["correlation_closed"]["re"].get<double>() ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(report["outputs"]["correlation_closed"]["exact_exponent"].is_null());
  CHECK(report["outputs"]["perfect_correlation"].is_null());
}

TEST_CASE("correlate: qubit pair distribution") {
  auto path = write_temp("ghz_qubits.json",
                         R"({"dim":2,"parties":2,"settings":[["0","0"],["0","0"]]})");
  RunResult result = run_cli("correlate --config " + path.string() + " --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  CHECK(report["outputs"]["correlation_closed"]["re"] == 1.0);
  auto& dist = report["outputs"]["distribution"];
  REQUIRE(dist.size() == 4);
  CHECK(dist[0]["outcome"] == ghz::Json::array({1, 1}));
  CHECK(dist[0]["probability"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist[1]["probability"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(dist[3]["probability"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("correlate: omission notice above the cap") {
  RunResult result = run_cli("correlate --dim 4 --parties 20 --set 0,0,0,0 --set 0,0,0,0 "
                             "--set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 "
                             "--set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 "
                             "--set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 "
                             "--set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 --set 0,0,0,0 "
                             "--set 0,0,0,0 --set 0,0,0,0 --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  CHECK(report["outputs"]["correlation_closed"]["re"] == 1.0);
  CHECK(!report["outputs"].contains("correlation_direct"));
  CHECK(report["outputs"]["enumeration_omitted"].get<std::string>().find("cap") !=
        std::string::npos);
}

TEST_CASE("correlate: malformed input exits 2 with a diagnostic") {
  auto path = write_temp("ghz_bad.json",
                         R"({"dim":3,"parties":3,"settings":[["0","1/6","x"],
                             ["0","1/6","1/3"],["0","0","0"]]})");
  RunResult result = run_cli("correlate --config " + path.string());
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("settings[0][2]") != std::string::npos);

  CHECK(run_cli("correlate --config /nonexistent.json").exit_code == 2);
  CHECK(run_cli("correlate").exit_code == 2);

  auto syntax = write_temp("ghz_syntax.json", "{\"dim\": 3,\n  broken\n}");
  RunResult broken = run_cli("correlate --config " + syntax.string());
  CHECK(broken.exit_code == 2);
  CHECK(broken.output.find(":2:") != std::string::npos);
}

TEST_CASE("machine output is deterministic apart from timing") {
  const std::string args =
      "correlate --dim 3 --set 0,1/6,1/3 --set 0,1/6,1/3 --set 0,0,0 --format json";
  ghz::Json first = ghz::Json::parse(run_cli(args).output);
  ghz::Json second = ghz::Json::parse(run_cli(args).output);
  CHECK(first["outputs"].dump() == second["outputs"].dump());
  CHECK(first["inputs"].dump() == second["inputs"].dump());
}

TEST_CASE("paradox: the qutrit certificate") {
  RunResult result = run_cli("paradox --n 3 --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  const ghz::Json& outputs = report["outputs"];
  CHECK(outputs["dim"] == 3);
  CHECK(outputs["constraint_value"]["exact_exponent"] == 2);
  CHECK(outputs["lhv_forced_value"]["exact_exponent"] == 0);
  CHECK(outputs["lhv_forced_value"]["re"] == 1.0);
  CHECK(outputs["quantum_probe_value"]["re"].get<double>() ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(outputs["discrepancy"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(outputs["constraint_configs"].size() == 4);
  // embedded configs re-parse
  for (const ghz::Json& config : outputs["constraint_configs"])
    CHECK_NOTHROW(ghz::config_from_json(config));
}

TEST_CASE("paradox: two observers are refused") {
  RunResult result = run_cli("paradox --n 2");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("three") != std::string::npos);
}

TEST_CASE("scan: odd rows decrease toward -1") {
  RunResult result = run_cli("scan --min 3 --max 7 --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  const ghz::Json& rows = report["outputs"]["rows"];
  REQUIRE(rows.size() == 5);
  CHECK(rows[0]["quantum_probe_value"]["re"].get<double>() ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(rows[2]["quantum_probe_value"]["re"].get<double>() ==
        doctest::Approx(-3.0 / 5.0).epsilon(1e-9));
  CHECK(rows[4]["quantum_probe_value"]["re"].get<double>() ==
        doctest::Approx(-5.0 / 7.0).epsilon(1e-9));
  for (const ghz::Json& row : rows) CHECK(row["discrepancy"].get<double>() > 0.0);

  CHECK(run_cli("scan --min 3 --max 30").exit_code == 2);
  CHECK(run_cli("scan --min 5 --max 3").exit_code == 2);
}

TEST_CASE("lhv: the qutrit system") {
  auto path = write_temp("ghz_lhv.json", kQutritConstraints);
  RunResult result = run_cli("lhv --constraints " + path.string() + " --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  CHECK(report["outputs"]["status"] == "consistent");
  CHECK(report["outputs"]["solution_count"] == "9");
  CHECK(report["outputs"]["achievable_exponents"] == ghz::Json::array({0}));
  CHECK(report["outputs"]["cross_check"] == "enumerated");

  // probe override: unconstrained inspection of one party's phi variable
  RunResult probed = run_cli("lhv --constraints " + path.string() +
                             " --probe phi_prime,phi_prime,phi_prime --format json");
  REQUIRE(probed.exit_code == 0);
  ghz::Json probed_report = ghz::Json::parse(probed.output);
  CHECK(probed_report["outputs"]["achievable_exponents"] == ghz::Json::array({0}));
}

TEST_CASE("lhv: unconstrained and contradictory systems") {
  auto free_path = write_temp("ghz_lhv_free.json", R"({
    "dim": 3, "parties": 2, "menu": ["phi", "phi_prime"],
    "constraints": [], "probe": ["phi", "phi"]
  })");
  ghz::Json free_report = ghz::Json::parse(
      run_cli("lhv --constraints " + free_path.string() + " --format json").output);
  CHECK(free_report["outputs"]["achievable_exponents"] == ghz::Json::array({0, 1, 2}));
  CHECK(free_report["outputs"]["solution_count"] == "81");

  auto bad_path = write_temp("ghz_lhv_bad.json", R"({
    "dim": 3, "parties": 1, "menu": ["phi"],
    "constraints": [{"choice": ["phi"], "exponent": 0},
                     {"choice": ["phi"], "exponent": 1}],
    "probe": ["phi"]
  })");
  ghz::Json bad_report = ghz::Json::parse(
      run_cli("lhv --constraints " + bad_path.string() + " --format json").output);
  CHECK(bad_report["outputs"]["status"] == "inconsistent");
  CHECK(bad_report["outputs"]["solution_count"] == "0");
  CHECK(bad_report["outputs"]["achievable_exponents"].empty());

  auto malformed = write_temp("ghz_lhv_malformed.json", R"({"dim": 3})");
  CHECK(run_cli("lhv --constraints " + malformed.string()).exit_code == 2);
}

TEST_CASE("selftest passes and respects --seed") {
  RunResult result = run_cli("selftest --cases 25 --seed 7 --format json");
  REQUIRE(result.exit_code == 0);
  ghz::Json report = ghz::Json::parse(result.output);
  CHECK(report["outputs"]["result"] == "pass");
  CHECK(report["inputs"]["seed"] == 7);
}

TEST_CASE("exit code contract") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("paradox").exit_code == 2);          // missing required --n
  CHECK(run_cli("correlate --dim 3").exit_code == 2);
  CHECK(run_cli("paradox --n 3 --format yaml").exit_code == 2);
}

TEST_CASE("reports write to --out") {
  std::filesystem::path out = std::filesystem::temp_directory_path() / "ghz_report.json";
  std::filesystem::remove(out);
  RunResult result = run_cli("paradox --n 4 --format json --out " + out.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.output.empty());
  std::ifstream file(out);
  REQUIRE(file.good());
  ghz::Json report = ghz::Json::parse(file);
  CHECK(report["outputs"]["discrepancy"].get<double>() > 1.0);
}
