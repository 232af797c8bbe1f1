#include <doctest.h>

#include "ghz/serialize.hpp"

using namespace ghz;

namespace {

ExperimentConfig qutrit_run() {
  LocalSetting phi{{Turn{}, Turn::fraction(1, 6), Turn::fraction(1, 3)}};
  LocalSetting phi_prime{std::vector<Turn>(3)};
  return ExperimentConfig{3, 3, {phi, phi, phi_prime}};
}

}  // namespace

TEST_CASE("config serialization round-trips canonically") {
  ExperimentConfig config = qutrit_run();
  OrderedJson doc = config_to_json(config);
  CHECK(doc["dim"] == 3);
  CHECK(doc["parties"] == 3);
  CHECK(doc["settings"][0][1] == "1/6");
  CHECK(doc["settings"][2][2] == "0/1");

  ExperimentConfig parsed = config_from_json(Json::parse(doc.dump()));
  CHECK(parsed == config);

  // non-canonical fractions parse to the same canonical config
  ExperimentConfig relaxed = config_from_json(Json::parse(
      R"({"dim":3,"parties":3,"settings":[["0","2/12","-2/3"],["0","1/6","1/3"],["0","0","0"]]})"));
  CHECK(relaxed == config);
}

TEST_CASE("config parse errors name the field") {
  CHECK_THROWS_WITH_AS(config_from_json(Json::parse(R"({"parties":2,"settings":[]})")),
                       doctest::Contains("dim"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      config_from_json(Json::parse(R"({"dim":2,"parties":2,"settings":[["0/1","0/1"]]})")),
      doctest::Contains("settings"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      config_from_json(
          Json::parse(R"({"dim":2,"parties":1,"settings":[["0.5","0/1"]]})")),
      doctest::Contains("settings[0][0]"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      config_from_json(Json::parse(R"({"dim":2,"parties":1,"settings":[["0/1"]]})")),
      doctest::Contains("expected 2 phases"), std::invalid_argument);
}

TEST_CASE("json syntax errors report line and column") {
  CHECK_THROWS_WITH_AS(parse_json_text("{\n  \"dim\": 3,\n  !\n}", "config.json"),
                       doctest::Contains("config.json:3:"), std::invalid_argument);
  CHECK_NOTHROW(parse_json_text(R"({"dim": 3})", "config.json"));
}

TEST_CASE("lhv problems round-trip") {
  LhvProblem problem;
  problem.dim = 3;
  problem.parties = 3;
  problem.menu = {"phi", "phi_prime"};
  problem.constraints = {
      {{"phi", "phi", "phi_prime"}, 2},
      {{"phi_prime", "phi_prime", "phi_prime"}, 0},
  };
  problem.probe = {"phi", "phi", "phi"};

  LhvProblem parsed = lhv_problem_from_json(Json::parse(lhv_problem_to_json(problem).dump()));
  CHECK(parsed == problem);

  CHECK_THROWS_WITH_AS(
      lhv_problem_from_json(Json::parse(R"({"dim":3,"parties":2,"menu":["a"],
        "constraints":[{"choice":["a"],"exponent":0}],"probe":["a","a"]})")),
      doctest::Contains("constraints[0].choice"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      lhv_problem_from_json(Json::parse(R"({"dim":3,"parties":1,"menu":["a"],
        "constraints":[]})")),
      doctest::Contains("probe"), std::invalid_argument);
}

TEST_CASE("decimal fields round to twelve significant digits") {
  CHECK(round_significant(-1.0 / 3.0) == -0.333333333333);
  CHECK(round_significant(0.125) == 0.125);
  CHECK(round_significant(1234567890123456.0) == 1234567890120000.0);

  OrderedJson z = complex_to_json(Complex(-0.125, 0.6495190528383290), 4, std::nullopt);
  CHECK(z["re"] == -0.125);
  CHECK(z["im"] == 0.649519052838);
  CHECK(z["exact_exponent"].is_null());
  CHECK(z["order"] == 4);

  OrderedJson root = complex_to_json(BellValue{2, 3}.value(), 3, 2);
  CHECK(root["exact_exponent"] == 2);

  CHECK(format_complex(Complex(-0.5, -0.8660254037844386)) == "-0.5 - 0.866025403784i");
  CHECK(format_complex(Complex(1.0, 0.0)) == "1 + 0i");
}
