#include "ghz/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ghz {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw std::invalid_argument(field + ": " + message);
}

int require_int(const Json& doc, const std::string& field, int minimum) {
  if (!doc.contains(field)) field_error(field, "missing");
  const Json& value = doc.at(field);
  if (!value.is_number_integer()) field_error(field, "expected an integer");
  long long v = value.get<long long>();
  if (v < minimum)
    field_error(field, "must be >= " + std::to_string(minimum));
  if (v > INT32_MAX) field_error(field, "out of range");
  return static_cast<int>(v);
}

Turn turn_from_field(const Json& value, const std::string& field) {
  if (!value.is_string()) field_error(field, "expected a turn fraction string \"p/q\"");
  try {
    return Turn::parse(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    field_error(field, e.what());
  }
}

std::vector<std::string> labels_from_field(const Json& value, const std::string& field,
                                           int expected) {
  if (!value.is_array()) field_error(field, "expected an array of setting labels");
  if (expected >= 0 && static_cast<int>(value.size()) != expected)
    field_error(field, "expected " + std::to_string(expected) + " labels, got " +
                           std::to_string(value.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string())
      field_error(field + "[" + std::to_string(i) + "]", "expected a string label");
    labels.push_back(value[i].get<std::string>());
  }
  return labels;
}

}  // namespace

double round_significant(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string format_complex(Complex z) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%.12g %c %.12gi", z.real(),
                z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buffer;
}

OrderedJson complex_to_json(Complex z, int order, std::optional<int> exact_exponent) {
  OrderedJson doc;
  doc["re"] = round_significant(z.real());
  doc["im"] = round_significant(z.imag());
  if (exact_exponent)
    doc["exact_exponent"] = *exact_exponent;
  else
    doc["exact_exponent"] = nullptr;
  doc["order"] = order;
  return doc;
}

OrderedJson config_to_json(const ExperimentConfig& config) {
  OrderedJson doc;
  doc["dim"] = config.dim;
  doc["parties"] = config.parties;
  OrderedJson settings = OrderedJson::array();
  for (const LocalSetting& setting : config.settings) {
    OrderedJson phases = OrderedJson::array();
    for (const Turn& phase : setting.phases) phases.push_back(phase.str());
    settings.push_back(std::move(phases));
  }
  doc["settings"] = std::move(settings);
  return doc;
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
  ExperimentConfig config;
  config.dim = require_int(doc, "dim", 1);
  config.parties = require_int(doc, "parties", 1);
  if (!doc.contains("settings")) field_error("settings", "missing");
  const Json& settings = doc.at("settings");
  if (!settings.is_array()) field_error("settings", "expected an array");
  if (static_cast<int>(settings.size()) != config.parties)
    field_error("settings", "expected " + std::to_string(config.parties) +
                                " entries, got " + std::to_string(settings.size()));
  for (std::size_t l = 0; l < settings.size(); ++l) {
    const std::string field = "settings[" + std::to_string(l) + "]";
    const Json& row = settings[l];
    if (!row.is_array()) field_error(field, "expected an array of turn fractions");
    if (static_cast<int>(row.size()) != config.dim)
      field_error(field, "expected " + std::to_string(config.dim) + " phases, got " +
                             std::to_string(row.size()));
    LocalSetting setting;
    for (std::size_t j = 0; j < row.size(); ++j)
      setting.phases.push_back(turn_from_field(row[j], field + "[" + std::to_string(j) + "]"));
    config.settings.push_back(std::move(setting));
  }
  config.validate();
  return config;
}

OrderedJson lhv_problem_to_json(const LhvProblem& problem) {
  OrderedJson doc;
  doc["dim"] = problem.dim;
  doc["parties"] = problem.parties;
  doc["menu"] = problem.menu;
  OrderedJson constraints = OrderedJson::array();
  for (const ProductConstraint& constraint : problem.constraints) {
    OrderedJson entry;
    entry["choice"] = constraint.choice;
    entry["exponent"] = constraint.exponent;
    constraints.push_back(std::move(entry));
  }
  doc["constraints"] = std::move(constraints);
  doc["probe"] = problem.probe;
  return doc;
}

LhvProblem lhv_problem_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("constraints: expected a JSON object");
  LhvProblem problem;
  problem.dim = require_int(doc, "dim", 2);
  problem.parties = require_int(doc, "parties", 1);
  if (!doc.contains("menu")) field_error("menu", "missing");
  problem.menu = labels_from_field(doc.at("menu"), "menu", -1);
  if (!doc.contains("constraints")) field_error("constraints", "missing");
  const Json& constraints = doc.at("constraints");
  if (!constraints.is_array()) field_error("constraints", "expected an array");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const std::string field = "constraints[" + std::to_string(i) + "]";
    const Json& entry = constraints[i];
    if (!entry.is_object()) field_error(field, "expected an object");
    if (!entry.contains("choice")) field_error(field + ".choice", "missing");
    ProductConstraint constraint;
    constraint.choice =
        labels_from_field(entry.at("choice"), field + ".choice", problem.parties);
    if (!entry.contains("exponent")) field_error(field + ".exponent", "missing");
    if (!entry.at("exponent").is_number_integer())
      field_error(field + ".exponent", "expected an integer");
    constraint.exponent = entry.at("exponent").get<int>();
    problem.constraints.push_back(std::move(constraint));
  }
  if (!doc.contains("probe")) field_error("probe", "missing");
  problem.probe = labels_from_field(doc.at("probe"), "probe", problem.parties);
  return problem;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports a byte offset; convert to line/column
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    if (offset > text.size()) offset = text.size();
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw std::invalid_argument(origin + ":" + std::to_string(line) + ":" +
                                std::to_string(column) + ": " + e.what());
  }
}

}  // namespace ghz
