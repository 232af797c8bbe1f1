#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghz/lhv.hpp"
#include "ghz/paradox.hpp"
#include "ghz/quantum.hpp"

namespace ghz {

// Emitted documents keep insertion order; parsing accepts any key order.
using OrderedJson = nlohmann::ordered_json;
using Json = nlohmann::json;

// An LHV problem as it appears in a constraint file.
struct LhvProblem {
  int dim = 0;
  int parties = 0;
  std::vector<std::string> menu;
  std::vector<ProductConstraint> constraints;
  std::vector<std::string> probe;

  bool operator==(const LhvProblem&) const = default;
};

// Rounds to 12 significant digits; every decimal field of a machine-readable
// report goes through this so identical inputs serialize identically.
double round_significant(double value);

std::string format_complex(Complex z);  // "a + bi" with 12 significant digits

// {"re":..., "im":..., "exact_exponent": e|null, "order": n}
OrderedJson complex_to_json(Complex z, int order, std::optional<int> exact_exponent);

// {"dim": N, "parties": M, "settings": [["p/q", ...], ...]}
OrderedJson config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& doc);

// {"dim":..., "parties":..., "menu":[...], "constraints":[{"choice":[...],
//  "exponent":...}, ...], "probe":[...]}
OrderedJson lhv_problem_to_json(const LhvProblem& problem);
LhvProblem lhv_problem_from_json(const Json& doc);

// Parses a JSON document, reporting the line and column of syntax errors.
Json parse_json_text(const std::string& text, const std::string& origin);

}  // namespace ghz
