#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ghz/quantum.hpp"

namespace ghz {

// Deterministic strategy enumeration refuses spaces larger than this many
// strategies (dim^(parties * menu size)); the congruence solver has no limit.
inline constexpr std::uint64_t kDefaultStrategyCap = 100'000'000;

// A deterministic local strategy: party l answering the setting labelled
// menu[s] fires the detector carrying the Bell value gamma_dim^assignments[l][s].
// Squaring an outcome is conjugation, and every such relation is automatic in
// this additive exponent form.
struct LhvStrategy {
  int dim = 0;
  std::vector<std::string> menu;
  std::vector<std::vector<int>> assignments;  // [party][setting index], each in [0, dim)

  bool operator==(const LhvStrategy&) const = default;
};

// Requires the product of the parties' outcomes, at the given per-party
// setting choice, to equal gamma_dim^exponent.
struct ProductConstraint {
  std::vector<std::string> choice;  // one menu label per party
  int exponent = 0;

  bool operator==(const ProductConstraint&) const = default;
};

// Additive form of a set of product constraints: one column per
// (party, setting label) pair, one row per constraint, solved over Z_modulus.
struct CongruenceSystem {
  std::int64_t modulus = 0;
  int parties = 0;
  std::vector<std::string> menu;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> rhs;

  std::size_t variables() const { return static_cast<std::size_t>(parties) * menu.size(); }
  std::size_t var_index(int party, std::size_t setting) const {
    return static_cast<std::size_t>(party) * menu.size() + setting;
  }
};

// Exact solution count kept in factored form; the count of a congruence
// system can exceed any fixed-width integer.
class SolutionCount {
 public:
  SolutionCount() = default;
  void multiply(std::int64_t factor) { factors_.push_back(factor); }

  bool fits_uint64() const;
  std::uint64_t as_uint64() const;  // throws std::overflow_error when it does not fit
  std::string decimal() const;

 private:
  std::vector<std::int64_t> factors_;
};

struct SolutionSet {
  bool consistent = false;
  std::optional<LhvStrategy> particular;
  // Generators of the solution subgroup mod N, as exponent vectors over the
  // system's variables; the full solution set is particular + <kernel_basis>.
  std::vector<std::vector<int>> kernel_basis;
  SolutionCount count;
};

// Product of the parties' outcomes under the given choice of settings.
BellValue strategy_value(const LhvStrategy& strategy, const std::vector<std::string>& choice);

CongruenceSystem to_congruences(int dim, int parties, const std::vector<std::string>& menu,
                                const std::vector<ProductConstraint>& constraints);

// Complete description of the solution set over Z_N, composite N included.
// Gaussian elimination over Z_N breaks on non-unit pivots, so the reduction
// is done with unimodular integer row/column operations instead.
SolutionSet solve_congruences(const CongruenceSystem& system);

// All satisfying strategies in lexicographic assignment order. Refuses
// strategy spaces above the cap and points callers at solve_congruences.
std::vector<LhvStrategy> enumerate_consistent(int dim, int parties,
                                              const std::vector<std::string>& menu,
                                              const std::vector<ProductConstraint>& constraints,
                                              std::uint64_t cap = kDefaultStrategyCap);

// Exponents of the product values satisfying strategies can realize at the
// probe choice. Computed algebraically from the solved system; when the
// strategy space fits under the cap the result is cross-checked against
// exhaustive enumeration and any disagreement throws std::logic_error.
std::set<int> achievable_values(int dim, int parties, const std::vector<std::string>& menu,
                                const std::vector<ProductConstraint>& constraints,
                                const std::vector<std::string>& probe,
                                std::uint64_t cap = kDefaultStrategyCap);

// Enumeration-only variant of achievable_values; serves as the independent
// oracle for the algebraic path.
std::set<int> achievable_values_enumerated(int dim, int parties,
                                           const std::vector<std::string>& menu,
                                           const std::vector<ProductConstraint>& constraints,
                                           const std::vector<std::string>& probe,
                                           std::uint64_t cap = kDefaultStrategyCap);

// Number of satisfying strategies by exhaustive walk (no materialization).
std::uint64_t count_consistent(int dim, int parties, const std::vector<std::string>& menu,
                               const std::vector<ProductConstraint>& constraints,
                               std::uint64_t cap = kDefaultStrategyCap);

// Correlation of a convex mixture of deterministic strategies at one choice
// of settings. Weights must be nonnegative and sum to one within 1e-12.
Complex mixture_correlation(const std::vector<std::pair<LhvStrategy, double>>& weighted,
                            const std::vector<std::string>& choice);

}  // namespace ghz
