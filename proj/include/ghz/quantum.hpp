#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghz/turn.hpp"

namespace ghz {

// Brute-force operations refuse configurations with more than this many
// outcomes (N^M); the closed-form correlation has no such limit.
inline constexpr std::uint64_t kDefaultOutcomeCap = 10'000'000;

// Thrown when a requested enumeration would exceed its cap.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phase-shifter settings of one party: phases[j] sits in front of input
// port j+1 of that party's multiport.
struct LocalSetting {
  std::vector<Turn> phases;

  bool operator==(const LocalSetting&) const = default;
};

// An N-port, M-party interferometric experiment: every party holds one
// N-input/N-output Bell multiport with a tunable phase shifter per input.
struct ExperimentConfig {
  int dim = 0;      // ports and outcomes per party (N)
  int parties = 0;  // observation stations (M)
  std::vector<LocalSetting> settings;  // one per party, each of length dim

  // Throws std::invalid_argument on any shape violation.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Which detector fired at each station. Indices are 1-based, matching port
// numbering on all external surfaces.
struct Outcome {
  std::vector<int> detectors;

  bool operator==(const Outcome&) const = default;
};

// The root of unity gamma_order^exponent ascribed to a detection event or to
// a product of detection events.
struct BellValue {
  int exponent = 0;  // in [0, order)
  int order = 1;

  Complex value() const { return Turn::fraction(exponent, order).to_complex(); }

  bool operator==(const BellValue&) const = default;
};

// Dense N x N unitary, row = input port, column = exit port, both 1-based.
struct UnitaryMatrix {
  int dim = 0;
  std::vector<Complex> entries;  // row-major

  Complex at(int m, int m_prime) const {
    return entries[static_cast<std::size_t>(m - 1) * dim + (m_prime - 1)];
  }
};

// M-party state with support on the diagonal kets |j,j,...,j> only; that is
// the invariant subspace the GHZ family lives in, so nothing larger than the
// N diagonal amplitudes is ever stored.
struct StateVector {
  int dim = 0;
  int parties = 0;
  std::vector<Complex> diagonal;  // amplitude of |j,...,j>, j = 1..dim

  // Amplitude of an arbitrary basis ket (1-based entries); zero off-diagonal.
  Complex amplitude(const std::vector<int>& ket) const;

  double squared_norm() const;
};

struct OutcomeProbability {
  Outcome outcome;
  double probability;
};

// The symmetric unbiased multiport: entry (m, m') = gamma_n^{(m-1)(m'-1)} / sqrt(n).
UnitaryMatrix bell_multiport(int n);

// (1/sqrt(n)) sum_j |j,j,...,j> over m parties.
StateVector ghz_state(int n, int m);

// Applies every party's phase shifters to a diagonal state: amplitude j picks
// up exp(i sum_l phi_l^j).
StateVector apply_phases(const StateVector& state, const ExperimentConfig& config);

// Probability that detector outcome.detectors[l] fires at party l+1.
double joint_probability(const ExperimentConfig& config, const Outcome& outcome);

// All N^M outcomes with their probabilities, in lexicographic detector order.
std::vector<OutcomeProbability> outcome_distribution(
    const ExperimentConfig& config, std::uint64_t cap = kDefaultOutcomeCap);

// Correlation function as the explicit average of the product of Bell values
// over the full outcome distribution.
Complex correlation_direct(const ExperimentConfig& config,
                           std::uint64_t cap = kDefaultOutcomeCap);

// Same quantity without outcome enumeration: the cyclic phase-difference sum
// (1/N) sum_m exp(i sum_l (phi_l^m - phi_l^{m+1})), index m+1 taken mod N.
Complex correlation_closed(const ExperimentConfig& config);

// When every cyclic term of the closed form equals the same N-th root of
// unity (decided exactly on rational turns), returns its exponent; the
// correlation then has unit modulus and only detector patterns whose Bell
// values multiply to that root can fire.
std::optional<BellValue> perfect_correlation_value(const ExperimentConfig& config);

// Given the detectors seen at parties 1..M-1 of a perfectly correlated
// configuration, returns the only detector that can fire at party M.
// Throws std::invalid_argument when the configuration is not perfectly
// correlated.
int predict_remote_outcome(const ExperimentConfig& config,
                           const std::vector<int>& partial);

}  // namespace ghz
