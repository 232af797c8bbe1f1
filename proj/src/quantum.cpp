#include "ghz/quantum.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace ghz {

namespace {

// sum_l phi_l^j for each port j, kept exact.
std::vector<Turn> port_phase_sums(const ExperimentConfig& config) {
  std::vector<Turn> sums(static_cast<std::size_t>(config.dim));
  for (const LocalSetting& setting : config.settings)
    for (int j = 0; j < config.dim; ++j) sums[j] += setting.phases[j];
  return sums;
}

void check_outcome(const ExperimentConfig& config, const std::vector<int>& detectors) {
  if (static_cast<int>(detectors.size()) != config.parties)
    throw std::invalid_argument("outcome length does not match party count");
  for (int k : detectors)
    if (k < 1 || k > config.dim)
      throw std::invalid_argument("detector index " + std::to_string(k) +
                                  " outside 1.." + std::to_string(config.dim));
}

// Refuses enumerations larger than cap, without overflowing the size check.
void check_enumeration(const ExperimentConfig& config, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (int l = 0; l < config.parties; ++l) {
    if (size > cap / static_cast<std::uint64_t>(config.dim)) {
      throw EnumerationCapExceeded(
          "enumerating " + std::to_string(config.dim) + "^" +
          std::to_string(config.parties) + " outcomes exceeds the cap of " +
          std::to_string(cap));
    }
    size *= static_cast<std::uint64_t>(config.dim);
  }
  if (size > cap)
    throw EnumerationCapExceeded("enumerating " + std::to_string(size) +
                                 " outcomes exceeds the cap of " + std::to_string(cap));
}

// Unit-modulus amplitude summands of the probability formula: term(m, K) for
// a detector pattern with Bell exponent K = sum (k_l - 1) mod N.
std::vector<Complex> amplitude_terms(const ExperimentConfig& config) {
  const int n = config.dim;
  std::vector<Turn> sums = port_phase_sums(config);
  std::vector<Complex> table(static_cast<std::size_t>(n) * n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k)
      table[static_cast<std::size_t>(m) * n + k] =
          (sums[m] + Turn::fraction(static_cast<std::int64_t>(m) * k, n)).to_complex();
  return table;
}

// Walks all detector tuples lexicographically, maintaining the Bell exponent
// K of the current tuple; every single digit step adds one to K mod N, carries
// included, since wrapping N -> 1 is also +1 mod N.
template <typename Visit>
void for_each_outcome(const ExperimentConfig& config, Visit&& visit) {
  std::vector<int> detectors(static_cast<std::size_t>(config.parties), 1);
  int bell_exponent = 0;
  const int n = config.dim;
  while (true) {
    visit(detectors, bell_exponent);
    int l = config.parties - 1;
    while (l >= 0) {
      bell_exponent = (bell_exponent + 1) % n;
      if (++detectors[l] <= n) break;
      detectors[l] = 1;
      --l;
    }
    if (l < 0) return;
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("config: dim must be >= 1");
  if (parties < 1) throw std::invalid_argument("config: parties must be >= 1");
  if (static_cast<int>(settings.size()) != parties)
    throw std::invalid_argument("config: expected " + std::to_string(parties) +
                                " settings, got " + std::to_string(settings.size()));
  for (std::size_t l = 0; l < settings.size(); ++l)
    if (static_cast<int>(settings[l].phases.size()) != dim)
      throw std::invalid_argument("config: setting " + std::to_string(l + 1) +
                                  " has " + std::to_string(settings[l].phases.size()) +
                                  " phases, expected " + std::to_string(dim));
}

Complex StateVector::amplitude(const std::vector<int>& ket) const {
  if (static_cast<int>(ket.size()) != parties)
    throw std::invalid_argument("ket length does not match party count");
  for (int entry : ket)
    if (entry < 1 || entry > dim)
      throw std::invalid_argument("ket entry outside 1..dim");
  for (int entry : ket)
    if (entry != ket.front()) return Complex(0.0, 0.0);
  return diagonal[static_cast<std::size_t>(ket.front() - 1)];
}

double StateVector::squared_norm() const {
  double total = 0.0;
  for (Complex a : diagonal) total += std::norm(a);
  return total;
}

UnitaryMatrix bell_multiport(int n) {
  if (n < 1) throw std::invalid_argument("bell_multiport: dimension must be >= 1");
  UnitaryMatrix u;
  u.dim = n;
  u.entries.resize(static_cast<std::size_t>(n) * n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < n; ++m)
    for (int mp = 0; mp < n; ++mp)
      u.entries[static_cast<std::size_t>(m) * n + mp] =
          scale * Turn::fraction(static_cast<std::int64_t>(m) * mp, n).to_complex();
  return u;
}

StateVector ghz_state(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("ghz_state: n and m must be >= 1");
  StateVector state;
  state.dim = n;
  state.parties = m;
  state.diagonal.assign(static_cast<std::size_t>(n),
                        Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
  return state;
}

StateVector apply_phases(const StateVector& state, const ExperimentConfig& config) {
  config.validate();
  if (state.dim != config.dim || state.parties != config.parties)
    throw std::invalid_argument("apply_phases: state and config dimensions differ");
  std::vector<Turn> sums = port_phase_sums(config);
  StateVector out = state;
  for (int j = 0; j < config.dim; ++j) out.diagonal[j] *= sums[j].to_complex();
  return out;
}

double joint_probability(const ExperimentConfig& config, const Outcome& outcome) {
  config.validate();
  check_outcome(config, outcome.detectors);
  const int n = config.dim;
  std::vector<Turn> sums = port_phase_sums(config);
  int bell_exponent = 0;
  for (int k : outcome.detectors) bell_exponent = (bell_exponent + k - 1) % n;
  Complex amp(0.0, 0.0);
  for (int m = 0; m < n; ++m)
    amp += (sums[m] + Turn::fraction(static_cast<std::int64_t>(m) * bell_exponent, n))
               .to_complex();
  return std::norm(amp) / std::pow(static_cast<double>(n), config.parties + 1);
}

std::vector<OutcomeProbability> outcome_distribution(const ExperimentConfig& config,
                                                     std::uint64_t cap) {
  config.validate();
  check_enumeration(config, cap);
  const int n = config.dim;
  const std::vector<Complex> terms = amplitude_terms(config);
  const double weight = 1.0 / std::pow(static_cast<double>(n), config.parties + 1);

  std::vector<OutcomeProbability> distribution;
  std::uint64_t total = 1;
  for (int l = 0; l < config.parties; ++l) total *= static_cast<std::uint64_t>(n);
  distribution.reserve(total);

  for_each_outcome(config, [&](const std::vector<int>& detectors, int bell_exponent) {
    Complex amp(0.0, 0.0);
    for (int m = 0; m < n; ++m) amp += terms[static_cast<std::size_t>(m) * n + bell_exponent];
    distribution.push_back({Outcome{detectors}, std::norm(amp) * weight});
  });
  return distribution;
}

Complex correlation_direct(const ExperimentConfig& config, std::uint64_t cap) {
  config.validate();
  check_enumeration(config, cap);
  const int n = config.dim;
  const std::vector<Complex> terms = amplitude_terms(config);
  const double weight = 1.0 / std::pow(static_cast<double>(n), config.parties + 1);

  std::vector<Complex> bell(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) bell[k] = Turn::fraction(k, n).to_complex();

  Complex expectation(0.0, 0.0);
  for_each_outcome(config, [&](const std::vector<int>&, int bell_exponent) {
    Complex amp(0.0, 0.0);
    for (int m = 0; m < n; ++m) amp += terms[static_cast<std::size_t>(m) * n + bell_exponent];
    expectation += bell[bell_exponent] * (std::norm(amp) * weight);
  });
  return expectation;
}

Complex correlation_closed(const ExperimentConfig& config) {
  config.validate();
  const int n = config.dim;
  std::vector<Turn> sums = port_phase_sums(config);
  Complex total(0.0, 0.0);
  for (int m = 0; m < n; ++m) total += (sums[m] - sums[(m + 1) % n]).to_complex();
  return total / static_cast<double>(n);
}

std::optional<BellValue> perfect_correlation_value(const ExperimentConfig& config) {
  config.validate();
  const int n = config.dim;
  std::vector<Turn> sums = port_phase_sums(config);
  Turn first = sums[0] - sums[1 % n];
  for (int m = 1; m < n; ++m)
    if (sums[m] - sums[(m + 1) % n] != first) return std::nullopt;
  // The cyclic terms telescope to zero, so a shared term is always an N-th
  // root of unity; the fallthrough below is unreachable on valid inputs.
  std::optional<std::int64_t> exponent = first.root_exponent(n);
  if (!exponent) return std::nullopt;
  return BellValue{static_cast<int>(*exponent), n};
}

int predict_remote_outcome(const ExperimentConfig& config, const std::vector<int>& partial) {
  config.validate();
  if (static_cast<int>(partial.size()) != config.parties - 1)
    throw std::invalid_argument("predict_remote_outcome: expected " +
                                std::to_string(config.parties - 1) +
                                " observed detectors, got " + std::to_string(partial.size()));
  for (int k : partial)
    if (k < 1 || k > config.dim)
      throw std::invalid_argument("detector index outside 1..dim");
  std::optional<BellValue> value = perfect_correlation_value(config);
  if (!value)
    throw std::invalid_argument(
        "predict_remote_outcome: configuration is not perfectly correlated");
  int residue = value->exponent;
  for (int k : partial) residue = (residue - (k - 1)) % config.dim;
  if (residue < 0) residue += config.dim;
  return residue + 1;
}

}  // namespace ghz
