#include "ghz/paradox.hpp"

#include <cmath>
#include <string>

namespace ghz {

namespace {

const std::string kPhiLabel = "phi";
const std::string kPhiPrimeLabel = "phi_prime";

void check_dimension(int n) {
  if (n < 3)
    throw std::invalid_argument(
        "paradox dimension must be >= 3: the construction needs at least three "
        "observers (none of these contradictions exists for two)");
}

ExperimentConfig all_phi_config(int n) {
  SettingPair pair = ghz_settings(n);
  ExperimentConfig config;
  config.dim = n;
  config.parties = n;
  config.settings.assign(static_cast<std::size_t>(n), pair.phi);
  return config;
}

}  // namespace

SettingPair ghz_settings(int n) {
  check_dimension(n);
  const std::int64_t step_den = (n % 2 == 1) ? 2 * static_cast<std::int64_t>(n)
                                             : 2 * static_cast<std::int64_t>(n - 1);
  SettingPair pair;
  pair.phi.phases.reserve(n);
  pair.phi_prime.phases.assign(static_cast<std::size_t>(n), Turn{});
  for (int j = 0; j < n; ++j) pair.phi.phases.push_back(Turn::fraction(j, step_den));
  return pair;
}

std::vector<ExperimentConfig> constraint_configs(int n) {
  check_dimension(n);
  SettingPair pair = ghz_settings(n);
  std::vector<ExperimentConfig> configs;
  configs.reserve(static_cast<std::size_t>(n) + 1);
  for (int l = 0; l < n; ++l) {
    ExperimentConfig config;
    config.dim = n;
    config.parties = n;
    config.settings.assign(static_cast<std::size_t>(n), pair.phi);
    config.settings[l] = pair.phi_prime;
    configs.push_back(std::move(config));
  }
  ExperimentConfig baseline;
  baseline.dim = n;
  baseline.parties = n;
  baseline.settings.assign(static_cast<std::size_t>(n), pair.phi_prime);
  configs.push_back(std::move(baseline));
  return configs;
}

BellValue expected_constraint_value(int n) {
  check_dimension(n);
  if (n % 2 == 1) {
    int m = (n - 1) / 2;
    return BellValue{n - m, n};  // gamma_n^{-m}
  }
  return BellValue{n / 2, n};  // -1
}

Complex quantum_probe_value(int n) {
  check_dimension(n);
  Complex closed = correlation_closed(all_phi_config(n));

  Complex expected;
  if (n % 2 == 1) {
    expected = Complex(-static_cast<double>(n - 2) / n, 0.0);
  } else {
    // ((n-1) * exp(-i*pi*n/(n-1)) + 1) / n, with the exponent as an exact turn
    int m = n / 2;
    Complex phase = Turn::fraction(-m, n - 1).to_complex();
    expected = (static_cast<double>(n - 1) * phase + Complex(1.0, 0.0)) / static_cast<double>(n);
  }
  if (std::abs(closed - expected) > 1e-12)
    throw std::logic_error("quantum_probe_value: closed form and parity formula disagree at n=" +
                           std::to_string(n));
  return closed;
}

ParadoxCertificate build_certificate(int n, std::uint64_t lhv_cap) {
  check_dimension(n);

  ParadoxCertificate cert;
  cert.dim = n;
  cert.settings = ghz_settings(n);
  cert.constraint_configs = constraint_configs(n);
  cert.constraint_value = expected_constraint_value(n);

  // Every constraint config must attain the expected perfect correlation,
  // exactly; the baseline must sit at 1.
  for (int l = 0; l <= n; ++l) {
    const ExperimentConfig& config = cert.constraint_configs[l];
    const BellValue expected = (l < n) ? cert.constraint_value : BellValue{0, n};
    std::optional<BellValue> observed = perfect_correlation_value(config);
    if (!observed || !(*observed == expected))
      throw std::logic_error("certificate: constraint config " + std::to_string(l + 1) +
                             " is not perfectly correlated at the expected value");
    if (std::abs(correlation_closed(config) - expected.value()) > 1e-12)
      throw std::logic_error("certificate: constraint config " + std::to_string(l + 1) +
                             " correlation does not match its Bell value numerically");
  }

  // What the constraints force local deterministic models to at the all-phi
  // probe. The paper families always force the product value 1.
  std::vector<std::string> menu{kPhiLabel, kPhiPrimeLabel};
  std::vector<ProductConstraint> constraints;
  for (int l = 0; l < n; ++l) {
    ProductConstraint constraint;
    constraint.choice.assign(static_cast<std::size_t>(n), kPhiLabel);
    constraint.choice[l] = kPhiPrimeLabel;
    constraint.exponent = cert.constraint_value.exponent;
    constraints.push_back(std::move(constraint));
  }
  constraints.push_back(
      ProductConstraint{std::vector<std::string>(static_cast<std::size_t>(n), kPhiPrimeLabel), 0});

  std::vector<std::string> probe(static_cast<std::size_t>(n), kPhiLabel);
  std::set<int> achievable = achievable_values(n, n, menu, constraints, probe, lhv_cap);
  if (achievable.size() != 1)
    throw std::logic_error("certificate: constraints do not force a unique probe value at n=" +
                           std::to_string(n));
  cert.lhv_forced_value = BellValue{*achievable.begin(), n};

  cert.quantum_probe_value = quantum_probe_value(n);
  cert.discrepancy = std::abs(cert.lhv_forced_value.value() - cert.quantum_probe_value);
  return cert;
}

std::vector<ParadoxCertificate> scan(int n_min, int n_max, int limit, std::uint64_t lhv_cap) {
  if (n_min < 3 || n_min > n_max)
    throw std::invalid_argument("scan: need 3 <= n_min <= n_max");
  if (n_max > limit)
    throw std::invalid_argument("scan: n_max exceeds the limit of " + std::to_string(limit));
  std::vector<ParadoxCertificate> certificates;
  certificates.reserve(static_cast<std::size_t>(n_max - n_min) + 1);
  for (int n = n_min; n <= n_max; ++n) certificates.push_back(build_certificate(n, lhv_cap));
  return certificates;
}

}  // namespace ghz
