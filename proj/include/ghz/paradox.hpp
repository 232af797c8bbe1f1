#pragma once

#include <vector>

#include "ghz/lhv.hpp"
#include "ghz/quantum.hpp"

namespace ghz {

// Default bound on scan ranges; keeps congruence solving desk-scale.
inline constexpr int kDefaultScanLimit = 25;

// The two local settings the N-party construction uses: a graded phase
// ladder and the all-zero reference.
struct SettingPair {
  LocalSetting phi;
  LocalSetting phi_prime;
};

// Machine-checkable record of one dimension's contradiction: the perfect
// correlations every local deterministic model must satisfy, the probe value
// those models are then forced to, and the quantum value at the same probe.
struct ParadoxCertificate {
  int dim = 0;  // parties and ports alike
  SettingPair settings;
  // One config per party holding phi_prime while the rest hold phi, then the
  // all-phi_prime baseline last.
  std::vector<ExperimentConfig> constraint_configs;
  BellValue constraint_value;   // shared perfect-correlation value of the first dim configs
  BellValue lhv_forced_value;   // the only product value local strategies allow at the probe
  Complex quantum_probe_value;  // correlation with every party at phi
  double discrepancy = 0.0;     // |forced value - quantum probe value|
};

// Phase ladder for dimension n: entry j is j*pi/n of arc for odd n and
// j*pi/(n-1) for even n, as exact turns. Requires n >= 3; no such
// construction exists for two observers.
SettingPair ghz_settings(int n);

// The n experiments fixing one party at phi_prime, plus the all-phi_prime
// baseline (last).
std::vector<ExperimentConfig> constraint_configs(int n);

// The perfect-correlation value every non-baseline constraint config attains:
// gamma_n^{-(n-1)/2} for odd n, -1 for even n.
BellValue expected_constraint_value(int n);

// Correlation with all parties at phi, evaluated by the closed form and
// cross-checked against the per-parity closed expression (they must agree to
// 1e-12): -(n-2)/n for odd n, ((n-1)*exp(-i*pi*n/(n-1)) + 1)/n for even n.
Complex quantum_probe_value(int n);

// Assembles and verifies the full certificate for dimension n. Throws
// std::logic_error if any internal consistency check fails (none can for
// n >= 3).
ParadoxCertificate build_certificate(int n, std::uint64_t lhv_cap = kDefaultStrategyCap);

// Certificates for every n in [n_min, n_max]; n_max may not exceed limit.
std::vector<ParadoxCertificate> scan(int n_min, int n_max, int limit = kDefaultScanLimit,
                                     std::uint64_t lhv_cap = kDefaultStrategyCap);

}  // namespace ghz
