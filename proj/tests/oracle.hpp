#pragma once

// Reference evaluations used as independent oracles by the tests. These
// follow the physical pipeline literally: phase-shift the diagonal state,
// push each party's excitation through its own multiport entry by entry, and
// apply the Born rule. No code is shared with the library's collapsed
// probability formula.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ghz/quantum.hpp"

namespace ghz::testing {

inline Complex unit_phase(double fraction_of_turn) {
  return std::polar(1.0, 2.0 * std::numbers::pi * fraction_of_turn);
}

inline double turn_value(const Turn& t) {
  return static_cast<double>(t.num()) / static_cast<double>(t.den());
}

// P(k_1..k_M) = |(1/sqrt N) sum_m prod_l exp(i phi_l^m) U_{m,k_l}|^2 with the
// multiport entries written out inline.
inline double oracle_probability(const ExperimentConfig& config, const Outcome& outcome) {
  const int n = config.dim;
  const double root = std::sqrt(static_cast<double>(n));
  Complex amplitude(0.0, 0.0);
  for (int m = 1; m <= n; ++m) {
    Complex term(1.0 / root, 0.0);
    for (int l = 0; l < config.parties; ++l) {
      Complex shifted = unit_phase(turn_value(config.settings[l].phases[m - 1]));
      Complex port = unit_phase(static_cast<double>((m - 1) * (outcome.detectors[l] - 1)) /
                                static_cast<double>(n)) /
                     root;
      term *= shifted * port;
    }
    amplitude += term;
  }
  return std::norm(amplitude);
}

// Expectation of the product of the parties' Bell values over the oracle
// distribution.
inline Complex oracle_correlation(const ExperimentConfig& config) {
  const int n = config.dim;
  std::vector<int> detectors(static_cast<std::size_t>(config.parties), 1);
  Complex expectation(0.0, 0.0);
  while (true) {
    int bell = 0;
    for (int k : detectors) bell += k - 1;
    expectation += unit_phase(static_cast<double>(bell) / static_cast<double>(n)) *
                   oracle_probability(config, Outcome{detectors});
    int l = config.parties - 1;
    while (l >= 0 && ++detectors[l] > n) detectors[l--] = 1;
    if (l < 0) break;
  }
  return expectation;
}

}  // namespace ghz::testing
