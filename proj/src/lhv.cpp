#include "ghz/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ghz {

namespace {

std::int64_t mod_reduce(std::int64_t a, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  return a;
}

// g = p*a + q*b with g = gcd(a, b) >= 0.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& p, std::int64_t& q) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_p = 1, pp = 0;
  std::int64_t old_q = 0, qq = 1;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp;
    tmp = old_r - quot * r; old_r = r; r = tmp;
    tmp = old_p - quot * pp; old_p = pp; pp = tmp;
    tmp = old_q - quot * qq; old_q = qq; qq = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_p = -old_p; old_q = -old_q; }
  p = old_p;
  q = old_q;
  return old_r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  std::int64_t p, q;
  std::int64_t g = xgcd(mod_reduce(a, n), n, p, q);
  if (g != 1) throw std::logic_error("mod_inverse: arguments are not coprime");
  return mod_reduce(p, n);
}

std::size_t menu_index(const std::vector<std::string>& menu, const std::string& label) {
  auto it = std::find(menu.begin(), menu.end(), label);
  if (it == menu.end())
    throw std::invalid_argument("unknown setting label \"" + label + "\"");
  return static_cast<std::size_t>(it - menu.begin());
}

void check_problem_shape(int dim, int parties, const std::vector<std::string>& menu) {
  if (dim < 2) throw std::invalid_argument("lhv: dim must be >= 2");
  if (parties < 1) throw std::invalid_argument("lhv: parties must be >= 1");
  if (menu.empty()) throw std::invalid_argument("lhv: setting menu must not be empty");
  for (std::size_t i = 0; i < menu.size(); ++i)
    for (std::size_t j = i + 1; j < menu.size(); ++j)
      if (menu[i] == menu[j])
        throw std::invalid_argument("lhv: duplicate menu label \"" + menu[i] + "\"");
}

// dim^vars when it fits under cap.
std::optional<std::uint64_t> strategy_space(int dim, std::size_t vars, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::size_t v = 0; v < vars; ++v) {
    if (size > cap / static_cast<std::uint64_t>(dim)) return std::nullopt;
    size *= static_cast<std::uint64_t>(dim);
  }
  if (size > cap) return std::nullopt;
  return size;
}

// Coefficient row of a per-party choice of labels: 1 at each chosen variable.
std::vector<std::int64_t> choice_row(const CongruenceSystem& sys,
                                     const std::vector<std::string>& choice) {
  if (static_cast<int>(choice.size()) != sys.parties)
    throw std::invalid_argument("choice length does not match party count");
  std::vector<std::int64_t> row(sys.variables(), 0);
  for (int l = 0; l < sys.parties; ++l)
    row[sys.var_index(l, menu_index(sys.menu, choice[l]))] += 1;
  return row;
}

// Walks every assignment of exponents to variables in lexicographic order,
// maintaining all row sums incrementally: the modulus equals dim, so each
// digit step (wrap included) adds the variable's coefficient once mod N.
// The visitor gets the flat assignment and whether all rows hit their rhs;
// returning false stops the walk.
template <typename Visitor>
void walk_assignments(int dim, const std::vector<std::vector<std::int64_t>>& rows,
                      const std::vector<std::int64_t>& rhs, std::size_t vars,
                      Visitor&& visit) {
  const std::int64_t n = dim;
  const std::size_t nrows = rows.size();

  // nonzero coefficients per variable
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> touched(vars);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t v = 0; v < vars; ++v) {
      std::int64_t c = mod_reduce(rows[r][v], n);
      if (c != 0) touched[v].push_back({r, c});
    }

  std::vector<std::int64_t> target(nrows);
  for (std::size_t r = 0; r < nrows; ++r) target[r] = mod_reduce(rhs[r], n);
  std::vector<std::int64_t> sums(nrows, 0);
  std::size_t unsatisfied = 0;
  for (std::size_t r = 0; r < nrows; ++r)
    if (sums[r] != target[r]) ++unsatisfied;

  std::vector<int> assignment(vars, 0);
  auto bump = [&](std::size_t v) {
    for (auto& [r, c] : touched[v]) {
      if (sums[r] == target[r]) ++unsatisfied;
      sums[r] += c;
      if (sums[r] >= n) sums[r] -= n;
      if (sums[r] == target[r]) --unsatisfied;
    }
  };

  while (true) {
    if (!visit(assignment, unsatisfied == 0)) return;
    std::size_t v = vars;
    while (v > 0) {
      --v;
      bump(v);
      if (++assignment[v] < dim) break;
      assignment[v] = 0;
      if (v == 0) return;
    }
    if (vars == 0) return;
  }
}

LhvStrategy strategy_from_flat(int dim, int parties, const std::vector<std::string>& menu,
                               const std::vector<int>& flat) {
  LhvStrategy s;
  s.dim = dim;
  s.menu = menu;
  s.assignments.assign(static_cast<std::size_t>(parties),
                       std::vector<int>(menu.size(), 0));
  for (int l = 0; l < parties; ++l)
    for (std::size_t j = 0; j < menu.size(); ++j)
      s.assignments[l][j] = flat[static_cast<std::size_t>(l) * menu.size() + j];
  return s;
}

}  // namespace

bool SolutionCount::fits_uint64() const {
  std::uint64_t acc = 1;
  for (std::int64_t f : factors_) {
    if (f == 0) return true;
    if (acc > UINT64_MAX / static_cast<std::uint64_t>(f)) return false;
    acc *= static_cast<std::uint64_t>(f);
  }
  return true;
}

std::uint64_t SolutionCount::as_uint64() const {
  if (!fits_uint64()) throw std::overflow_error("solution count exceeds 64 bits");
  std::uint64_t acc = 1;
  for (std::int64_t f : factors_) {
    if (f == 0) return 0;
    acc *= static_cast<std::uint64_t>(f);
  }
  return acc;
}

std::string SolutionCount::decimal() const {
  // base 10^9 limbs, little endian
  std::vector<std::uint64_t> limbs{1};
  constexpr std::uint64_t kBase = 1'000'000'000;
  for (std::int64_t f : factors_) {
    std::uint64_t carry = 0;
    for (std::uint64_t& limb : limbs) {
      std::uint64_t value = limb * static_cast<std::uint64_t>(f) + carry;
      limb = value % kBase;
      carry = value / kBase;
    }
    while (carry != 0) {
      limbs.push_back(carry % kBase);
      carry /= kBase;
    }
  }
  std::string out = std::to_string(limbs.back());
  for (std::size_t i = limbs.size() - 1; i-- > 0;) {
    std::string part = std::to_string(limbs[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

BellValue strategy_value(const LhvStrategy& strategy, const std::vector<std::string>& choice) {
  if (choice.size() != strategy.assignments.size())
    throw std::invalid_argument("choice length does not match party count");
  int exponent = 0;
  for (std::size_t l = 0; l < choice.size(); ++l) {
    std::size_t s = menu_index(strategy.menu, choice[l]);
    exponent = (exponent + strategy.assignments[l][s]) % strategy.dim;
  }
  return BellValue{exponent, strategy.dim};
}

CongruenceSystem to_congruences(int dim, int parties, const std::vector<std::string>& menu,
                                const std::vector<ProductConstraint>& constraints) {
  check_problem_shape(dim, parties, menu);
  CongruenceSystem sys;
  sys.modulus = dim;
  sys.parties = parties;
  sys.menu = menu;
  for (const ProductConstraint& constraint : constraints) {
    sys.rows.push_back(choice_row(sys, constraint.choice));
    sys.rhs.push_back(mod_reduce(constraint.exponent, dim));
  }
  return sys;
}

SolutionSet solve_congruences(const CongruenceSystem& system) {
  const std::int64_t n = system.modulus;
  if (n < 2) throw std::invalid_argument("solve_congruences: modulus must be >= 2");
  const std::size_t nrows = system.rows.size();
  const std::size_t vars = system.variables();

  // Working copies reduced mod n. Adding multiples of n to entries never
  // changes the solution set, so reductions may be interleaved freely with
  // the unimodular operations below.
  std::vector<std::vector<std::int64_t>> a(nrows);
  for (std::size_t i = 0; i < nrows; ++i) {
    if (system.rows[i].size() != vars)
      throw std::invalid_argument("congruence row has wrong width");
    a[i].resize(vars);
    for (std::size_t j = 0; j < vars; ++j) a[i][j] = mod_reduce(system.rows[i][j], n);
  }
  std::vector<std::int64_t> b(nrows);
  for (std::size_t i = 0; i < nrows; ++i) b[i] = mod_reduce(system.rhs[i], n);

  // x = vmap * y, column operations mirrored on vmap's columns.
  std::vector<std::vector<std::int64_t>> vmap(vars, std::vector<std::int64_t>(vars, 0));
  for (std::size_t j = 0; j < vars; ++j) vmap[j][j] = 1;

  const std::size_t limit = std::min(nrows, vars);
  std::size_t rank = 0;
  for (std::size_t t = 0; t < limit; ++t) {
    // pivot: any nonzero residue in the remaining submatrix
    std::size_t pi = nrows, pj = vars;
    for (std::size_t i = t; i < nrows && pi == nrows; ++i)
      for (std::size_t j = t; j < vars; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == nrows) break;
    std::swap(a[t], a[pi]);
    std::swap(b[t], b[pi]);
    if (pj != t) {
      for (std::size_t i = 0; i < nrows; ++i) std::swap(a[i][t], a[i][pj]);
      for (std::size_t r = 0; r < vars; ++r) std::swap(vmap[r][t], vmap[r][pj]);
    }

    // Clear row t and column t. A gcd step shrinks the pivot strictly, a
    // divisible step leaves the already-cleared part untouched, so the loop
    // terminates.
    while (true) {
      for (std::size_t i = t + 1; i < nrows; ++i) {
        if (a[i][t] == 0) continue;
        std::int64_t piv = a[t][t], entry = a[i][t];
        if (entry % piv == 0) {
          std::int64_t k = entry / piv;
          for (std::size_t j = t; j < vars; ++j)
            a[i][j] = mod_reduce(a[i][j] - k * a[t][j], n);
          b[i] = mod_reduce(b[i] - k * b[t], n);
        } else {
          std::int64_t p, q;
          std::int64_t g = xgcd(piv, entry, p, q);
          std::int64_t sp = piv / g, se = entry / g;
          for (std::size_t j = t; j < vars; ++j) {
            std::int64_t rt = a[t][j], ri = a[i][j];
            a[t][j] = mod_reduce(p * rt + q * ri, n);
            a[i][j] = mod_reduce(sp * ri - se * rt, n);
          }
          std::int64_t bt = b[t], bi = b[i];
          b[t] = mod_reduce(p * bt + q * bi, n);
          b[i] = mod_reduce(sp * bi - se * bt, n);
        }
      }
      for (std::size_t j = t + 1; j < vars; ++j) {
        if (a[t][j] == 0) continue;
        std::int64_t piv = a[t][t], entry = a[t][j];
        if (entry % piv == 0) {
          std::int64_t k = entry / piv;
          for (std::size_t i = t; i < nrows; ++i)
            a[i][j] = mod_reduce(a[i][j] - k * a[i][t], n);
          for (std::size_t r = 0; r < vars; ++r)
            vmap[r][j] = mod_reduce(vmap[r][j] - k * vmap[r][t], n);
        } else {
          std::int64_t p, q;
          std::int64_t g = xgcd(piv, entry, p, q);
          std::int64_t sp = piv / g, se = entry / g;
          for (std::size_t i = t; i < nrows; ++i) {
            std::int64_t ct = a[i][t], cj = a[i][j];
            a[i][t] = mod_reduce(p * ct + q * cj, n);
            a[i][j] = mod_reduce(sp * cj - se * ct, n);
          }
          for (std::size_t r = 0; r < vars; ++r) {
            std::int64_t ct = vmap[r][t], cj = vmap[r][j];
            vmap[r][t] = mod_reduce(p * ct + q * cj, n);
            vmap[r][j] = mod_reduce(sp * cj - se * ct, n);
          }
        }
      }
      bool clear = true;
      for (std::size_t i = t + 1; i < nrows && clear; ++i)
        if (a[i][t] != 0) clear = false;
      for (std::size_t j = t + 1; j < vars && clear; ++j)
        if (a[t][j] != 0) clear = false;
      if (clear) break;
    }
    ++rank;
  }

  SolutionSet solution;
  auto inconsistent = [] {
    SolutionSet empty;
    empty.count.multiply(0);
    return empty;
  };

  // Decoupled scalar congruences d_i * y_i = b_i (mod n).
  std::vector<std::int64_t> y(vars, 0);
  std::vector<std::pair<std::size_t, std::int64_t>> kernel_scalars;  // (y index, step)
  for (std::size_t i = 0; i < rank; ++i) {
    std::int64_t d = a[i][i];
    std::int64_t g = std::gcd(d, n);
    if (b[i] % g != 0) return inconsistent();
    std::int64_t np = n / g;
    y[i] = mod_reduce((b[i] / g) * mod_inverse(d / g, np), np);
    solution.count.multiply(g);
    if (g > 1) kernel_scalars.push_back({i, np});
  }
  for (std::size_t i = rank; i < nrows; ++i)
    if (b[i] != 0) return inconsistent();  // zero row with nonzero rhs
  for (std::size_t j = rank; j < vars; ++j) {
    solution.count.multiply(n);
    kernel_scalars.push_back({j, 1});
  }

  solution.consistent = true;

  std::vector<int> particular_flat(vars, 0);
  for (std::size_t r = 0; r < vars; ++r) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < vars; ++i)
      if (y[i] != 0) acc = mod_reduce(acc + vmap[r][i] * y[i], n);
    particular_flat[r] = static_cast<int>(acc);
  }
  solution.particular =
      strategy_from_flat(static_cast<int>(n), system.parties, system.menu, particular_flat);

  for (auto& [index, step] : kernel_scalars) {
    std::vector<int> gen(vars, 0);
    for (std::size_t r = 0; r < vars; ++r)
      gen[r] = static_cast<int>(mod_reduce(vmap[r][index] * step, n));
    solution.kernel_basis.push_back(std::move(gen));
  }
  return solution;
}

std::vector<LhvStrategy> enumerate_consistent(int dim, int parties,
                                              const std::vector<std::string>& menu,
                                              const std::vector<ProductConstraint>& constraints,
                                              std::uint64_t cap) {
  CongruenceSystem sys = to_congruences(dim, parties, menu, constraints);
  if (!strategy_space(dim, sys.variables(), cap))
    throw EnumerationCapExceeded(
        "strategy space " + std::to_string(dim) + "^" + std::to_string(sys.variables()) +
        " exceeds the cap of " + std::to_string(cap) + "; use solve_congruences instead");
  std::vector<LhvStrategy> out;
  walk_assignments(dim, sys.rows, sys.rhs, sys.variables(),
                   [&](const std::vector<int>& flat, bool consistent) {
                     if (consistent) out.push_back(strategy_from_flat(dim, parties, menu, flat));
                     return true;
                   });
  return out;
}

std::uint64_t count_consistent(int dim, int parties, const std::vector<std::string>& menu,
                               const std::vector<ProductConstraint>& constraints,
                               std::uint64_t cap) {
  CongruenceSystem sys = to_congruences(dim, parties, menu, constraints);
  if (!strategy_space(dim, sys.variables(), cap))
    throw EnumerationCapExceeded(
        "strategy space " + std::to_string(dim) + "^" + std::to_string(sys.variables()) +
        " exceeds the cap of " + std::to_string(cap) + "; use solve_congruences instead");
  std::uint64_t count = 0;
  walk_assignments(dim, sys.rows, sys.rhs, sys.variables(),
                   [&](const std::vector<int>&, bool consistent) {
                     if (consistent) ++count;
                     return true;
                   });
  return count;
}

std::set<int> achievable_values_enumerated(int dim, int parties,
                                           const std::vector<std::string>& menu,
                                           const std::vector<ProductConstraint>& constraints,
                                           const std::vector<std::string>& probe,
                                           std::uint64_t cap) {
  CongruenceSystem sys = to_congruences(dim, parties, menu, constraints);
  if (!strategy_space(dim, sys.variables(), cap))
    throw EnumerationCapExceeded(
        "strategy space " + std::to_string(dim) + "^" + std::to_string(sys.variables()) +
        " exceeds the cap of " + std::to_string(cap) + "; use solve_congruences instead");

  std::vector<std::int64_t> probe_row = choice_row(sys, probe);
  std::set<int> values;
  walk_assignments(dim, sys.rows, sys.rhs, sys.variables(),
                   [&](const std::vector<int>& flat, bool consistent) {
                     if (consistent) {
                       std::int64_t sum = 0;
                       for (std::size_t v = 0; v < flat.size(); ++v)
                         sum += probe_row[v] * flat[v];
                       values.insert(static_cast<int>(mod_reduce(sum, dim)));
                     }
                     // once every exponent has appeared the set cannot grow
                     return values.size() < static_cast<std::size_t>(dim);
                   });
  return values;
}

std::set<int> achievable_values(int dim, int parties, const std::vector<std::string>& menu,
                                const std::vector<ProductConstraint>& constraints,
                                const std::vector<std::string>& probe, std::uint64_t cap) {
  CongruenceSystem sys = to_congruences(dim, parties, menu, constraints);
  std::vector<std::int64_t> probe_row = choice_row(sys, probe);
  SolutionSet sol = solve_congruences(sys);

  std::set<int> values;
  if (sol.consistent) {
    const std::int64_t n = dim;
    std::int64_t base = 0;
    const LhvStrategy& part = *sol.particular;
    for (int l = 0; l < parties; ++l)
      for (std::size_t s = 0; s < menu.size(); ++s)
        base += probe_row[sys.var_index(l, s)] * part.assignments[l][s];
    base = mod_reduce(base, n);

    // Image of the solution subgroup under the probe row is the cyclic group
    // generated by the gcd of the generators' probe values.
    std::int64_t g = n;
    for (const std::vector<int>& gen : sol.kernel_basis) {
      std::int64_t val = 0;
      for (std::size_t v = 0; v < gen.size(); ++v) val += probe_row[v] * gen[v];
      g = std::gcd(g, mod_reduce(val, n));
    }
    for (std::int64_t t = 0; t < n / g; ++t)
      values.insert(static_cast<int>(mod_reduce(base + t * g, n)));
  }

  if (strategy_space(dim, sys.variables(), cap)) {
    std::set<int> enumerated =
        achievable_values_enumerated(dim, parties, menu, constraints, probe, cap);
    if (enumerated != values)
      throw std::logic_error(
          "achievable_values: algebraic and enumerated solver paths disagree");
  }
  return values;
}

Complex mixture_correlation(const std::vector<std::pair<LhvStrategy, double>>& weighted,
                            const std::vector<std::string>& choice) {
  double total = 0.0;
  for (const auto& [strategy, weight] : weighted) {
    if (weight < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixture weights must sum to 1");
  Complex expectation(0.0, 0.0);
  for (const auto& [strategy, weight] : weighted)
    expectation += weight * strategy_value(strategy, choice).value();
  return expectation;
}

}  // namespace ghz
