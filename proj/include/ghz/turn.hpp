#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace ghz {

using Complex = std::complex<double>;

// Angle stored exactly as a rational fraction of a full turn: the value
// (num/den) * 2*pi radians, canonicalized so that den >= 1, 0 <= num < den
// and gcd(num, den) = 1. Two Turns are equal iff their canonical pairs are.
//
// All setting-level phase arithmetic stays in this representation; conversion
// to floating complex happens only at evaluation time.
class Turn {
 public:
  // Largest representable denominator. Results that would need more are
  // reported as overflow instead of being wrapped.
  static constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 31;

  constexpr Turn() = default;  // zero angle, canonical 0/1

  // (num/den) of a full turn, reduced modulo one turn. den must be in
  // [1, kMaxDenominator].
  static Turn fraction(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Turn operator+(Turn rhs) const;
  Turn operator-() const;
  Turn operator-(Turn rhs) const { return *this + (-rhs); }
  Turn& operator+=(Turn rhs) { return *this = *this + rhs; }

  // k * angle, reduced modulo one turn. Never overflows: k acts through its
  // residue modulo den.
  Turn scaled(std::int64_t k) const;

  // exp(2*pi*i * num/den)
  Complex to_complex() const;

  // The exponent e in [0, n) with angle == e/n exactly, when the angle is an
  // n-th root of unity; empty otherwise. n >= 1.
  std::optional<std::int64_t> root_exponent(std::int64_t n) const;

  std::string str() const;  // "num/den"

  // Accepts "p/q" (q > 0) or a bare integer p, with optional sign on p.
  static Turn parse(const std::string& text);

  bool operator==(const Turn&) const = default;

 private:
  constexpr Turn(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ghz
