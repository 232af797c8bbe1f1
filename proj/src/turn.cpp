#include "ghz/turn.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ghz {

Turn Turn::fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("Turn: denominator must be positive");
  if (den > kMaxDenominator)
    throw std::invalid_argument("Turn: denominator exceeds 2^31 cap");
  std::int64_t r = num % den;
  if (r < 0) r += den;
  std::int64_t g = std::gcd(r, den);
  return Turn(r / g, den / g);
}

Turn Turn::operator+(Turn rhs) const {
  // lcm fits in int64 (both dens <= 2^31) but the reduced result must obey
  // the denominator cap.
  std::int64_t g0 = std::gcd(den_, rhs.den_);
  std::int64_t lcm = den_ / g0 * rhs.den_;
  std::int64_t sum = num_ * (lcm / den_) + rhs.num_ * (lcm / rhs.den_);
  std::int64_t r = sum % lcm;
  std::int64_t g = std::gcd(r, lcm);
  std::int64_t den = lcm / g;
  if (den > kMaxDenominator)
    throw std::overflow_error("Turn: sum denominator exceeds 2^31 cap");
  return Turn(r / g, den);
}

Turn Turn::operator-() const {
  if (num_ == 0) return *this;
  return Turn(den_ - num_, den_);  // gcd(den-num, den) == gcd(num, den) == 1
}

Turn Turn::scaled(std::int64_t k) const {
  std::int64_t kr = k % den_;
  if (kr < 0) kr += den_;
  return fraction(kr * num_, den_);  // kr * num < den^2 <= 2^62
}

Complex Turn::to_complex() const {
  double theta = 2.0 * std::numbers::pi * (static_cast<double>(num_) / static_cast<double>(den_));
  return Complex(std::cos(theta), std::sin(theta));
}

std::optional<std::int64_t> Turn::root_exponent(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("Turn::root_exponent: order must be >= 1");
  if (n % den_ != 0) return std::nullopt;
  return num_ * (n / den_);
}

std::string Turn::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Turn Turn::parse(const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&text]() -> Turn {
    throw std::invalid_argument("Turn: expected 'p/q' or integer, got \"" + text + "\"");
  };

  auto read_int = [&](bool allow_sign) -> std::int64_t {
    bool neg = false;
    if (allow_sign && pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail();
    std::int64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > kMaxDenominator) throw std::invalid_argument("Turn: literal exceeds 2^31 cap");
      ++pos;
    }
    return neg ? -value : value;
  };

  std::int64_t num = read_int(true);
  std::int64_t den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    den = read_int(false);
  }
  if (pos != text.size()) fail();
  return fraction(num, den);
}

}  // namespace ghz
