#include <doctest.h>

#include <random>

#include "ghz/turn.hpp"

using ghz::Complex;
using ghz::Turn;

namespace {

Turn random_turn(std::mt19937_64& rng, std::int64_t max_den = 64) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, max_den);
  std::int64_t den = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(-3 * max_den, 3 * max_den);
  return Turn::fraction(num_dist(rng), den);
}

}  // namespace

TEST_CASE("fraction canonicalizes") {
  CHECK(Turn::fraction(1, 2) == Turn::fraction(1, 2));
  CHECK(Turn::fraction(3, 6) == Turn::fraction(1, 2));
  CHECK(Turn::fraction(-1, 4) == Turn::fraction(3, 4));
  CHECK(Turn::fraction(7, 7) == Turn{});
  CHECK(Turn::fraction(-9, 4).num() == 3);
  CHECK(Turn::fraction(-9, 4).den() == 4);
}

TEST_CASE("fraction rejects bad denominators") {
  CHECK_THROWS_AS(Turn::fraction(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Turn::fraction(1, -3), std::invalid_argument);
  CHECK_THROWS_AS(Turn::fraction(1, Turn::kMaxDenominator + 1), std::invalid_argument);
  CHECK_NOTHROW(Turn::fraction(1, Turn::kMaxDenominator));
}

TEST_CASE("addition wraps modulo one turn") {
  CHECK(Turn::fraction(1, 3) + Turn::fraction(1, 3) == Turn::fraction(2, 3));
  CHECK(Turn::fraction(1, 2) + Turn::fraction(1, 2) == Turn{});
  CHECK(Turn::fraction(5, 6) + Turn::fraction(1, 3) == Turn::fraction(1, 6));
}

TEST_CASE("addition reports denominator overflow") {
  Turn a = Turn::fraction(1, Turn::kMaxDenominator);
  Turn b = Turn::fraction(1, Turn::kMaxDenominator - 1);
  CHECK_THROWS_AS(a + b, std::overflow_error);
}

TEST_CASE("scaling") {
  CHECK(Turn::fraction(1, 3).scaled(3) == Turn{});
  CHECK(Turn::fraction(1, 4).scaled(2) == Turn::fraction(1, 2));
  CHECK(Turn::fraction(1, 6).scaled(-1) == Turn::fraction(5, 6));
  CHECK(Turn::fraction(3, 7).scaled(1000000007) == Turn::fraction(3, 7).scaled(1000000007 % 7));
}

TEST_CASE("to_complex hits the axes and the unit circle") {
  CHECK(std::abs(Turn{}.to_complex() - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(Turn::fraction(1, 4).to_complex() - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(Turn::fraction(1, 3).to_complex() -
                 Complex(-0.5, std::sqrt(3.0) / 2.0)) < 1e-12);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i)
    CHECK(std::abs(std::abs(random_turn(rng).to_complex()) - 1.0) < 1e-12);
}

TEST_CASE("root_exponent classifies roots of unity exactly") {
  CHECK(Turn::fraction(1, 3).root_exponent(3) == 1);
  CHECK(!Turn::fraction(1, 2).root_exponent(3).has_value());
  CHECK(Turn::fraction(2, 5).root_exponent(5) == 2);
  CHECK(Turn::fraction(1, 2).root_exponent(4) == 2);

  for (std::int64_t n = 1; n <= 64; ++n)
    for (std::int64_t e = 0; e < n; ++e)
      CHECK(Turn::fraction(e, n).root_exponent(n) == e);
}

TEST_CASE("group structure on canonical forms") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Turn a = random_turn(rng), b = random_turn(rng), c = random_turn(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + Turn{} == a);
    CHECK(a + (-a) == Turn{});
    CHECK(a - b == a + (-b));
  }
}

TEST_CASE("to_complex is a homomorphism into the circle group") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    Turn a = random_turn(rng), b = random_turn(rng);
    Complex lhs = (a + b).to_complex();
    Complex rhs = a.to_complex() * b.to_complex();
    CHECK(std::abs(lhs.real() - rhs.real()) < 1e-12);
    CHECK(std::abs(lhs.imag() - rhs.imag()) < 1e-12);
  }
}

TEST_CASE("text form round-trips") {
  CHECK(Turn::fraction(1, 6).str() == "1/6");
  CHECK(Turn{}.str() == "0/1");
  CHECK(Turn::parse("1/6") == Turn::fraction(1, 6));
  CHECK(Turn::parse("-1/4") == Turn::fraction(3, 4));
  CHECK(Turn::parse("0") == Turn{});
  CHECK(Turn::parse("2") == Turn{});
  CHECK(Turn::parse("+3/9") == Turn::fraction(1, 3));
  CHECK_THROWS_AS(Turn::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Turn::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(Turn::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Turn::parse("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(Turn::parse("a/b"), std::invalid_argument);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    Turn t = random_turn(rng);
    CHECK(Turn::parse(t.str()) == t);
  }
}
