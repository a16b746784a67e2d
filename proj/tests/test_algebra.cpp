#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "wff/algebra.hpp"

using namespace wff;
using Catch::Approx;

namespace {

const std::vector<Int> kCantor{0, 2};

// Independent oracle: direct complex evaluation of sum exp(2 pi i e / q).
bool numerically_zero(const std::vector<Int>& exps, Int q) {
  Complex sum{0.0, 0.0};
  for (Int e : exps) sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(q));
  return std::abs(sum) < 1e-9;
}

}  // namespace

TEST_CASE("rationals are normalized and print as p or p/q") {
  CHECK(to_string(Rational(4, 8)) == "1/2");
  CHECK(to_string(Rational(-6, 3)) == "-2");
  CHECK(to_string(parse_rational("3/-4")) == "-3/4");
  CHECK(parse_rational("-161/2") == Rational(-161, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("10/-4") == Rational(-5, 2));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(mod_floor(-1, 4) == 3);
  CHECK(mod_floor(9, 4) == 1);
}

TEST_CASE("mb_value on the scale-4 Cantor digits") {
  CHECK(std::abs(mb_value(0.0, kCantor) - Complex{1, 0}) < 1e-15);
  CHECK(std::abs(mb_value(Rational(1, 8), kCantor) - Complex{0.5, 0.5}) < 1e-15);
  CHECK(std::abs(mb_value(Rational(1, 4), kCantor)) < 1e-15);
  CHECK(std::abs(mb_value(0.125, kCantor) - Complex{0.5, 0.5}) < 1e-15);
}

TEST_CASE("roots_of_unity_sum_is_zero examples") {
  CHECK(roots_of_unity_sum_is_zero(std::vector<Int>{0, 2}, 4));
  CHECK(roots_of_unity_sum_is_zero(std::vector<Int>{0, 1, 2}, 3));
  CHECK_FALSE(roots_of_unity_sum_is_zero(std::vector<Int>{0, 1}, 4));
  CHECK_THROWS_AS(roots_of_unity_sum_is_zero(std::vector<Int>{0}, 0), std::invalid_argument);
  // 1 + z^2 + z^4 vanishes for q = 6, exponents reduced modulo q
  CHECK(roots_of_unity_sum_is_zero(std::vector<Int>{-6, 8, 16}, 6));
  CHECK(roots_of_unity_sum_is_zero(std::vector<Int>{}, 5));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPoly{-1, 1});
  CHECK(cyclotomic(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic(6) == IntPoly{1, -1, 1});
  CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2
  const auto& p = cyclotomic(105);
  CHECK(p.size() == 49);
  CHECK(std::count(p.begin(), p.end(), -2) == 2);
}

TEST_CASE("mb_is_zero and mb_is_unimodular examples") {
  CHECK(mb_is_zero(Rational(1, 4), kCantor));
  CHECK(mb_is_zero(Rational(-3, 4), kCantor));
  CHECK_FALSE(mb_is_zero(Rational(1, 8), kCantor));
  CHECK_FALSE(mb_is_zero(Rational(0), kCantor));

  CHECK(mb_is_unimodular(Rational(-1, 2), kCantor));
  CHECK(mb_is_unimodular(Rational(-1), kCantor));
  CHECK_FALSE(mb_is_unimodular(Rational(1, 8), kCantor));
  // oracle for the last one: |m_B(1/8)| = sqrt(2)/2 by direct evaluation
  CHECK(std::abs(mb_value(0.125, kCantor)) == Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
  CHECK_THROWS_AS(mb_is_unimodular(Rational(1, 2), std::vector<Int>{1, 3}), std::invalid_argument);
}

TEST_CASE("exact zero test agrees with numeric evaluation on random rationals") {
  std::mt19937_64 rng(20241);
  std::uniform_int_distribution<Int> qdist(1, 64), pdist(-500, 500), ddist(-12, 12), ndist(1, 5);
  int zeros = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Int> B{0};
    const int extra = static_cast<int>(ndist(rng));
    for (int i = 0; i < extra; ++i) B.push_back(ddist(rng));
    const Rational x(pdist(rng), qdist(rng));
    const Complex v = mb_value(x, B);
    const bool exact = mb_is_zero(x, B);
    zeros += exact;
    INFO("x = " << to_string(x) << " |m| = " << std::abs(v));
    CHECK(exact == (std::abs(v) < 1e-9));
    CHECK(std::abs(v) <= 1.0 + 1e-12);
    // periodicity under x -> x + 1
    CHECK(std::abs(mb_value(Rational(x + 1), B) - v) < 1e-9);
    CHECK(mb_is_zero(Rational(x + 1), B) == exact);
  }
  INFO("zeros " << zeros);
  CHECK(zeros > 10);
}

TEST_CASE("roots_of_unity_sum_is_zero agrees with numeric evaluation") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Int> qdist(1, 40), edist(-100, 100), ndist(1, 8);
  int zeros = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Int q = qdist(rng);
    std::vector<Int> exps;
    const auto n = ndist(rng);
    for (Int i = 0; i < n; ++i) exps.push_back(edist(rng));
    const bool exact = roots_of_unity_sum_is_zero(exps, q);
    zeros += exact;
    CHECK(exact == numerically_zero(exps, q));
  }
  // structured vanishing sums: unions of full cosets
  for (Int q = 2; q <= 60; ++q)
    for (Int d = 2; d <= q; ++d) {
      if (q % d) continue;
      std::vector<Int> exps;
      for (Int j = 0; j < d; ++j) exps.push_back(3 + j * (q / d));
      CHECK(roots_of_unity_sum_is_zero(exps, q));
    }
  CHECK(zeros > 0);
}

TEST_CASE("large denominators use the degree bound") {
  // span of B is 2, so no vanishing for q > 8 at all
  CHECK_FALSE(mb_is_zero(Rational(1, 1'000'003), kCantor));
  CHECK(mb_is_zero(Rational(1'000'001, 4), kCantor));
}
