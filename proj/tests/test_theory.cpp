#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "test_support.hpp"

using namespace wff;
using namespace wff::testing;
using namespace wff::theory;

TEST_CASE("the 1-and-3 residue screen") {
  CHECK(prop42_no_nontrivial(std::vector<Int>{0, 5, 3}));
  CHECK_FALSE(prop42_no_nontrivial(std::vector<Int>{0, 3, 15}));
  CHECK(prop42_no_nontrivial(std::vector<Int>{0, 1, 7}));
  CHECK_THROWS_AS(prop42_no_nontrivial(FrameSystem(3, {0, 1, 2}, {0, 1, 2}, {{1, 0}, {1, 0}, {1, 0}})),
                  std::invalid_argument);
}

TEST_CASE("screen consistency on random L") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<Int> pick(0, 124);
  for (int trial = 0; trial < 50; ++trial) {
    const Int a = 1 + 4 * pick(rng);
    const Int b = 3 + 4 * pick(rng);
    const auto sys = with_solved_weights(4, {0, 2}, {0, a, b});
    REQUIRE(prop42_no_nontrivial(sys));
    const auto sets = find_min_sets(sys);
    INFO("L = {0, " << a << ", " << b << "}");
    REQUIRE(sets.size() == 1);
    CHECK(sets[0].points == rationals({0}));
  }
}

TEST_CASE("residue decomposition and the necessary condition") {
  const auto d = decompose_residues(3, 15);
  CHECK(d.a0 == 3);
  CHECK(d.a1 == 0);
  CHECK(d.b1 == 3);
  CHECK(3 == d.a0 + 4 * d.a1 + 16 * d.k);
  CHECK(15 == d.a0 + 4 * d.b1 + 16 * d.l);
  CHECK(prop43_necessary(3, 15));
  CHECK(prop43_necessary(3, 207));
  CHECK(decompose_residues(3, 207).b1 == 3);
  CHECK_FALSE(prop43_necessary(3, 11));
  CHECK_THROWS(decompose_residues(3, 5));
  for (Int a = -60; a <= 60; ++a)
    for (Int b = a - 64; b <= a + 64; b += 4) {
      const auto r = decompose_residues(a, b);
      CHECK(a == r.a0 + 4 * r.a1 + 16 * r.k);
      CHECK(b == r.a0 + 4 * r.b1 + 16 * r.l);
    }
}

TEST_CASE("necessity on every non-trivial min-set with a = b mod 4") {
  std::mt19937_64 rng(6);
  std::vector<std::pair<Int, Int>> pairs;
  for (int r = 2; r <= 4; ++r)
    for (const auto& g : cor47_generate_b(r)) pairs.emplace_back(3, g.b);
  for (int trial = 0; trial < 120; ++trial) {
    const Int a0 = std::uniform_int_distribution<Int>(1, 3)(rng);
    pairs.emplace_back(a0 + 4 * std::uniform_int_distribution<Int>(0, 15)(rng),
                       a0 + 4 * std::uniform_int_distribution<Int>(0, 60)(rng));
  }
  int nontrivial_seen = 0;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    const Int a0 = mod_floor(a, 4);
    const auto sol = solve_weight_magnitudes(4, {0, 2}, {0, a, b});
    if (!sol.feasible) continue;
    const auto sys = with_solved_weights(4, {0, 2}, {0, a, b});
    for (const auto& m : find_min_sets(sys)) {
      if (!m.nontrivial()) continue;
      ++nontrivial_seen;
      INFO("L = {0, " << a << ", " << b << "}");
      CHECK(prop43_necessary(a, b));
      for (const auto& p : m.points) {
        REQUIRE(is_integer(p));
        const Int x = numerator(p).convert_to<Int>();
        CHECK((mod_floor(x, 4) == 0 || mod_floor(x, 4) == a0));
      }
    }
  }
  CHECK(nontrivial_seen > 0);
}

TEST_CASE("generated b values") {
  const auto two = cor47_generate_b(2);
  REQUIRE(two.size() == 4);
  std::map<std::string, Int> by_digits;
  for (const auto& g : two) by_digits[g.digits] = g.b;
  CHECK(by_digits.at("03") == 15);
  CHECK(by_digits.at("30") == 51);
  CHECK(by_digits.at("00") == 63);
  for (const auto& g : cor47_generate_b(3))
    if (g.digits == "330") CHECK(g.b == 195);
  CHECK(cor47_generate_b(3).size() == 8);
  CHECK_THROWS(cor47_generate_b(0));
}

TEST_CASE("form check") {
  const auto w13 = cor47_form_check(-13);
  REQUIRE(w13);
  CHECK(w13->n == 2);
  CHECK(w13->digits == std::vector<Int>{3, 0});
  const auto w1 = cor47_form_check(-1);
  REQUIRE(w1);
  CHECK(w1->n == 0);
  CHECK_FALSE(cor47_form_check(-2));
  for (Int x = -300; x <= 0; ++x)
    if (const auto w = cor47_form_check(x)) {
      Int v = -(Int{1} << (2 * w->n));
      for (int i = 0; i < w->n; ++i) v += w->digits[static_cast<std::size_t>(i)] * (Int{1} << (2 * i));
      CHECK(v == x);
    }
}

TEST_CASE("form necessity for every generated b") {
  for (int r = 1; r <= 3; ++r)
    for (const auto& g : cor47_generate_b(r)) {
      CHECK(g.b % 3 == 0);
      const auto sys = three_digit(g.b);
      for (const auto& m : find_min_sets(sys)) {
        if (!m.nontrivial()) continue;
        for (const auto& p : m.points) {
          INFO("b = " << g.b << " point " << to_string(p));
          REQUIRE(is_integer(p));
          CHECK(cor47_form_check(numerator(p).convert_to<Int>()));
        }
      }
    }
}

TEST_CASE("power-of-four min-sets") {
  CHECK(prop49_minset(1).points == rationals({-1, -4}));
  CHECK(prop49_minset(2).points == rationals({-1, -4, -16}));
  CHECK(prop49_minset(3).points == rationals({-1, -4, -16, -64}));
  CHECK(prop49_system(2).L() == std::vector<Int>{0, 3, 63});
}

TEST_CASE("pre-extreme decomposition") {
  const auto sys = cantor_0_3_15();
  const std::vector<Int> sub3{0, 3};
  const auto d = thm46_decompose(sys, Rational(-4), sub3);
  CHECK(d.c == -1);
  CHECK(recompose(d) == -4);

  const auto s51 = three_digit(51);
  const auto d13 = thm46_decompose(s51, Rational(-13), sub3);
  CHECK(d13.c == -1);
  CHECK(d13.digits.str() == "3 0");
  CHECK(d13.n == 2);
  CHECK(recompose(d13) == -13);

  const auto d1 = thm46_decompose(sys, Rational(-1), sub3);
  CHECK(d1.c == -1);
  CHECK(d1.digits.empty());
  CHECK(d1.n == 0);

  const auto s195 = three_digit(195);
  const auto d49 = thm46_decompose(s195, Rational(-49), sub3);
  CHECK(d49.c == -1);
  CHECK(d49.digits.str() == "3 3 0");
  CHECK(recompose(d49) == Rational(-49));

  CHECK_THROWS_AS(thm46_decompose(sys, Rational(-1), std::vector<Int>{3, 15}), std::invalid_argument);
  CHECK_THROWS_AS(thm46_decompose(sys, Rational(1, 8), sub3), std::domain_error);
}

TEST_CASE("decomposition identity on every discovered min-set point") {
  for (int r = 1; r <= 3; ++r)
    for (const auto& g : cor47_generate_b(r)) {
      const auto sys = three_digit(g.b);
      for (const auto& m : find_min_sets(sys))
        for (const auto& p : m.points)
          for (const std::vector<Int> sub : {std::vector<Int>{0, 3}, std::vector<Int>{0, g.b}}) {
            INFO("b = " << g.b << " x0 = " << to_string(p) << " a = " << sub[1]);
            const auto d = thm46_decompose(sys, p, sub);
            CHECK(recompose(d) == p);
            CHECK(mb_is_unimodular(d.c, sys.B()));
            CHECK(d.n == static_cast<int>(d.digits.size()));
          }
    }
}

TEST_CASE("witness chains for b = 207 and b = 243") {
  const auto s207 = three_digit(207);
  CHECK(transition_possible(s207, Rational(-1), 207));
  CHECK(transition_map(s207, Rational(-1), 207) == -52);
  CHECK(transition_possible(s207, Rational(-52), 0));
  CHECK(transition_map(s207, Rational(-52), 0) == -13);
  CHECK(transition_possible(s207, Rational(-13), 207));
  CHECK(transition_map(s207, Rational(-13), 207) == -55);
  CHECK_FALSE(cor47_form_check(-55));

  const auto s243 = three_digit(243);
  CHECK(transition_possible(s243, Rational(-1), 243));
  CHECK(transition_map(s243, Rational(-1), 243) == -61);
  CHECK(transition_possible(s243, Rational(-61), 243));
  CHECK(transition_map(s243, Rational(-61), 243) == -76);
  CHECK(transition_possible(s243, Rational(-76), 0));
  CHECK(transition_map(s243, Rational(-76), 0) == -19);
  CHECK(mod_floor(-19, 4) != 3);
}
