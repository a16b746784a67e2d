#pragma once

// Structural results for the scale-4 Cantor system R = 4, B = {0, 2}:
// necessary conditions for non-trivial min-sets, the digit forms of b and of
// min-set points for L = {0, 3, b}, and the pre-extreme decomposition.
// All checks are one-directional; none of them asserts that a min-set exists.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wff/algebra.hpp"
#include "wff/dynamics.hpp"
#include "wff/system.hpp"

namespace wff::theory {

inline bool is_cantor4(const FrameSystem& sys) {
  const std::set<Int> b(sys.B().begin(), sys.B().end());
  return sys.R() == 4 && b == std::set<Int>{0, 2};
}

inline void require_cantor4(const FrameSystem& sys) {
  if (!is_cantor4(sys)) throw std::invalid_argument("theory checks require R = 4 and B = {0, 2}");
}

/// Some a in L is 1 mod 4 and some b in L is 3 mod 4 (then only {0} is a
/// min-set).
inline bool prop42_no_nontrivial(std::span<const Int> L) {
  bool has1 = false, has3 = false;
  for (Int l : L) {
    has1 = has1 || mod_floor(l, 4) == 1;
    has3 = has3 || mod_floor(l, 4) == 3;
  }
  return has1 && has3;
}

inline bool prop42_no_nontrivial(const FrameSystem& sys) {
  require_cantor4(sys);
  return prop42_no_nontrivial(sys.L());
}

struct ResidueDecomposition {
  Int a0 = 0, a1 = 0, b1 = 0;
  Int k = 0, l = 0;
};

/// a = a0 + 4 a1 + 16 k, b = a0 + 4 b1 + 16 l with a0, a1, b1 in {0..3}.
inline ResidueDecomposition decompose_residues(Int a, Int b) {
  if (mod_floor(a - b, 4) != 0) throw std::invalid_argument("decompose_residues: a and b differ mod 4");
  ResidueDecomposition d;
  d.a0 = mod_floor(a, 4);
  d.a1 = mod_floor((a - d.a0) / 4, 4);
  d.b1 = mod_floor((b - d.a0) / 4, 4);
  d.k = (a - d.a0 - 4 * d.a1) / 16;
  d.l = (b - d.a0 - 4 * d.b1) / 16;
  return d;
}

/// {a1, (a1 + a0) mod 4} and {b1, (b1 + a0) mod 4} intersect. Necessary for a
/// non-trivial min-set of L = {0, a, b}, not sufficient.
inline bool prop43_necessary(Int a, Int b) {
  const auto d = decompose_residues(a, b);
  const Int first[2] = {d.a1, (d.a1 + d.a0) % 4};
  const Int second[2] = {d.b1, (d.b1 + d.a0) % 4};
  for (Int x : first)
    for (Int y : second)
      if (x == y) return true;
  return false;
}

struct GeneratedB {
  Int b = 0;
  std::string digits;  // j_0 j_1 ... j_{r-1}, each '0' or '3'
};

/// Every b = (4^{r+1} - 1) - (4^r j_{r-1} + ... + 4^2 j_1 + 4 j_0) with
/// j_i in {0, 3}, in lexicographic order of j_0 j_1 ... j_{r-1}.
inline std::vector<GeneratedB> cor47_generate_b(int r) {
  if (r < 1) throw std::invalid_argument("cor47_generate_b: r must be >= 1");
  if (r > 29) throw std::overflow_error("cor47_generate_b: r too large");
  std::vector<GeneratedB> out;
  const Int top = (Int{1} << (2 * (r + 1))) - 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    GeneratedB g{top, ""};
    for (int i = 0; i < r; ++i) {
      // j_0 is the most significant choice so the output is lexicographic
      const bool three = (mask >> (r - 1 - i)) & 1U;
      g.digits += three ? '3' : '0';
      if (three) g.b -= 3 * (Int{1} << (2 * (i + 1)));
    }
    out.push_back(std::move(g));
  }
  return out;
}

struct FormWitness {
  int n = 0;
  std::vector<Int> digits;  // l_0 ... l_{n-1}, each 0 or 3
};

/// x0 = -4^n + 4^{n-1} l_{n-1} + ... + 4 l_1 + l_0 with l_i in {0, 3}, for
/// the smallest n <= max_n.
inline std::optional<FormWitness> cor47_form_check(Int x0, int max_n = 30) {
  for (int n = 0; n <= std::min(max_n, 30); ++n) {
    Int rest = x0 + (Int{1} << (2 * n));
    if (rest < 0 || rest % 3 != 0) continue;
    rest /= 3;
    FormWitness w{n, {}};
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const Int digit = rest % 4;
      if (digit > 1) {
        ok = false;
        break;
      }
      w.digits.push_back(3 * digit);
      rest /= 4;
    }
    if (ok && rest == 0) return w;
  }
  return std::nullopt;
}

/// L = {0, 3, 4^{n+1} - 1} with solver-produced weights.
inline FrameSystem prop49_system(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("prop49_system: n out of range");
  const Int b = (Int{1} << (2 * (n + 1))) - 1;
  return with_solved_weights(4, {0, 2}, {0, 3, b});
}

/// The min-set {-1, -4, ..., -4^n} of L = {0, 3, 4^{n+1} - 1}, after checking
/// it against find_min_sets. Disagreement throws std::logic_error.
inline MinSet prop49_minset(int n) {
  const FrameSystem sys = prop49_system(n);
  std::vector<Rational> expected;
  for (int k = 0; k <= n; ++k) expected.emplace_back(-(Int{1} << (2 * k)));
  std::sort(expected.begin(), expected.end(), std::greater<>());
  for (auto& m : find_min_sets(sys))
    if (m.points == expected) return m;
  throw std::logic_error("prop49_minset: solver did not return {-1, -4, ..., -4^" + std::to_string(n) + "}");
}

struct Decomposition {
  Rational c;   // first point of the orbit that is visited twice
  Word digits;  // l_0 ... l_{n-1}
  int n = 0;
};

/// Follows the unique possible transition with digits in `sub_digits` from
/// x0 until a point repeats. Then x0 = 4^n c + 4^{n-1} l_{n-1} + ... + l_0.
/// Throws std::domain_error when the orbit stalls, branches, or leaves the
/// unimodular points.
inline Decomposition thm46_decompose(const FrameSystem& sys, const Rational& x0, std::span<const Int> sub_digits) {
  require_cantor4(sys);
  if (sub_digits.size() != 2 || std::find(sub_digits.begin(), sub_digits.end(), Int{0}) == sub_digits.end())
    throw std::invalid_argument("thm46_decompose: sub-digit set must be {0, a}");
  for (Int l : sub_digits) require_digit(sys, l);

  std::vector<Rational> orbit{x0};
  Word word;
  for (;;) {
    const Rational& x = orbit.back();
    if (!mb_is_unimodular(x, sys.B()))
      throw std::domain_error("thm46_decompose: orbit point " + to_string(x) + " is not extreme");
    std::optional<Int> chosen;
    for (Int l : sub_digits) {
      if (!transition_possible(sys, x, l)) continue;
      if (chosen) throw std::domain_error("thm46_decompose: two possible sub-digit transitions at " + to_string(x));
      chosen = l;
    }
    if (!chosen) throw std::domain_error("thm46_decompose: no possible sub-digit transition at " + to_string(x));
    Rational next = (x - *chosen) / sys.R();
    const auto seen = std::find(orbit.begin(), orbit.end(), next);
    if (seen != orbit.end()) {
      if (!mb_is_unimodular(next, sys.B()))
        throw std::domain_error("thm46_decompose: cycle point " + to_string(next) + " is not extreme");
      const auto n = static_cast<std::size_t>(seen - orbit.begin());
      word.digits.push_back(*chosen);
      word.digits.resize(n);
      return Decomposition{*seen, std::move(word), static_cast<int>(n)};
    }
    word.digits.push_back(*chosen);
    orbit.push_back(std::move(next));
  }
}

/// Evaluates 4^n c + sum_j 4^j l_j.
inline Rational recompose(const Decomposition& d) {
  Rational x = d.c;
  for (std::size_t j = d.digits.size(); j-- > 0;) x = x * 4 + d.digits.digits[j];
  return x;
}

}  // namespace wff::theory
