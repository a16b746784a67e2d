#pragma once

// Exact rational and root-of-unity arithmetic.
//
// Every dynamical decision (is a transition possible, is a point extreme)
// goes through the exact tests in this header. Floating point values of m_B
// are for display and numerical verification only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wff {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

inline BigInt numerator(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> BigInt {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("sign without digits");
    for (std::size_t j = i; j < s.size(); ++j)
      if (s[j] < '0' || s[j] > '9')
        throw std::invalid_argument("bad digit in rational: " + std::string(s));
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Euclidean remainder in [0, m).
inline Int mod_floor(Int a, Int m) {
  const Int r = a % m;
  return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------
// m_B
// ---------------------------------------------------------------------------

/// m_B(x) = (1/N) sum_b exp(2 pi i b x), in floating point.
inline Complex mb_value(double x, std::span<const Int> digits) {
  if (digits.empty()) throw std::invalid_argument("mb_value: empty digit set");
  Complex sum{0.0, 0.0};
  for (Int b : digits) {
    // reduce b*x mod 1 before the trig call
    const double phase = static_cast<double>(b) * x;
    const double frac = phase - std::floor(phase);
    sum += std::polar(1.0, 2.0 * std::numbers::pi * frac);
  }
  return sum / static_cast<double>(digits.size());
}

/// Same, with the phase b*x reduced exactly before conversion.
inline Complex mb_value(const Rational& x, std::span<const Int> digits) {
  if (digits.empty()) throw std::invalid_argument("mb_value: empty digit set");
  const BigInt p = numerator(x);
  const BigInt q = denominator(x);
  Complex sum{0.0, 0.0};
  for (Int b : digits) {
    BigInt r = (p * b) % q;
    if (r < 0) r += q;
    const double frac = Rational(r, q).convert_to<double>();
    sum += std::polar(1.0, 2.0 * std::numbers::pi * frac);
  }
  return sum / static_cast<double>(digits.size());
}

// ---------------------------------------------------------------------------
// Integer polynomials and cyclotomic polynomials
// ---------------------------------------------------------------------------

/// Dense integer polynomial, coefficient i multiplies X^i.
using IntPoly = std::vector<Int>;

namespace detail {

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Int checked_mul_sub(Int acc, Int a, Int b) {
  Int prod = 0;
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_sub_overflow(acc, prod, &out))
    throw std::overflow_error("integer polynomial coefficient overflow");
  return out;
}

/// Divides by a monic divisor in place; returns the quotient, leaves the
/// remainder in `num`.
inline IntPoly divide_monic(IntPoly& num, const IntPoly& divisor) {
  trim(num);
  const std::size_t dd = divisor.size() - 1;
  if (num.size() < divisor.size()) return {};
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const Int c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = checked_mul_sub(num[i - dd + j], c, divisor[j]);
  }
  num.resize(dd);
  trim(num);
  return quot;
}

}  // namespace detail

/// Phi_q, by dividing X^q - 1 by Phi_d for every proper divisor d of q.
/// Results are memoized per q.
inline const IntPoly& cyclotomic(Int q) {
  if (q < 1) throw std::invalid_argument("cyclotomic: q must be positive");
  static std::mutex mutex;
  static std::map<Int, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  IntPoly poly(static_cast<std::size_t>(q) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(q)] = 1;
  for (Int d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    const IntPoly& phi_d = cyclotomic(d);
    IntPoly rem = poly;
    poly = detail::divide_monic(rem, phi_d);
    if (!rem.empty()) throw std::logic_error("cyclotomic: inexact division");
  }
  std::lock_guard lock(mutex);
  return cache.emplace(q, std::move(poly)).first->second;
}

/// Exact test of sum_i zeta_q^{e_i} == 0 with zeta_q = exp(2 pi i / q).
///
/// Forms sum X^{e_i mod q} and checks divisibility by Phi_q. Moduli above
/// 2^22 are only decidable when the exponents span a short arc (then the
/// polynomial has lower degree than Phi_q and cannot vanish).
inline bool roots_of_unity_sum_is_zero(std::span<const Int> exponents, Int q) {
  if (q < 1) throw std::invalid_argument("roots_of_unity_sum_is_zero: q must be >= 1");
  if (exponents.empty()) return true;
  std::vector<Int> residues;
  residues.reserve(exponents.size());
  for (Int e : exponents) residues.push_back(mod_floor(e, q));
  std::sort(residues.begin(), residues.end());

  // Rotate so the exponents occupy the shortest arc; rotation by a root of
  // unity does not change whether the sum vanishes.
  Int best_gap = q - residues.back() + residues.front();
  Int start = residues.front();
  for (std::size_t i = 1; i < residues.size(); ++i) {
    const Int gap = residues[i] - residues[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      start = residues[i];
    }
  }
  Int span = 0;
  for (Int& r : residues) {
    r = mod_floor(r - start, q);
    span = std::max(span, r);
  }

  // phi(q) >= sqrt(q/2): a nonzero polynomial of lower degree than Phi_q
  // cannot vanish at a primitive q-th root.
  if (static_cast<double>(span) * static_cast<double>(span) < static_cast<double>(q) / 2.0) return false;
  if (q > (Int{1} << 22)) throw std::domain_error("roots_of_unity_sum_is_zero: modulus too large");

  IntPoly poly(static_cast<std::size_t>(span) + 1, 0);
  for (Int r : residues) ++poly[static_cast<std::size_t>(r)];
  detail::divide_monic(poly, cyclotomic(q));
  return poly.empty();
}

/// Exact test of m_B(x) == 0 for rational x = p/q.
///
/// Since gcd(p, q) = 1, zeta_q^p is a primitive q-th root and a Galois
/// conjugate of zeta_q, so sum_b zeta_q^{b p} vanishes iff sum_b zeta_q^b does.
inline bool mb_is_zero(const Rational& x, std::span<const Int> digits) {
  if (digits.empty()) throw std::invalid_argument("mb_is_zero: empty digit set");
  const BigInt q = denominator(x);
  if (q == 1) return false;  // every term is 1
  const auto [lo, hi] = std::minmax_element(digits.begin(), digits.end());
  const BigInt span = BigInt(*hi) - *lo;
  // Shifted digit polynomial has degree `span` < phi(q) whenever q > 2 span^2.
  if (q > 2 * span * span) return false;
  return roots_of_unity_sum_is_zero(digits, q.convert_to<Int>());
}

/// |m_B(x)| == 1 exactly, which for 0 in B is x*b in Z for every b.
inline bool mb_is_unimodular(const Rational& x, std::span<const Int> digits) {
  if (std::find(digits.begin(), digits.end(), Int{0}) == digits.end())
    throw std::invalid_argument("mb_is_unimodular: digit set must contain 0");
  const BigInt q = denominator(x);
  return std::all_of(digits.begin(), digits.end(), [&](Int b) { return BigInt(b) % q == 0; });
}

}  // namespace wff
