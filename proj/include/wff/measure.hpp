#pragma once

// Fourier transform of mu(R, B) as a truncated infinite product, and the
// numerical identities built on it.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "wff/algebra.hpp"
#include "wff/dynamics.hpp"
#include "wff/frames.hpp"
#include "wff/system.hpp"

namespace wff {

inline constexpr int kDefaultTerms = 64;

struct FourierEval {
  Complex value{1.0, 0.0};
  int terms = 0;
  double error_bound = 0.0;  // +inf when the tail estimate does not apply
};

namespace detail {

inline double max_abs_digit(const FrameSystem& sys) {
  Int m = 0;
  for (Int b : sys.B()) m = std::max(m, b < 0 ? -b : b);
  return static_cast<double>(m);
}

/// theta = 2 pi max|b| |s| / R^{K+1}; bound 2 theta R / (R - 1) when theta <= 1/2.
inline double tail_bound(const FrameSystem& sys, double abs_s, int terms) {
  if (abs_s == 0.0) return 0.0;
  const double R = static_cast<double>(sys.R());
  const double theta = 2.0 * std::numbers::pi * max_abs_digit(sys) * abs_s / std::pow(R, terms + 1);
  if (theta > 0.5) return std::numeric_limits<double>::infinity();
  return 2.0 * theta * R / (R - 1.0);
}

}  // namespace detail

/// prod_{k=1}^{K} m_B(s / R^k).
inline FourierEval mu_hat(const FrameSystem& sys, double s, int terms = kDefaultTerms) {
  if (terms < 1) throw std::invalid_argument("mu_hat: K must be >= 1");
  FourierEval out;
  out.terms = terms;
  double scale = 1.0;
  for (int k = 1; k <= terms; ++k) {
    scale *= static_cast<double>(sys.R());
    out.value *= mb_value(s / scale, sys.B());
  }
  out.error_bound = detail::tail_bound(sys, std::abs(s), terms);
  return out;
}

/// Rational argument: exactly 0 (with zero error) as soon as one of the K
/// factors vanishes exactly.
inline FourierEval mu_hat(const FrameSystem& sys, const Rational& s, int terms = kDefaultTerms) {
  if (terms < 1) throw std::invalid_argument("mu_hat: K must be >= 1");
  FourierEval out;
  out.terms = terms;
  Rational x = s;
  for (int k = 1; k <= terms; ++k) {
    x /= sys.R();
    if (mb_is_zero(x, sys.B())) {
      out.value = Complex{0.0, 0.0};
      out.error_bound = 0.0;
      return out;
    }
    out.value *= mb_value(x, sys.B());
  }
  out.error_bound = detail::tail_bound(sys, std::abs(to_double(s)), terms);
  return out;
}

/// <e_t, e_lambda> = mu_hat(t - lambda).
inline FourierEval exp_inner_product(const FrameSystem& sys, double t, double lambda, int terms = kDefaultTerms) {
  return mu_hat(sys, t - lambda, terms);
}

inline FourierEval exp_inner_product(const FrameSystem& sys, const Rational& t, const Rational& lambda,
                                     int terms = kDefaultTerms) {
  return mu_hat(sys, Rational(t - lambda), terms);
}

/// sum_l |alpha_l|^2 |m_B((t - l) / R)|^2; equals 1 for admissible systems.
inline double transfer_normalization(const FrameSystem& sys, double t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < sys.M(); ++i) {
    const double x = (t - static_cast<double>(sys.L()[i])) / static_cast<double>(sys.R());
    sum += sys.weight_sq(i) * std::norm(mb_value(x, sys.B()));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// |mu_hat(t - lambda)|^2 for many frame frequencies
// ---------------------------------------------------------------------------

/// Evaluates |mu_hat(t - p/q)|^2 with K factors for exact frequencies p/q.
///
/// |m_B(x)|^2 = (N + 2 sum_{b < b'} cos(2 pi (b' - b) x)) / N^2 only depends
/// on x mod 1, so the frequency part of x_k = (t - p/q) / R^k is reduced
/// modulo 1 in integer arithmetic while q R^k fits in 64 bits. Factors are
/// skipped once 2 pi max|b'-b| |x_k| < 1e-9, where they equal 1 in double
/// precision.
class SpectralKernel {
 public:
  SpectralKernel(const FrameSystem& sys, int terms) : R_(sys.R()), terms_(terms), n_(static_cast<double>(sys.N())) {
    if (terms < 1) throw std::invalid_argument("SpectralKernel: K must be >= 1");
    std::map<Int, int> diffs;
    for (std::size_t i = 0; i < sys.B().size(); ++i)
      for (std::size_t j = i + 1; j < sys.B().size(); ++j) {
        const Int d = sys.B()[j] - sys.B()[i];
        ++diffs[d < 0 ? -d : d];
      }
    for (const auto& [d, mult] : diffs) {
      diffs_.emplace_back(d, 2.0 * mult);
      max_diff_ = std::max(max_diff_, static_cast<double>(d));
    }
  }

  int terms() const noexcept { return terms_; }

  double norm_sq(double t, Int p, Int q) const {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const double lambda = static_cast<double>(p) / static_cast<double>(q);
    const double magnitude = std::abs(t - lambda);
    double product = 1.0;
    double scale = 1.0;
    __int128 modulus = q;
    bool exact = true;
    for (int k = 1; k <= terms_; ++k) {
      scale *= static_cast<double>(R_);
      if (kTwoPi * max_diff_ * magnitude / scale < 1e-9) break;
      double x;
      if (exact) {
        modulus *= R_;
        if (modulus > static_cast<__int128>(INT64_MAX)) exact = false;
      }
      if (exact) {
        const Int m = static_cast<Int>(modulus);
        x = t / scale - static_cast<double>(mod_floor(p, m)) / static_cast<double>(m);
      } else {
        x = (t - lambda) / scale;
      }
      double f = n_;
      for (const auto& [d, w] : diffs_) {
        const double phase = static_cast<double>(d) * x;
        f += w * std::cos(kTwoPi * (phase - std::floor(phase)));
      }
      product *= f / (n_ * n_);
      if (product < 1e-300) return 0.0;
    }
    return product;
  }

 private:
  Int R_;
  int terms_;
  double n_;
  double max_diff_ = 0.0;
  std::vector<std::pair<Int, double>> diffs_;
};

// ---------------------------------------------------------------------------
// Parseval partial sums
// ---------------------------------------------------------------------------

struct ParsevalResult {
  double partial_sum = 0.0;
  double defect = 1.0;
};

/// Cumulative partial sums sum |w|^2 |mu_hat(t - lambda)|^2 over frame elements
/// with word length <= d, for d = 0..max_word_len.
inline std::vector<double> parseval_partial_sums(const FrameSystem& sys, const std::vector<MinSet>& sets, double t,
                                                 std::size_t max_word_len, int terms = kDefaultTerms) {
  const SpectralKernel kernel(sys, terms);
  std::vector<double> by_length(max_word_len + 1, 0.0);
  for (const auto& m : sets) {
    const OmegaWalker walker(sys, m, m.representative);
    const Int q = walker.denominator();
    walker.depth_first(max_word_len, [&](const OmegaWalker::Node& node, const std::vector<std::size_t>&) {
      by_length[node.depth] += std::norm(node.weight) * kernel.norm_sq(t, node.numerator, q);
      return true;
    });
  }
  std::vector<double> cumulative(by_length.size());
  double acc = 0.0;
  for (std::size_t d = 0; d < by_length.size(); ++d) cumulative[d] = (acc += by_length[d]);
  return cumulative;
}

inline ParsevalResult parseval_defect(const FrameSystem& sys, const std::vector<MinSet>& sets, double t,
                                      std::size_t max_word_len, int terms = kDefaultTerms) {
  const double sum = parseval_partial_sums(sys, sets, t, max_word_len, terms).back();
  return {sum, 1.0 - sum};
}

inline ParsevalResult parseval_defect(const FrameSystem& sys, double t, std::size_t max_word_len,
                                      int terms = kDefaultTerms) {
  return parseval_defect(sys, find_min_sets(sys), t, max_word_len, terms);
}

// ---------------------------------------------------------------------------
// Orthogonality of cycle points
// ---------------------------------------------------------------------------

struct OrthogonalityMatrix {
  std::vector<Rational> points;
  std::vector<std::vector<double>> entries;  // |mu_hat(c - c')|

  double max_off_diagonal() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = 0; j < entries.size(); ++j)
        if (i != j) worst = std::max(worst, entries[i][j]);
    return worst;
  }
};

inline OrthogonalityMatrix cycle_orthogonality_matrix(const FrameSystem& sys, const std::vector<MinSet>& sets,
                                                      int terms = kDefaultTerms) {
  OrthogonalityMatrix out;
  for (const auto& m : sets) out.points.insert(out.points.end(), m.points.begin(), m.points.end());
  const std::size_t n = out.points.size();
  out.entries.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.entries[i][j] = std::abs(mu_hat(sys, Rational(out.points[i] - out.points[j]), terms).value);
  return out;
}

inline OrthogonalityMatrix cycle_orthogonality_matrix(const FrameSystem& sys, int terms = kDefaultTerms) {
  return cycle_orthogonality_matrix(sys, find_min_sets(sys), terms);
}

}  // namespace wff
