#pragma once

// The standing data (R, B, L, alpha) and its admissibility checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wff/algebra.hpp"

namespace wff {

/// Scale R, digits B, frequency digits L and weights alpha (aligned with L).
///
/// Construction only checks shape (R >= 2, non-empty distinct digit lists,
/// one weight per frequency digit). Everything the frame construction
/// assumes is checked by validate().
class FrameSystem {
 public:
  FrameSystem(Int scale, std::vector<Int> digits, std::vector<Int> freq_digits, std::vector<Complex> weights)
      : scale_(scale), digits_(std::move(digits)), freq_digits_(std::move(freq_digits)), weights_(std::move(weights)) {
    if (scale_ < 2) throw std::invalid_argument("FrameSystem: scale R must be >= 2");
    if (digits_.empty()) throw std::invalid_argument("FrameSystem: digit set B is empty");
    if (freq_digits_.empty()) throw std::invalid_argument("FrameSystem: digit set L is empty");
    if (weights_.size() != freq_digits_.size())
      throw std::invalid_argument("FrameSystem: alpha must have one entry per element of L");
    if (std::set<Int>(digits_.begin(), digits_.end()).size() != digits_.size())
      throw std::invalid_argument("FrameSystem: B has repeated digits");
    if (std::set<Int>(freq_digits_.begin(), freq_digits_.end()).size() != freq_digits_.size())
      throw std::invalid_argument("FrameSystem: L has repeated digits");
    for (const Complex& a : weights_)
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw std::invalid_argument("FrameSystem: non-finite weight");
  }

  Int R() const noexcept { return scale_; }
  const std::vector<Int>& B() const noexcept { return digits_; }
  const std::vector<Int>& L() const noexcept { return freq_digits_; }
  const std::vector<Complex>& alpha() const noexcept { return weights_; }
  std::size_t N() const noexcept { return digits_.size(); }
  std::size_t M() const noexcept { return freq_digits_.size(); }

  std::optional<std::size_t> index_of(Int l) const {
    const auto it = std::find(freq_digits_.begin(), freq_digits_.end(), l);
    if (it == freq_digits_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - freq_digits_.begin());
  }
  bool has_digit(Int l) const { return index_of(l).has_value(); }

  /// alpha_l; throws std::out_of_range when l is not in L.
  Complex alpha_of(Int l) const {
    const auto idx = index_of(l);
    if (!idx) throw std::out_of_range("digit " + std::to_string(l) + " is not in L");
    return weights_[*idx];
  }
  double weight_sq(std::size_t idx) const { return std::norm(weights_[idx]); }

 private:
  Int scale_;
  std::vector<Int> digits_;
  std::vector<Int> freq_digits_;
  std::vector<Complex> weights_;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string witness;
};

struct ValidationReport {
  bool passed = false;
  std::vector<ValidationCheck> checks;

  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Thrown by operations whose precondition is a validated system.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report)
      : std::runtime_error(describe(report)), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    std::string msg = "system failed validation:";
    for (const auto& c : r.checks)
      if (!c.passed) msg += " [" + c.name + ": " + c.witness + "]";
    return msg;
  }
  ValidationReport report_;
};

inline constexpr double kOrthonormalityTolerance = 1e-10;

inline ValidationReport validate(const FrameSystem& sys) {
  ValidationReport report;
  const auto& B = sys.B();
  const auto& L = sys.L();

  {
    ValidationCheck c{"structure", true, ""};
    std::ostringstream why;
    if (std::find(B.begin(), B.end(), Int{0}) == B.end()) why << "0 not in B; ";
    const auto zero = sys.index_of(0);
    if (!zero) {
      why << "0 not in L; ";
    } else if (std::abs(sys.alpha()[*zero] - Complex{1.0, 0.0}) > 1e-12) {
      why << "alpha_0 != 1; ";
    }
    for (std::size_t i = 0; i < L.size(); ++i)
      if (sys.alpha()[i] == Complex{0.0, 0.0}) why << "alpha_" << L[i] << " = 0; ";
    c.witness = why.str();
    c.passed = c.witness.empty();
    if (c.passed) c.witness = "ok";
    report.checks.push_back(std::move(c));
  }

  {
    ValidationCheck c{"no_overlap", true, "ok"};
    for (std::size_t i = 0; i < B.size() && c.passed; ++i)
      for (std::size_t j = i + 1; j < B.size(); ++j)
        if (mod_floor(B[i] - B[j], sys.R()) == 0) {
          c.passed = false;
          c.witness = std::to_string(B[i]) + " = " + std::to_string(B[j]) + " mod " + std::to_string(sys.R());
          break;
        }
    report.checks.push_back(std::move(c));
  }

  {
    // (1/N) sum_l |alpha_l|^2 exp(2 pi i l (b - b') / R) = delta_{b,b'}
    ValidationCheck c{"column_orthonormality", true, "ok"};
    double worst = 0.0;
    std::pair<Int, Int> worst_pair{0, 0};
    for (Int b : B)
      for (Int bp : B) {
        Complex sum{0.0, 0.0};
        for (std::size_t i = 0; i < L.size(); ++i) {
          const Int phase_num = mod_floor(L[i] * (b - bp), sys.R());
          const double phase = 2.0 * std::numbers::pi * static_cast<double>(phase_num) / static_cast<double>(sys.R());
          sum += sys.weight_sq(i) * std::polar(1.0, phase);
        }
        sum /= static_cast<double>(B.size());
        const double err = std::abs(sum - Complex{b == bp ? 1.0 : 0.0, 0.0});
        if (err > worst) {
          worst = err;
          worst_pair = {b, bp};
        }
      }
    if (worst >= kOrthonormalityTolerance) {
      c.passed = false;
      std::ostringstream os;
      os << "pair (" << worst_pair.first << ", " << worst_pair.second << ") off by " << worst;
      c.witness = os.str();
    }
    report.checks.push_back(std::move(c));
  }

  report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
  return report;
}

inline void require_valid(const FrameSystem& sys) {
  auto report = validate(sys);
  if (!report.passed) throw ValidationError(std::move(report));
}

/// k and k' are congruent when (k' - k) b / R is an integer for every b.
inline bool are_congruent(const FrameSystem& sys, Int k, Int kp) {
  return std::all_of(sys.B().begin(), sys.B().end(), [&](Int b) { return ((kp - k) * b) % sys.R() == 0; });
}

/// Residue r (in [0, R)) -> sum of |alpha_l|^2 over l = r mod R.
inline std::map<Int, double> residue_class_weight_sums(const FrameSystem& sys) {
  std::map<Int, double> sums;
  for (std::size_t i = 0; i < sys.M(); ++i) sums[mod_floor(sys.L()[i], sys.R())] += sys.weight_sq(i);
  return sums;
}

// ---------------------------------------------------------------------------
// Weight magnitudes
// ---------------------------------------------------------------------------

struct WeightSolution {
  bool feasible = false;
  /// u_l = |alpha_l|^2, aligned with L. Empty when infeasible.
  std::vector<Rational> canonical;
  /// Indices into L of the free parameters (empty when the solution is unique).
  std::vector<std::size_t> free;
  /// u_l = offset_l + sum_j coefficients_l[j] * u_{free[j]}, aligned with L.
  std::vector<Rational> offset;
  std::vector<std::vector<Rational>> coefficients;
  /// Pair (b, b') whose equation could not be met, when infeasible.
  std::optional<std::pair<Int, Int>> witness;
  std::string message;
};

namespace detail {

/// Row-reduced linear system over Q on unknowns u_l, l != 0.
class RationalSystem {
 public:
  explicit RationalSystem(std::size_t unknowns) : n_(unknowns) {}

  /// Adds sum_j coeffs[j] u_j = rhs. Returns false if the system becomes
  /// inconsistent.
  bool add(std::vector<Rational> coeffs, Rational rhs) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = coeffs[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) coeffs[j] -= f * rows_[r][j];
      rhs -= f * rhs_[r];
    }
    std::size_t p = 0;
    while (p < n_ && coeffs[p] == 0) ++p;
    if (p == n_) return rhs == 0;
    const Rational lead = coeffs[p];
    for (auto& v : coeffs) v /= lead;
    rhs /= lead;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][p];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) rows_[r][j] -= f * coeffs[j];
      rhs_[r] -= f * rhs;
    }
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(std::move(rhs));
    pivots_.push_back(p);
    return true;
  }

  std::size_t unknowns() const { return n_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  const std::vector<Rational>& rhs() const { return rhs_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> pivots_;
};

/// Coordinates of X^j mod Phi_R in the power basis 1, X, ..., X^{phi(R)-1}.
inline std::vector<std::vector<Int>> cyclotomic_coordinates(Int R) {
  const IntPoly& phi = cyclotomic(R);
  const std::size_t deg = phi.size() - 1;
  std::vector<std::vector<Int>> coords;
  for (Int j = 0; j < R; ++j) {
    IntPoly mono(static_cast<std::size_t>(j) + 1, 0);
    mono[static_cast<std::size_t>(j)] = 1;
    detail::divide_monic(mono, phi);
    mono.resize(deg, 0);
    coords.push_back(std::move(mono));
  }
  return coords;
}

}  // namespace detail

/// Finds u_l = |alpha_l|^2 >= 0 with u_0 = 1 solving the column
/// orthonormality equations exactly.
///
/// Every entry exp(2 pi i l (b - b') / R) is an R-th root of unity, so each
/// off-diagonal equation is an identity in Q(zeta_R); its coordinates in the
/// power basis modulo Phi_R give rational linear equations. The canonical
/// point is the minimum-norm solution; when it is not strictly positive, the
/// free parameters are set to a common value at the midpoint of the range
/// where all weights are positive.
inline WeightSolution solve_weight_magnitudes(Int R, const std::vector<Int>& B, const std::vector<Int>& L) {
  if (R < 2) throw std::invalid_argument("solve_weight_magnitudes: R must be >= 2");
  const auto zero_it = std::find(L.begin(), L.end(), Int{0});
  if (zero_it == L.end()) throw std::invalid_argument("solve_weight_magnitudes: 0 must be in L");
  const std::size_t zero_idx = static_cast<std::size_t>(zero_it - L.begin());

  // unknown index j <-> position in L, skipping l = 0
  std::vector<std::size_t> unknown_to_l;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (i != zero_idx) unknown_to_l.push_back(i);
  const std::size_t n = unknown_to_l.size();

  WeightSolution out;
  detail::RationalSystem system(n);

  // diagonal: sum_l u_l = N
  {
    std::vector<Rational> coeffs(n, Rational(1));
    if (!system.add(std::move(coeffs), Rational(static_cast<Int>(B.size()) - 1))) {
      out.message = "diagonal equation sum_l u_l = N is inconsistent";
      return out;
    }
  }

  const auto coords = detail::cyclotomic_coordinates(R);
  const std::size_t deg = coords.front().size();
  for (Int b : B)
    for (Int bp : B) {
      if (b == bp) continue;
      // sum_l u_l X^{l (b - b') mod R} == 0 mod Phi_R, coordinate by coordinate
      std::vector<std::vector<Rational>> rows(deg, std::vector<Rational>(n, Rational(0)));
      std::vector<Rational> rhs(deg, Rational(0));
      for (std::size_t j = 0; j < n; ++j) {
        const Int e = mod_floor(L[unknown_to_l[j]] * (b - bp), R);
        for (std::size_t k = 0; k < deg; ++k) rows[k][j] += coords[static_cast<std::size_t>(e)][k];
      }
      // u_0 = 1 contributes X^0
      for (std::size_t k = 0; k < deg; ++k) rhs[k] -= coords[0][k];
      for (std::size_t k = 0; k < deg; ++k) {
        if (!system.add(rows[k], rhs[k])) {
          out.witness = std::make_pair(b, bp);
          std::ostringstream os;
          os << "no weights satisfy the equation for (b, b') = (" << b << ", " << bp << ")";
          out.message = os.str();
          return out;
        }
      }
    }

  // Parametrize: pivots in terms of free unknowns.
  const auto& rows = system.rows();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : system.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> free_unknowns;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_unknowns.push_back(j);

  const std::size_t f = free_unknowns.size();
  std::vector<Rational> offset(n, Rational(0));
  std::vector<std::vector<Rational>> coeff(n, std::vector<Rational>(f, Rational(0)));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t p = system.pivots()[r];
    offset[p] = system.rhs()[r];
    for (std::size_t k = 0; k < f; ++k) coeff[p][k] = -rows[r][free_unknowns[k]];
  }
  for (std::size_t k = 0; k < f; ++k) coeff[free_unknowns[k]][k] = 1;

  auto evaluate = [&](const std::vector<Rational>& params) {
    std::vector<Rational> u(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = offset[j];
      for (std::size_t k = 0; k < f; ++k) u[j] += coeff[j][k] * params[k];
    }
    return u;
  };
  auto strictly_positive = [](const std::vector<Rational>& u) {
    return std::all_of(u.begin(), u.end(), [](const Rational& v) { return v > 0; });
  };

  std::vector<Rational> point;
  if (f == 0) {
    point = offset;
  } else {
    // Minimum-norm point of the affine family: minimize |offset + C s|^2,
    // i.e. solve (C^T C) s = -C^T offset.
    detail::RationalSystem normal(f);
    for (std::size_t a = 0; a < f; ++a) {
      std::vector<Rational> row(f, Rational(0));
      Rational rhs(0);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < f; ++k) row[k] += coeff[j][a] * coeff[j][k];
        rhs -= coeff[j][a] * offset[j];
      }
      normal.add(std::move(row), rhs);
    }
    std::vector<Rational> params(f, Rational(0));
    for (std::size_t r = 0; r < normal.rows().size(); ++r) params[normal.pivots()[r]] = normal.rhs()[r];
    point = evaluate(params);

    if (!strictly_positive(point)) {
      // common value s for every free parameter; each u_j is affine in s
      std::optional<Rational> lo, hi;
      bool empty = false;
      for (std::size_t j = 0; j < n && !empty; ++j) {
        Rational slope(0);
        for (std::size_t k = 0; k < f; ++k) slope += coeff[j][k];
        if (slope == 0) {
          if (offset[j] <= 0) empty = true;
          continue;
        }
        const Rational root = -offset[j] / slope;
        if (slope > 0) {
          if (!lo || root > *lo) lo = root;
        } else {
          if (!hi || root < *hi) hi = root;
        }
      }
      if (!empty && lo && hi && *lo >= *hi) empty = true;
      if (!empty) {
        Rational s = lo && hi ? (*lo + *hi) / 2 : lo ? *lo + 1 : hi ? *hi - 1 : Rational(1);
        point = evaluate(std::vector<Rational>(f, s));
      }
    }
  }

  if (!strictly_positive(point)) {
    out.message = "no strictly positive weights found on the solution family";
    return out;
  }

  out.feasible = true;
  out.canonical.assign(L.size(), Rational(0));
  out.offset.assign(L.size(), Rational(0));
  out.coefficients.assign(L.size(), std::vector<Rational>(f, Rational(0)));
  out.canonical[zero_idx] = 1;
  out.offset[zero_idx] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    out.canonical[unknown_to_l[j]] = point[j];
    out.offset[unknown_to_l[j]] = offset[j];
    out.coefficients[unknown_to_l[j]] = coeff[j];
  }
  for (std::size_t k = 0; k < f; ++k) out.free.push_back(unknown_to_l[free_unknowns[k]]);
  out.message = f == 0 ? "unique solution" : std::to_string(f) + "-parameter family";
  return out;
}

/// System with alpha_l = sqrt(u_l) from the canonical solution.
inline FrameSystem with_solved_weights(Int R, const std::vector<Int>& B, const std::vector<Int>& L) {
  const auto sol = solve_weight_magnitudes(R, B, L);
  if (!sol.feasible) throw std::invalid_argument("with_solved_weights: " + sol.message);
  std::vector<Complex> alpha;
  for (const auto& u : sol.canonical) alpha.emplace_back(std::sqrt(to_double(u)), 0.0);
  return FrameSystem(R, B, L, std::move(alpha));
}

}  // namespace wff
