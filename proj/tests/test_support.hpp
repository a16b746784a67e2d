#pragma once

// Shared fixtures for the test suites.

#include <cmath>
#include <vector>

#include "wff/wff.hpp"

namespace wff::testing {

inline const double kHalfRoot = std::sqrt(0.5);

/// R = 4, B = {0, 2}, L = {0, 3, 15}, |alpha_3|^2 = |alpha_15|^2 = 1/2.
inline FrameSystem cantor_0_3_15() { return FrameSystem(4, {0, 2}, {0, 3, 15}, {{1, 0}, {kHalfRoot, 0}, {kHalfRoot, 0}}); }

/// R = 4, B = {0, 2}, L = {0, 1}: the orthonormal-basis case.
inline FrameSystem onb() { return FrameSystem(4, {0, 2}, {0, 1}, {{1, 0}, {1, 0}}); }

/// L = {0, 3, b} with weights from the solver; b = 3 collapses to {0, 3}.
inline FrameSystem three_digit(Int b) {
  return b == 3 ? with_solved_weights(4, {0, 2}, {0, 3}) : with_solved_weights(4, {0, 2}, {0, 3, b});
}

inline std::vector<Rational> rationals(std::initializer_list<Int> values) {
  std::vector<Rational> out;
  for (Int v : values) out.emplace_back(v);
  return out;
}

}  // namespace wff::testing
