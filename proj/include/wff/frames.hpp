#pragma once

// Weighted exponential frame: for each min-set representative c, one
// element (prod_j alpha_{l_j}) e_lambda per word l_0...l_k in Omega(c), with
// lambda = l_0 + R l_1 + ... + R^k l_k + R^{k+1} c.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wff/algebra.hpp"
#include "wff/dynamics.hpp"
#include "wff/system.hpp"

namespace wff {

struct FrameElement {
  Rational frequency;
  Complex weight{1.0, 0.0};
  Rational c;  // min-set point the word is attached to
  Word word;
};

/// Enumerates Omega(c) by prepending digits.
///
/// Omega(c) is closed under taking suffixes, and l.w (w in Omega(c)) leaves
/// Omega(c) exactly when l.w is itself a cycle word. For each word we keep
/// the set of min-set points from which the word is a possible path that
/// first reaches c at its end; l.w is a cycle word iff c is in that set for
/// l.w. Frequencies follow lambda(l.w) = l + R lambda(w), lambda(empty) = c,
/// as exact numerators over the denominator of c.
class OmegaWalker {
 public:
  struct Node {
    Int numerator = 0;  // frequency * denominator()
    Complex weight{1.0, 0.0};
    std::uint64_t arrivals = 0;  // bitmask over min-set points
    std::size_t depth = 0;
  };

  OmegaWalker(const FrameSystem& sys, const MinSet& m, const Rational& c)
      : sys_(sys), chain_(sys, m), home_(chain_.index(c)), c_(c) {
    if (chain_.size() > 64) throw std::length_error("OmegaWalker: min-sets above 64 points are not supported");
    const BigInt den = wff::denominator(c);
    const BigInt num = wff::numerator(c);
    if (den > INT64_MAX || num > INT64_MAX || num < INT64_MIN)
      throw std::overflow_error("OmegaWalker: representative too large");
    den_ = den.convert_to<Int>();
    c_num_ = num.convert_to<Int>();
    preimage_.assign(sys.M(), std::vector<std::uint64_t>(chain_.size(), 0));
    for (std::size_t y = 0; y < chain_.size(); ++y)
      for (std::size_t k = 0; k < sys.M(); ++k)
        if (const auto x = chain_.next(y, k); x != MinSetChain::kNone) preimage_[k][x] |= std::uint64_t{1} << y;
  }

  Node root() const { return Node{c_num_, Complex{1.0, 0.0}, std::uint64_t{1} << home_, 0}; }
  Int denominator() const noexcept { return den_; }
  const Rational& c() const noexcept { return c_; }

  /// Child for digit index k; returns false if k.w is a cycle word.
  bool prepend(const Node& parent, std::size_t k, Node& child) const {
    std::uint64_t arrivals = 0;
    for (std::uint64_t bits = parent.arrivals; bits; bits &= bits - 1)
      arrivals |= preimage_[k][static_cast<std::size_t>(std::countr_zero(bits))];
    if (arrivals & (std::uint64_t{1} << home_)) return false;
    const Int l = sys_.L()[k];
    Int a = 0, b = 0, sum = 0;
    if (__builtin_mul_overflow(l, den_, &a) || __builtin_mul_overflow(sys_.R(), parent.numerator, &b) ||
        __builtin_add_overflow(a, b, &sum))
      throw std::overflow_error("frequency exceeds 64-bit range; reduce the word length");
    child.numerator = sum;
    child.weight = sys_.alpha()[k] * parent.weight;
    child.arrivals = arrivals;
    child.depth = parent.depth + 1;
    return true;
  }

  /// Depth-first visit of every word of length <= max_len in Omega(c).
  /// visit(node, digit_stack) where digit_stack holds L indices with the
  /// first letter l_0 at the back. Returning false from visit skips the
  /// subtree below that node.
  template <class Visit>
  void depth_first(std::size_t max_len, Visit&& visit) const {
    std::vector<std::size_t> stack;
    walk(root(), max_len, stack, visit);
  }

 private:
  template <class Visit>
  void walk(const Node& node, std::size_t max_len, std::vector<std::size_t>& stack, Visit& visit) const {
    if (!visit(node, static_cast<const std::vector<std::size_t>&>(stack))) return;
    if (node.depth == max_len) return;
    Node child;
    for (std::size_t k = 0; k < sys_.M(); ++k) {
      if (!prepend(node, k, child)) continue;
      stack.push_back(k);
      walk(child, max_len, stack, visit);
      stack.pop_back();
    }
  }

  const FrameSystem& sys_;
  MinSetChain chain_;
  std::size_t home_;
  Rational c_;
  Int den_ = 1;
  Int c_num_ = 0;
  std::vector<std::vector<std::uint64_t>> preimage_;
};

/// Lambda(c) truncated at max_word_len, including the empty word, in
/// breadth-first order (by length, then lexicographic in L's input order).
/// Repeated frequencies are kept as separate elements.
inline std::vector<FrameElement> lambda_elements(const FrameSystem& sys, const MinSet& m, const Rational& c,
                                                 std::size_t max_word_len) {
  const OmegaWalker walker(sys, m, c);
  struct Entry {
    OmegaWalker::Node node;
    std::size_t parent;
    std::size_t digit;
  };
  constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);
  std::vector<Entry> all{{walker.root(), kNoParent, 0}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_word_len; ++len) {
    const std::size_t level_end = all.size();
    for (std::size_t k = 0; k < sys.M(); ++k)
      for (std::size_t i = level_begin; i < level_end; ++i) {
        OmegaWalker::Node child;
        if (walker.prepend(all[i].node, k, child)) all.push_back({child, i, k});
      }
    level_begin = level_end;
  }

  std::vector<FrameElement> out;
  out.reserve(all.size());
  for (const auto& e : all) {
    FrameElement fe;
    fe.frequency = Rational(e.node.numerator, walker.denominator());
    fe.weight = e.node.weight;
    fe.c = c;
    for (const Entry* p = &e; p->parent != kNoParent; p = &all[p->parent]) fe.word.digits.push_back(sys.L()[p->digit]);
    out.push_back(std::move(fe));
  }
  return out;
}

/// Same, for c the representative of one of the system's min-sets.
inline std::vector<FrameElement> lambda_elements(const FrameSystem& sys, const Rational& c, std::size_t max_word_len) {
  for (const auto& m : find_min_sets(sys))
    if (m.representative == c) return lambda_elements(sys, m, c, max_word_len);
  throw std::invalid_argument(to_string(c) + " is not a min-set representative");
}

/// Union of Lambda(c(M)) over the given min-sets, in min-set order.
inline std::vector<FrameElement> frame_multiset(const FrameSystem& sys, const std::vector<MinSet>& sets,
                                                std::size_t max_word_len) {
  std::vector<FrameElement> out;
  for (const auto& m : sets) {
    auto part = lambda_elements(sys, m, m.representative, max_word_len);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

inline std::vector<FrameElement> frame_multiset(const FrameSystem& sys, std::size_t max_word_len) {
  return frame_multiset(sys, find_min_sets(sys), max_word_len);
}

/// Frequency -> sum of |weight|^2 over its occurrences.
inline std::map<Rational, double> aggregate_weights(const std::vector<FrameElement>& elements) {
  std::map<Rational, double> out;
  for (const auto& e : elements) out[e.frequency] += std::norm(e.weight);
  return out;
}

/// Aggregated |weight|^2 of the frequencies of Lambda(c) with |lambda| <= bound
/// reachable with words of length <= depth. Subtrees whose frequencies have
/// escaped beyond the bound are skipped: once |lambda| > max(bound, max|l|/(R-1))
/// every longer word has larger |lambda|.
inline std::map<Rational, double> bounded_aggregate(const FrameSystem& sys, const MinSet& m, const Rational& c,
                                                    Int bound, std::size_t depth) {
  const OmegaWalker walker(sys, m, c);
  Int lmax = 0;
  for (Int l : sys.L()) lmax = std::max(lmax, l < 0 ? -l : l);
  const double den = static_cast<double>(walker.denominator());
  const double escape = std::max(static_cast<double>(bound), static_cast<double>(lmax) / static_cast<double>(sys.R() - 1));
  std::map<Int, double> by_num;
  walker.depth_first(depth, [&](const OmegaWalker::Node& node, const std::vector<std::size_t>&) {
    const double mag = std::abs(static_cast<double>(node.numerator)) / den;
    if (mag <= static_cast<double>(bound)) by_num[node.numerator] += std::norm(node.weight);
    return mag <= escape;
  });
  std::map<Rational, double> out;
  for (const auto& [num, w] : by_num) out.emplace(Rational(num, walker.denominator()), w);
  return out;
}

struct RepresentativeComparison {
  bool sets_agree = false;
  std::vector<Rational> only_first;
  std::vector<Rational> only_second;
  std::size_t common = 0;
  double max_weight_difference = 0.0;
};

/// Compares Lambda(c) and Lambda(c') restricted to |lambda| <= bound at the
/// given depth: frequency sets, and aggregated weights on common frequencies.
inline RepresentativeComparison compare_representatives(const FrameSystem& sys, const MinSet& m, const Rational& c,
                                                        const Rational& cp, Int bound, std::size_t depth) {
  if (!m.contains(c) || !m.contains(cp)) throw std::invalid_argument("compare_representatives: point not in min-set");
  const auto first = bounded_aggregate(sys, m, c, bound, depth);
  const auto second = c == cp ? first : bounded_aggregate(sys, m, cp, bound, depth);
  RepresentativeComparison out;
  for (const auto& [f, w] : first) {
    const auto it = second.find(f);
    if (it == second.end()) {
      out.only_first.push_back(f);
      continue;
    }
    ++out.common;
    out.max_weight_difference = std::max(out.max_weight_difference, std::abs(w - it->second));
  }
  for (const auto& [f, w] : second)
    if (!first.count(f)) out.only_second.push_back(f);
  out.sets_agree = out.only_first.empty() && out.only_second.empty();
  return out;
}

}  // namespace wff
