#pragma once

// Transition dynamics t -> (t - l) / R, min-sets, cycle words and the Markov
// chain on a min-set.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wff/algebra.hpp"
#include "wff/detail/scc.hpp"
#include "wff/system.hpp"

namespace wff {

/// Finite digit string l_0 l_1 ... l_{p-1} over L; l_0 is applied first.
struct Word {
  std::vector<Int> digits;

  std::size_t size() const noexcept { return digits.size(); }
  bool empty() const noexcept { return digits.empty(); }
  /// Space separated digits; the empty word is "".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(digits[i]);
    }
    return out;
  }
  friend bool operator==(const Word&, const Word&) = default;
};

inline Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  Int d;
  while (in >> d) w.digits.push_back(d);
  if (!in.eof()) throw std::invalid_argument("malformed word: " + text);
  return w;
}

struct Edge {
  Rational source;
  Int digit = 0;
  Rational target;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TransitionGraph {
  std::vector<Rational> nodes;  // descending
  std::vector<Edge> edges;      // by source (node order), then digit
};

struct MinSet {
  std::vector<Rational> points;  // descending
  Rational representative;       // largest point
  std::vector<Edge> edges;

  bool contains(const Rational& t) const { return std::find(points.begin(), points.end(), t) != points.end(); }
  bool nontrivial() const { return !(points.size() == 1 && points.front() == 0); }
};

struct Trajectory {
  std::vector<Rational> points;  // discovery order, starting with t
  bool truncated = false;

  bool contains(const Rational& t) const { return std::find(points.begin(), points.end(), t) != points.end(); }
};

inline constexpr std::size_t kDefaultMaxWordLength = 24;

// ---------------------------------------------------------------------------
// One-step transitions
// ---------------------------------------------------------------------------

inline void require_digit(const FrameSystem& sys, Int l) {
  if (!sys.has_digit(l)) throw std::invalid_argument("digit " + std::to_string(l) + " is not in L");
}

/// g_l(t) = (t - l) / R.
inline Rational transition_map(const FrameSystem& sys, const Rational& t, Int l) {
  require_digit(sys, l);
  return (t - l) / sys.R();
}

/// alpha_l != 0 and m_B(g_l(t)) != 0, decided exactly.
inline bool transition_possible(const FrameSystem& sys, const Rational& t, Int l) {
  require_digit(sys, l);
  if (sys.alpha_of(l) == Complex{0.0, 0.0}) return false;
  return !mb_is_zero((t - l) / sys.R(), sys.B());
}

/// Possible one-step transitions from t as (digit, target), in L order.
inline std::vector<std::pair<Int, Rational>> possible_transitions(const FrameSystem& sys, const Rational& t) {
  std::vector<std::pair<Int, Rational>> out;
  for (std::size_t i = 0; i < sys.M(); ++i) {
    const Int l = sys.L()[i];
    if (sys.alpha()[i] == Complex{0.0, 0.0}) continue;
    Rational target = (t - l) / sys.R();
    if (!mb_is_zero(target, sys.B())) out.emplace_back(l, std::move(target));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Candidate lattice
// ---------------------------------------------------------------------------

/// [min(-L)/(R-1), max(-L)/(R-1)].
inline std::pair<Rational, Rational> candidate_interval(const FrameSystem& sys) {
  const auto [lmin, lmax] = std::minmax_element(sys.L().begin(), sys.L().end());
  return {Rational(-*lmax, sys.R() - 1), Rational(-*lmin, sys.R() - 1)};
}

/// gcd of the nonzero digits of B.
inline Int digit_gcd(const FrameSystem& sys) {
  Int g = 0;
  for (Int b : sys.B()) g = std::gcd(g, b < 0 ? -b : b);
  if (g == 0) throw std::domain_error("candidate lattice undefined: B has no nonzero digit");
  return g;
}

/// (1/g)Z intersected with candidate_interval, descending.
inline std::vector<Rational> candidate_points(const FrameSystem& sys) {
  const auto [lo, hi] = candidate_interval(sys);
  const Int g = digit_gcd(sys);
  const Rational lo_scaled = lo * g;
  const Rational hi_scaled = hi * g;
  // ceil(lo g) .. floor(hi g)
  BigInt first = numerator(lo_scaled) / denominator(lo_scaled);
  if (Rational(first) < lo_scaled) ++first;
  BigInt last = numerator(hi_scaled) / denominator(hi_scaled);
  if (Rational(last) > hi_scaled) --last;
  std::vector<Rational> out;
  for (BigInt k = last; k >= first; --k) out.emplace_back(k, g);
  return out;
}

namespace detail {

inline void sort_descending(std::vector<Rational>& pts) { std::sort(pts.begin(), pts.end(), std::greater<>()); }

inline std::vector<Edge> edges_among(const FrameSystem& sys, const std::vector<Rational>& nodes) {
  const std::set<Rational> members(nodes.begin(), nodes.end());
  std::vector<Edge> edges;
  for (const auto& t : nodes)
    for (auto& [l, target] : possible_transitions(sys, t))
      if (members.count(target)) edges.push_back({t, l, std::move(target)});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.source != b.source) return a.source > b.source;
    return a.digit < b.digit;
  });
  return edges;
}

}  // namespace detail

/// Possible-transition graph restricted to `nodes`.
inline TransitionGraph transition_graph(const FrameSystem& sys, std::vector<Rational> nodes) {
  detail::sort_descending(nodes);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  TransitionGraph g;
  g.edges = detail::edges_among(sys, nodes);
  g.nodes = std::move(nodes);
  return g;
}

// ---------------------------------------------------------------------------
// Min-sets
// ---------------------------------------------------------------------------

/// Min-sets without checking the admissibility assumptions first.
///
/// Candidates whose possible transitions leave the candidate set are pruned
/// until nothing changes; the closed sink components of what remains are the
/// min-sets. Ordered by descending representative.
inline std::vector<MinSet> find_min_sets_unchecked(const FrameSystem& sys) {
  const std::vector<Rational> cand = candidate_points(sys);
  std::map<Rational, std::size_t> index;
  for (std::size_t i = 0; i < cand.size(); ++i) index.emplace(cand[i], i);

  // Successor lists; kOutside marks a target off the candidate set.
  constexpr std::size_t kOutside = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::pair<Int, std::size_t>>> succ(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (auto& [l, target] : possible_transitions(sys, cand[i])) {
      const auto it = index.find(target);
      succ[i].emplace_back(l, it == index.end() ? kOutside : it->second);
    }

  std::vector<bool> alive(cand.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!alive[i]) continue;
      for (const auto& [l, j] : succ[i])
        if (j == kOutside || !alive[j]) {
          alive[i] = false;
          changed = true;
          break;
        }
    }
  }

  std::vector<std::size_t> survivors;
  std::vector<std::size_t> local(cand.size(), kOutside);
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (alive[i]) {
      local[i] = survivors.size();
      survivors.push_back(i);
    }
  std::vector<std::vector<std::size_t>> adj(survivors.size());
  for (std::size_t v = 0; v < survivors.size(); ++v)
    for (const auto& [l, j] : succ[survivors[v]]) adj[v].push_back(local[j]);

  std::vector<MinSet> out;
  for (const auto& comp : detail::sink_components(adj)) {
    MinSet m;
    for (std::size_t v : comp) m.points.push_back(cand[survivors[v]]);
    detail::sort_descending(m.points);
    m.representative = m.points.front();
    m.edges = detail::edges_among(sys, m.points);
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(),
            [](const MinSet& a, const MinSet& b) { return a.representative > b.representative; });
  return out;
}

/// Min-sets of a validated system; throws ValidationError otherwise.
inline std::vector<MinSet> find_min_sets(const FrameSystem& sys) {
  require_valid(sys);
  return find_min_sets_unchecked(sys);
}

inline const MinSet& min_set_containing(const std::vector<MinSet>& sets, const Rational& c) {
  for (const auto& m : sets)
    if (m.contains(c)) return m;
  throw std::invalid_argument(to_string(c) + " is not in any min-set");
}

// ---------------------------------------------------------------------------
// Indexed min-set (integer transition table)
// ---------------------------------------------------------------------------

/// Transition table of a min-set: next[i][k] is the point reached from
/// points[i] with digit L[k], or kNone when that transition is impossible.
class MinSetChain {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  MinSetChain(const FrameSystem& sys, const MinSet& m) : points_(m.points) {
    for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
    next_.assign(points_.size(), std::vector<std::size_t>(sys.M(), kNone));
    for (const auto& e : m.edges) next_[index_.at(e.source)][*sys.index_of(e.digit)] = index_.at(e.target);
    for (std::size_t k = 0; k < sys.M(); ++k) weight_sq_.push_back(sys.weight_sq(k));
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t digits() const noexcept { return weight_sq_.size(); }
  const Rational& point(std::size_t i) const { return points_[i]; }
  std::size_t index(const Rational& t) const {
    const auto it = index_.find(t);
    if (it == index_.end()) throw std::invalid_argument(to_string(t) + " is not in the min-set");
    return it->second;
  }
  std::size_t next(std::size_t i, std::size_t k) const { return next_[i][k]; }
  double weight_sq(std::size_t k) const { return weight_sq_[k]; }

  /// Probability of each first arrival at `target` from `start` within
  /// n = 1..max_len steps; intermediate states avoid `target`.
  std::vector<double> first_arrival(std::size_t start, std::size_t target, std::size_t max_len) const {
    std::vector<double> dist(size(), 0.0), step(size(), 0.0), arrivals;
    dist[start] = 1.0;
    for (std::size_t n = 1; n <= max_len; ++n) {
      std::fill(step.begin(), step.end(), 0.0);
      for (std::size_t i = 0; i < size(); ++i) {
        if (dist[i] == 0.0) continue;
        for (std::size_t k = 0; k < digits(); ++k)
          if (next_[i][k] != kNone) step[next_[i][k]] += dist[i] * weight_sq_[k];
      }
      arrivals.push_back(step[target]);
      step[target] = 0.0;
      std::swap(dist, step);
    }
    return arrivals;
  }

 private:
  std::vector<Rational> points_;
  std::map<Rational, std::size_t> index_;
  std::vector<std::vector<std::size_t>> next_;
  std::vector<double> weight_sq_;
};

// ---------------------------------------------------------------------------
// Cycle words and Omega(c)
// ---------------------------------------------------------------------------

/// Words that drive c back to c for the first time through possible
/// transitions, of length <= max_len, ordered by length then by L order.
inline std::vector<Word> cycle_words(const FrameSystem& sys, const MinSet& m, const Rational& c,
                                     std::size_t max_len = kDefaultMaxWordLength) {
  if (!m.contains(c)) throw std::invalid_argument(to_string(c) + " is not in the min-set");
  const MinSetChain chain(sys, m);
  const std::size_t home = chain.index(c);
  std::vector<Word> out;
  std::vector<std::pair<std::size_t, std::vector<Int>>> frontier{{home, {}}};
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<std::pair<std::size_t, std::vector<Int>>> next;
    for (const auto& [at, prefix] : frontier)
      for (std::size_t k = 0; k < chain.digits(); ++k) {
        const std::size_t to = chain.next(at, k);
        if (to == MinSetChain::kNone) continue;
        auto word = prefix;
        word.push_back(sys.L()[k]);
        if (to == home) {
          out.push_back(Word{std::move(word)});
        } else {
          next.emplace_back(to, std::move(word));
        }
      }
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<Word> cycle_words(const FrameSystem& sys, const Rational& c,
                                     std::size_t max_len = kDefaultMaxWordLength) {
  const auto sets = find_min_sets(sys);
  return cycle_words(sys, min_set_containing(sets, c), c, max_len);
}

/// True when `digits` (applied from c in order) is a cycle word for c.
inline bool is_cycle_word(const FrameSystem& sys, const Rational& c, std::span<const Int> digits) {
  if (digits.empty()) return false;
  Rational t = c;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (!transition_possible(sys, t, digits[i])) return false;
    t = (t - digits[i]) / sys.R();
    if (t == c) return i + 1 == digits.size();
  }
  return false;
}

/// Omega(c): no suffix of w is a cycle word for c. The empty word qualifies.
inline bool in_omega(const FrameSystem& sys, const Rational& c, const Word& w) {
  for (Int l : w.digits) require_digit(sys, l);
  const std::span<const Int> all(w.digits);
  for (std::size_t start = 0; start < all.size(); ++start)
    if (is_cycle_word(sys, c, all.subspan(start))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Markov chain identities
// ---------------------------------------------------------------------------

/// Sum over cycle words for c of length <= max_len of prod |alpha_l|^2,
/// i.e. the probability of returning to c within max_len steps.
inline double cycle_word_weight_sum(const FrameSystem& sys, const MinSet& m, const Rational& c,
                                    std::size_t max_len = kDefaultMaxWordLength) {
  const MinSetChain chain(sys, m);
  const std::size_t i = chain.index(c);
  double sum = 0.0;
  for (double p : chain.first_arrival(i, i, max_len)) sum += p;
  return sum;
}

/// Sum over words driving c to c' (first arrival at the end) of length
/// <= max_len of prod |alpha_l|^2. Such words are automatically in
/// Omega(c'): a cycle-word suffix would have to start at c'.
inline double first_passage_weight_sum(const FrameSystem& sys, const MinSet& m, const Rational& c,
                                       const Rational& cp, std::size_t max_len = kDefaultMaxWordLength) {
  if (c == cp) throw std::invalid_argument("first_passage_weight_sum: c == c', use cycle_word_weight_sum");
  const MinSetChain chain(sys, m);
  double sum = 0.0;
  for (double p : chain.first_arrival(chain.index(c), chain.index(cp), max_len)) sum += p;
  return sum;
}

// ---------------------------------------------------------------------------
// Trajectories and DOT export
// ---------------------------------------------------------------------------

/// Forward closure of {t} under possible transitions, at most max_points
/// points (breadth first).
inline Trajectory trajectory(const FrameSystem& sys, const Rational& t, std::size_t max_points = 4096) {
  Trajectory out;
  std::set<Rational> seen{t};
  std::deque<Rational> queue{t};
  out.points.push_back(t);
  while (!queue.empty()) {
    const Rational x = queue.front();
    queue.pop_front();
    for (auto& [l, target] : possible_transitions(sys, x)) {
      if (seen.count(target)) continue;
      if (out.points.size() >= max_points) {
        out.truncated = true;
        return out;
      }
      seen.insert(target);
      out.points.push_back(target);
      queue.push_back(std::move(target));
    }
  }
  return out;
}

namespace detail {

inline std::string dot(const std::string& name, const std::vector<Rational>& nodes, const std::vector<Edge>& edges) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (const auto& n : nodes) os << "  \"" << to_string(n) << "\";\n";
  for (const auto& e : edges)
    os << "  \"" << to_string(e.source) << "\" -> \"" << to_string(e.target) << "\" [label=\"" << e.digit
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace detail

/// Graphviz digraph: nodes in descending order, one labeled edge per
/// possible transition, sorted by source then digit.
inline std::string export_dot(const MinSet& m) { return detail::dot("minset", m.points, m.edges); }
inline std::string export_dot(const TransitionGraph& g) { return detail::dot("transitions", g.nodes, g.edges); }

}  // namespace wff
