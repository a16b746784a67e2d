#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace wff::detail {

/// Strongly connected components (Tarjan, iterative).
/// Returns comp[v] for every vertex; components are numbered in reverse
/// topological order, so component 0 has no edges into a later component.
template <class Adjacency>
std::vector<std::size_t> strongly_connected_components(const Adjacency& adj, std::size_t& count) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (edge < adj[v].size()) {
        const std::size_t w = adj[v][edge++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

/// Components with no edge leaving them.
template <class Adjacency>
std::vector<std::vector<std::size_t>> sink_components(const Adjacency& adj) {
  std::size_t count = 0;
  const auto comp = strongly_connected_components(adj, count);
  std::vector<bool> has_exit(count, false);
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    members[comp[v]].push_back(v);
    for (std::size_t w : adj[v])
      if (comp[w] != comp[v]) has_exit[comp[v]] = true;
  }
  std::vector<std::vector<std::size_t>> sinks;
  for (std::size_t c = 0; c < count; ++c)
    if (!has_exit[c]) sinks.push_back(std::move(members[c]));
  return sinks;
}

}  // namespace wff::detail
