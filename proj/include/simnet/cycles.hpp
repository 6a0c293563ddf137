#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <vector>

#include "simnet/error.hpp"
#include "simnet/network.hpp"

namespace simnet {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Dense networks hold astronomically many cycles; stop instead of exhausting memory.
inline constexpr std::size_t kDefaultMaxCycles = 1'000'000;

/// All simple directed cycles with at most `max_len` edges. Each cycle is
/// listed once, starting at its smallest vertex; output is sorted.
///
/// For every start vertex s the search only walks vertices greater than s and
/// prunes any extension whose shortest way back to s would exceed the cap.
/// Throws Parameter once more than `max_cycles` cycles are found.
inline std::vector<std::vector<std::size_t>> simple_cycles(const Adjacency& adj, std::size_t max_len,
                                                           std::size_t max_cycles = kDefaultMaxCycles) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

  Adjacency sorted_adj(n);
  Adjacency reverse(n);
  for (std::size_t u = 0; u < n; ++u) {
    sorted_adj[u] = adj[u];
    std::sort(sorted_adj[u].begin(), sorted_adj[u].end());
    sorted_adj[u].erase(std::unique(sorted_adj[u].begin(), sorted_adj[u].end()), sorted_adj[u].end());
    for (std::size_t v : sorted_adj[u]) {
      if (v >= n) throw Error(ErrorKind::InvalidInput, "adjacency references a missing vertex");
      reverse[v].push_back(u);
    }
  }

  std::vector<std::vector<std::size_t>> cycles;
  std::vector<std::size_t> dist(n);
  std::vector<char> on_path(n, 0);
  std::vector<std::size_t> path;

  for (std::size_t s = 0; s < n; ++s) {
    // Distance from each vertex >= s back to s, within the subgraph of vertices >= s.
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t u : reverse[v]) {
        if (u < s || dist[u] != kUnreachable) continue;
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }

    path.assign(1, s);
    on_path[s] = 1;
    auto dfs = [&](auto&& self, std::size_t u) -> void {
      const std::size_t edges_so_far = path.size();  // counting the edge out of u
      for (std::size_t w : sorted_adj[u]) {
        if (w == s) {
          if (edges_so_far > max_len) continue;
          if (cycles.size() == max_cycles)
            throw Error(ErrorKind::Parameter, "more than " + std::to_string(max_cycles) +
                                                  " cycles; lower the maximum cycle length");
          cycles.push_back(path);
          continue;
        }
        if (w < s || on_path[w] || dist[w] == kUnreachable) continue;
        if (edges_so_far + dist[w] > max_len) continue;
        on_path[w] = 1;
        path.push_back(w);
        self(self, w);
        path.pop_back();
        on_path[w] = 0;
      }
    };
    if (max_len >= 1) dfs(dfs, s);
    on_path[s] = 0;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

struct CycleReport {
  // Node sequences without the closing repeat of the first node.
  std::vector<std::vector<AccountId>> cycles;
  std::map<std::size_t, std::size_t> size_distribution;
  double weighted_average_size = 0.0;  // count-weighted mean cycle length
};

inline CycleReport make_cycle_report(std::vector<std::vector<AccountId>> cycles) {
  CycleReport r;
  r.cycles = std::move(cycles);
  std::size_t weighted = 0;
  for (const auto& c : r.cycles) {
    ++r.size_distribution[c.size()];
    weighted += c.size();
  }
  if (!r.cycles.empty())
    r.weighted_average_size = static_cast<double>(weighted) / static_cast<double>(r.cycles.size());
  return r;
}

/// Simple cycles of the network up to `max_len` nodes, smallest account id first.
inline CycleReport enumerate_cycles(const SimilarityNetwork& net, std::size_t max_len,
                                   std::size_t max_cycles = kDefaultMaxCycles) {
  if (max_len < 2) throw Error(ErrorKind::InvalidInput, "max cycle length must be at least 2");
  std::vector<AccountId> ids;
  std::map<AccountId, std::size_t> index;
  for (const auto& [id, _] : net.nodes) {
    index.emplace(id, ids.size());
    ids.push_back(id);
  }
  for (const auto& e : net.edges) {
    for (const auto* id : {&e.source, &e.target}) {
      if (index.emplace(*id, ids.size()).second) ids.push_back(*id);
    }
  }
  // Re-sort so vertex order follows account order even for edge-only ids.
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;

  Adjacency adj(ids.size());
  for (const auto& e : net.edges) adj[index.at(e.source)].push_back(index.at(e.target));

  std::vector<std::vector<AccountId>> out;
  for (const auto& c : simple_cycles(adj, max_len, max_cycles)) {
    std::vector<AccountId> named;
    named.reserve(c.size());
    for (std::size_t v : c) named.push_back(ids[v]);
    out.push_back(std::move(named));
  }
  return make_cycle_report(std::move(out));
}

}  // namespace simnet
