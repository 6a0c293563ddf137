#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <set>
#include <thread>
#include <vector>

#include "simnet/error.hpp"
#include "simnet/model.hpp"
#include "simnet/similarity.hpp"
#include "simnet/store.hpp"

namespace simnet {

struct NetworkEdge {
  AccountId source;
  AccountId target;
  double weight = 0.0;  // SM of (source, target)
  std::size_t rank = 0;  // 1-based position of target in source's top-k

  friend bool operator==(const NetworkEdge&, const NetworkEdge&) = default;
};

struct LevelStats {
  std::size_t depth = 0;
  std::size_t new_nodes = 0;
  std::size_t total_nodes = 0;

  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

/// Directed similarity graph grown from `root` by repeated top-k expansion.
struct SimilarityNetwork {
  AccountId root;
  std::size_t k = 0;
  std::size_t depth = 0;
  std::map<AccountId, std::size_t> nodes;  // account -> depth at which it was discovered
  std::vector<NetworkEdge> edges;          // in expansion order
  std::set<AccountId> expanded;
  std::set<AccountId> leaves;  // discovered but not scorable
  std::vector<LevelStats> levels;

  friend bool operator==(const SimilarityNetwork&, const SimilarityNetwork&) = default;
};

/// Upper bound on the node count: 1 + k + k^2 + ... + k^depth.
inline std::uint64_t theoretical_max(std::uint64_t k, std::uint64_t depth) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  std::uint64_t total = 0;
  std::uint64_t term = 1;
  for (std::uint64_t i = 0; i <= depth; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() - term)
      throw Error(ErrorKind::InvalidInput, "theoretical maximum overflows 64 bits");
    total += term;
    if (i < depth) {
      if (term > std::numeric_limits<std::uint64_t>::max() / k)
        throw Error(ErrorKind::InvalidInput, "theoretical maximum overflows 64 bits");
      term *= k;
    }
  }
  return total;
}

struct ExpandOptions {
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Breadth-first top-k expansion. Nodes are expanded at most once; edges into
/// already-known nodes are kept.
inline SimilarityNetwork expand(const GraphStore& store, const AccountId& root, std::size_t k, std::size_t depth,
                                const ExpandOptions& options = {}) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "k must be at least 1");
  if (depth == 0) throw Error(ErrorKind::InvalidInput, "depth must be at least 1");
  entity_weights(store.profile(root));

  SimilarityNetwork net;
  net.root = root;
  net.k = k;
  net.depth = depth;
  net.nodes.emplace(root, 0);
  net.levels.push_back({0, 1, 1});

  std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<AccountId> frontier{root};
  for (std::size_t level = 1; level <= depth; ++level) {
    std::vector<std::optional<std::vector<SimilarityScore>>> ranked(frontier.size());
    auto work = [&](std::size_t i) {
      if (store.profile(frontier[i]).total() == 0) return;
      ranked[i] = top_k_similar(store, frontier[i], k);
    };
    if (threads <= 1 || frontier.size() <= 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i) work(i);
    } else {
      for (std::size_t start = 0; start < frontier.size(); start += threads) {
        std::vector<std::future<void>> batch;
        const std::size_t end = std::min(frontier.size(), start + threads);
        for (std::size_t i = start; i < end; ++i) batch.push_back(std::async(std::launch::async, work, i));
        for (auto& f : batch) f.get();
      }
    }

    std::vector<AccountId> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const AccountId& source = frontier[i];
      if (!ranked[i]) {
        net.leaves.insert(source);
        continue;
      }
      net.expanded.insert(source);
      std::size_t rank = 0;
      for (const auto& s : *ranked[i]) {
        net.edges.push_back({source, s.other, s.sm, ++rank});
        if (net.nodes.emplace(s.other, level).second) next.push_back(s.other);
      }
    }
    std::sort(next.begin(), next.end());
    net.levels.push_back({level, next.size(), net.nodes.size()});
    frontier = std::move(next);
  }
  // Nodes found at the last level are known but never expanded.
  return net;
}

struct InDegreeReport {
  std::map<AccountId, std::size_t> in_degree;  // every node, 0 when no expanded node lists it
  double mean_over_expanded = 0.0;
};

/// How many distinct expanded nodes list each node in their top-k.
inline InDegreeReport in_degree_topk(const SimilarityNetwork& net) {
  InDegreeReport r;
  for (const auto& [id, _] : net.nodes) r.in_degree[id] = 0;
  std::set<std::pair<AccountId, AccountId>> seen;
  for (const auto& e : net.edges) {
    if (!net.expanded.count(e.source)) continue;
    if (seen.emplace(e.source, e.target).second) ++r.in_degree[e.target];
  }
  if (!net.expanded.empty()) {
    double sum = 0.0;
    for (const auto& id : net.expanded) sum += static_cast<double>(r.in_degree[id]);
    r.mean_over_expanded = sum / static_cast<double>(net.expanded.size());
  }
  return r;
}

/// Fraction of the other expanded nodes that list `node` in their top-k.
inline double inverse_similarity(const SimilarityNetwork& net, const AccountId& node) {
  if (net.expanded.size() < 2) return 0.0;
  const auto report = in_degree_topk(net);
  auto it = report.in_degree.find(node);
  const double in = it == report.in_degree.end() ? 0.0 : static_cast<double>(it->second);
  const double others = static_cast<double>(net.expanded.size() - (net.expanded.count(node) ? 1 : 0));
  return in / others;
}

struct GrowthRow {
  std::size_t depth = 0;
  std::uint64_t theoretical = 0;
  std::size_t new_nodes = 0;
  std::size_t total_nodes = 0;
};

/// Actual versus theoretical node counts per depth.
inline std::vector<GrowthRow> growth(const SimilarityNetwork& net) {
  std::vector<GrowthRow> rows;
  for (const auto& l : net.levels)
    rows.push_back({l.depth, theoretical_max(net.k, l.depth), l.new_nodes, l.total_nodes});
  return rows;
}

}  // namespace simnet
