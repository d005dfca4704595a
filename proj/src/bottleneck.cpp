#include <algorithm>
#include <cmath>
#include <queue>

#include "msaug/persistence.hpp"

namespace msaug {
namespace {

// Hopcroft-Karp on a square bipartite graph given as adjacency lists.
bool has_perfect_matching(const std::vector<std::vector<std::uint32_t>>& adj, std::size_t right_count) {
  const std::size_t n = adj.size();
  constexpr std::uint32_t kFree = 0xffffffffu;
  std::vector<std::uint32_t> match_left(n, kFree), match_right(right_count, kFree);
  std::vector<std::uint32_t> dist(n);
  std::size_t matched = 0;

  auto bfs = [&] {
    std::queue<std::uint32_t> q;
    bool found = false;
    for (std::uint32_t u = 0; u < n; ++u) {
      if (match_left[u] == kFree) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kFree;
      }
    }
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto v : adj[u]) {
        const auto w = match_right[v];
        if (w == kFree) {
          found = true;
        } else if (dist[w] == kFree) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> it(n);
  auto dfs = [&](auto&& self, std::uint32_t u) -> bool {
    for (; it[u] < adj[u].size(); ++it[u]) {
      const auto v = adj[u][it[u]];
      const auto w = match_right[v];
      if (w == kFree || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    dist[u] = kFree;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::uint32_t u = 0; u < n; ++u) {
      if (match_left[u] == kFree && dfs(dfs, u)) ++matched;
    }
  }
  return matched == n;
}

double linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double to_diagonal(const DiagramPoint& p) { return (p.death - p.birth) / 2; }

bool feasible(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double r) {
  const std::size_t na = a.size(), nb = b.size();
  // left: a points, then diagonal copies of b points
  // right: b points, then diagonal copies of a points
  std::vector<std::vector<std::uint32_t>> adj(na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (linf(a[i], b[j]) <= r) adj[i].push_back(static_cast<std::uint32_t>(j));
    }
    if (to_diagonal(a[i]) <= r) adj[i].push_back(static_cast<std::uint32_t>(nb + i));
  }
  for (std::size_t j = 0; j < nb; ++j) {
    auto& row = adj[na + j];
    if (to_diagonal(b[j]) <= r) row.push_back(static_cast<std::uint32_t>(j));
    for (std::size_t i = 0; i < na; ++i) row.push_back(static_cast<std::uint32_t>(nb + i));
  }
  return has_perfect_matching(adj, na + nb);
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.kind != b.kind) throw Error("bottleneck distance needs diagrams of the same kind");
  if (a.essential.size() != b.essential.size()) return kInfinity;

  double essential = 0;
  for (std::size_t i = 0; i < a.essential.size(); ++i) {
    essential = std::max(essential, std::abs(a.essential[i] - b.essential[i]));
  }

  std::vector<double> candidates{0.0};
  for (const auto& p : a.points) candidates.push_back(to_diagonal(p));
  for (const auto& q : b.points) candidates.push_back(to_diagonal(q));
  for (const auto& p : a.points) {
    for (const auto& q : b.points) candidates.push_back(linf(p, q));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[hi] is always feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(a.points, b.points, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::max(essential, candidates[lo]);
}

}  // namespace msaug
