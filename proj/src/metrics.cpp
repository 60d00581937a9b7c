#include "semnet/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

#include "semnet/error.hpp"

namespace semnet {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Hop distances from `source`; kUnreached for other components.
std::vector<std::uint32_t> bfs_distances(const SemanticGraph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreached);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (const auto& n : g.neighbors(v)) {
      if (dist[n.id] == kUnreached) {
        dist[n.id] = dist[v] + 1;
        frontier.push(n.id);
      }
    }
  }
  return dist;
}

}  // namespace

CentralityTable CentralityTable::ranked(std::string metric, const SemanticGraph& g, std::vector<double> scores) {
  CentralityTable t{std::move(metric), std::move(scores), {}};
  t.ranking.resize(t.scores.size());
  std::iota(t.ranking.begin(), t.ranking.end(), NodeId{0});
  std::sort(t.ranking.begin(), t.ranking.end(), [&](NodeId a, NodeId b) {
    if (t.scores[a] != t.scores[b]) return t.scores[a] > t.scores[b];
    return g.lemma(a) < g.lemma(b);
  });
  return t;
}

double density(const SemanticGraph& g) {
  const auto v = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw UndefinedMetricError("density needs at least 2 nodes");
  return 2.0 * static_cast<double>(g.edge_count()) / (v * (v - 1.0));
}

std::vector<NodeId> largest_component(const SemanticGraph& g) {
  std::vector<std::uint32_t> label(g.node_count(), kUnreached);
  std::vector<NodeId> best;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] != kUnreached) continue;
    std::vector<NodeId> members{s};
    label[s] = s;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto& n : g.neighbors(members[head])) {
        if (label[n.id] == kUnreached) {
          label[n.id] = s;
          members.push_back(n.id);
        }
      }
    }
    if (members.size() > best.size()) best = std::move(members);
  }
  std::sort(best.begin(), best.end());
  return best;
}

double average_path_length(const SemanticGraph& g) {
  if (g.edge_count() == 0) throw UndefinedMetricError("average path length needs at least one edge");
  const auto component = largest_component(g);
  std::uint64_t total = 0;
  for (const NodeId s : component) {
    const auto dist = bfs_distances(g, s);
    for (const NodeId t : component) total += dist[t];
  }
  // Each unordered pair was summed twice.
  const auto n = static_cast<double>(component.size());
  return static_cast<double>(total) / (n * (n - 1.0));
}

CentralityTable degree_centrality(const SemanticGraph& g) {
  std::vector<double> scores(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) scores[v] = static_cast<double>(g.degree(v));
  return CentralityTable::ranked("degree", g, std::move(scores));
}

CentralityTable betweenness_centrality(const SemanticGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> centrality(n, 0.0);

  std::vector<NodeId> order;
  std::vector<std::vector<NodeId>> predecessors(n);
  std::vector<double> sigma(n);
  std::vector<std::int64_t> dist(n);
  std::vector<double> delta(n);
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    order.clear();
    for (auto& p : predecessors) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);

    sigma[s] = 1.0;
    dist[s] = 0;
    std::queue<NodeId> q;
    q.push(s);
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      order.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        const NodeId w = nb.id;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          predecessors[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (const NodeId v : predecessors[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  // Every unordered pair was accumulated from both of its endpoints.
  for (auto& c : centrality) c /= 2.0;
  return CentralityTable::ranked("betweenness", g, std::move(centrality));
}

CentralityTable normalized_betweenness(const CentralityTable& raw, const SemanticGraph& g) {
  const auto n = static_cast<double>(g.node_count());
  if (g.node_count() < 3) return raw;
  const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
  std::vector<double> scores(raw.scores);
  for (auto& s : scores) s /= pairs;
  return CentralityTable::ranked(raw.metric + "_normalized", g, std::move(scores));
}

}  // namespace semnet
