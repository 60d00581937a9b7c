#include "semnet/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "semnet/error.hpp"
#include "semnet/random.hpp"

namespace semnet {

const char* to_string(WeightMode mode) noexcept {
  return mode == WeightMode::weighted ? "weighted" : "unweighted";
}

double modularity_of(const SemanticGraph& g, std::span<const CommunityId> assignment, WeightMode mode) {
  if (assignment.size() != g.node_count()) {
    throw DataError("partition assigns " + std::to_string(assignment.size()) + " of " +
                    std::to_string(g.node_count()) + " nodes");
  }
  auto w_of = [mode](const Edge& e) {
    return mode == WeightMode::weighted ? static_cast<double>(e.weight) : 1.0;
  };

  double total = 0.0;
  std::map<CommunityId, double> internal;
  std::map<CommunityId, double> strength;
  for (const auto& e : g.edges()) {
    const double w = w_of(e);
    total += w;
    strength[assignment[e.source]] += w;
    strength[assignment[e.target]] += w;
    if (assignment[e.source] == assignment[e.target]) internal[assignment[e.source]] += w;
  }
  if (total == 0.0) return 0.0;

  double q = 0.0;
  for (const auto& [c, s] : strength) {
    const auto it = internal.find(c);
    const double in = it == internal.end() ? 0.0 : it->second;
    const double share = s / (2.0 * total);
    q += in / total - share * share;
  }
  return q;
}

namespace {

// One level of the Louvain hierarchy. Self-loop weight counts twice towards a
// node's strength, as it would in the un-aggregated graph.
struct Level {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;  // no self loops
  std::vector<double> self_loop;
  std::vector<double> strength;

  std::size_t size() const { return adjacency.size(); }
};

Level base_level(const SemanticGraph& g, WeightMode mode) {
  Level lv;
  const auto n = g.node_count();
  lv.adjacency.resize(n);
  lv.self_loop.assign(n, 0.0);
  lv.strength.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      const double w = mode == WeightMode::weighted ? static_cast<double>(nb.weight) : 1.0;
      lv.adjacency[v].emplace_back(nb.id, w);
      lv.strength[v] += w;
    }
  }
  return lv;
}

// Local-move phase. Returns true if any node changed community.
bool move_nodes(const Level& lv, std::vector<std::uint32_t>& community, std::span<const std::uint32_t> order,
                double resolution) {
  const std::size_t n = lv.size();
  const double two_m = std::accumulate(lv.strength.begin(), lv.strength.end(), 0.0);
  if (two_m == 0.0) return false;

  std::vector<double> total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) total[community[i]] += lv.strength[i];

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (const std::uint32_t i : order) {
      const std::uint32_t old_c = community[i];
      touched.clear();
      for (const auto& [j, w] : lv.adjacency[i]) {
        const auto c = community[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      std::sort(touched.begin(), touched.end());

      const double k = lv.strength[i];
      total[old_c] -= k;
      auto gain = [&](std::uint32_t c) { return link[c] - resolution * total[c] * k / two_m; };

      std::uint32_t best = old_c;
      double best_gain = gain(old_c);
      for (const auto c : touched) {
        const double g = gain(c);
        if (g > best_gain + 1e-12) {
          best = c;
          best_gain = g;
        }
      }
      total[best] += k;
      community[i] = best;
      if (best != old_c) {
        moved = true;
        any_move = true;
      }
      for (const auto c : touched) link[c] = 0.0;
    }
  }
  return any_move;
}

// Renumbers communities densely by first appearance; returns the count.
std::uint32_t renumber(std::vector<std::uint32_t>& community) {
  std::vector<std::uint32_t> remap(community.size(), UINT32_MAX);
  std::uint32_t next = 0;
  for (auto& c : community) {
    if (remap[c] == UINT32_MAX) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

Level aggregate(const Level& lv, std::span<const std::uint32_t> community, std::uint32_t count) {
  Level out;
  out.adjacency.resize(count);
  out.self_loop.assign(count, 0.0);
  out.strength.assign(count, 0.0);
  std::vector<std::map<std::uint32_t, double>> links(count);
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const auto ci = community[i];
    out.self_loop[ci] += lv.self_loop[i];
    out.strength[ci] += lv.strength[i];
    for (const auto& [j, w] : lv.adjacency[i]) {
      const auto cj = community[j];
      if (ci == cj) {
        if (i < j) out.self_loop[ci] += w;
      } else {
        links[ci][cj] += w;
      }
    }
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    out.adjacency[c].assign(links[c].begin(), links[c].end());
  }
  return out;
}

}  // namespace

CommunityPartition louvain(const SemanticGraph& g, const LouvainOptions& options) {
  if (!(options.resolution > 0.0)) throw DataError("resolution must be positive");
  const std::size_t n = g.node_count();
  CommunityPartition result;
  if (n == 0) return result;

  std::mt19937_64 rng(options.seed);

  // Base visit order: lexicographic lemma order, then shuffled.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return g.lemma(a) < g.lemma(b); });

  Level level = base_level(g, options.mode);
  std::vector<std::uint32_t> node_to_community(n);
  std::iota(node_to_community.begin(), node_to_community.end(), 0u);

  for (;;) {
    portable_shuffle(std::span<std::uint32_t>(order), rng);
    std::vector<std::uint32_t> community(level.size());
    std::iota(community.begin(), community.end(), 0u);
    const bool moved = move_nodes(level, community, order, options.resolution);
    if (!moved) break;
    const auto count = renumber(community);
    for (auto& c : node_to_community) c = community[c];
    level = aggregate(level, community, count);
    order.resize(count);
    std::iota(order.begin(), order.end(), 0u);
  }

  // Dense ids ordered by smallest member node id.
  result.community_count = renumber(node_to_community);
  result.assignment.assign(node_to_community.begin(), node_to_community.end());
  result.modularity = modularity_of(g, result.assignment, options.mode);

  if (result.modularity < 0.0) {
    result.assignment.assign(n, 0);
    result.community_count = 1;
    result.modularity = modularity_of(g, result.assignment, options.mode);
  }
  return result;
}

std::vector<BridgingConcept> bridging_concepts(const SemanticGraph& g, const CommunityPartition& p,
                                               const CentralityTable& betweenness, std::size_t top_n) {
  if (p.assignment.size() != g.node_count()) throw DataError("partition does not match graph");
  if (betweenness.scores.size() != g.node_count()) throw DataError("betweenness table does not match graph");

  std::vector<BridgingConcept> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<CommunityId> adjacent;
    for (const auto& nb : g.neighbors(v)) adjacent.push_back(p.assignment[nb.id]);
    std::sort(adjacent.begin(), adjacent.end());
    adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
    if (adjacent.size() >= 2) out.push_back({v, g.lemma(v), betweenness.scores[v], std::move(adjacent)});
  }
  std::sort(out.begin(), out.end(), [](const BridgingConcept& a, const BridgingConcept& b) {
    if (a.betweenness != b.betweenness) return a.betweenness > b.betweenness;
    return a.lemma < b.lemma;
  });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

std::vector<BridgingConcept> bridging_concepts(const SemanticGraph& g, const CommunityPartition& p,
                                               std::size_t top_n) {
  return bridging_concepts(g, p, betweenness_centrality(g), top_n);
}

}  // namespace semnet
