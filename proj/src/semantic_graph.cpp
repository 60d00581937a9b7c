#include "semnet/semantic_graph.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "semnet/error.hpp"

namespace semnet {

SemanticGraph::SemanticGraph(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), adjacency_(nodes_.size()) {
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    if (n.lemma.empty()) throw IntegrityError("node " + std::to_string(id) + " has an empty lemma");
    if (n.frequency == 0) throw IntegrityError("node '" + n.lemma + "' has zero frequency");
    if (!index_.emplace(n.lemma, id).second) throw IntegrityError("duplicate lemma '" + n.lemma + "'");
  }
  for (auto& e : edges_) {
    if (e.source == e.target) throw IntegrityError("self-loop on node " + std::to_string(e.source));
    if (e.source >= nodes_.size() || e.target >= nodes_.size()) {
      throw IntegrityError("edge endpoint out of range");
    }
    if (e.weight == 0) throw IntegrityError("edge with zero weight");
    if (e.source > e.target) std::swap(e.source, e.target);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.source, a.target) < std::pair(b.source, b.target); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].source == edges_[i - 1].source && edges_[i].target == edges_[i - 1].target) {
      throw IntegrityError("duplicate edge (" + std::to_string(edges_[i].source) + ", " +
                           std::to_string(edges_[i].target) + ")");
    }
  }
  for (const auto& e : edges_) {
    adjacency_[e.source].push_back({e.target, e.weight});
    adjacency_[e.target].push_back({e.source, e.weight});
    total_weight_ += e.weight;
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }
}

std::optional<NodeId> SemanticGraph::find(std::string_view lemma) const {
  if (auto it = index_.find(lemma); it != index_.end()) return it->second;
  return std::nullopt;
}

std::uint64_t SemanticGraph::weight(NodeId a, NodeId b) const {
  const auto& adj = adjacency_.at(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b, [](const Neighbor& n, NodeId id) { return n.id < id; });
  return (it != adj.end() && it->id == b) ? it->weight : 0;
}

nlohmann::json graph_to_json(const SemanticGraph& g) {
  auto nodes = nlohmann::json::array();
  for (NodeId id = 0; id < g.node_count(); ++id) {
    nodes.push_back({{"id", id}, {"lemma", g.node(id).lemma}, {"frequency", g.node(id).frequency}});
  }
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"weight", e.weight}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

SemanticGraph graph_from_json(const nlohmann::json& j) {
  try {
    std::vector<Node> nodes;
    const auto& jn = j.at("nodes");
    nodes.reserve(jn.size());
    for (std::size_t i = 0; i < jn.size(); ++i) {
      if (jn[i].at("id").get<std::size_t>() != i) throw CorruptionError("graph: node ids must be dense and ordered");
      nodes.push_back({jn[i].at("lemma").get<std::string>(), jn[i].at("frequency").get<std::uint64_t>()});
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("source").get<NodeId>(), e.at("target").get<NodeId>(), e.at("weight").get<std::uint64_t>()});
    }
    return SemanticGraph(std::move(nodes), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw CorruptionError(std::string("graph: ") + e.what());
  }
}

}  // namespace semnet
