#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace semnet {

using NodeId = std::uint32_t;

struct Node {
  std::string lemma;
  std::uint64_t frequency = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Undirected edge stored once with source < target.
struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  std::uint64_t weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId id = 0;
  std::uint64_t weight = 0;
};

/// Immutable weighted undirected co-occurrence graph. Node ids are dense
/// indices into nodes(); edges() is sorted by (source, target).
class SemanticGraph {
 public:
  SemanticGraph() = default;

  /// Validates and indexes. Edges may come in either orientation but must not
  /// repeat. Throws IntegrityError on self-loops, unknown endpoints, zero
  /// weights or frequencies, duplicate lemmas or duplicate edges.
  SemanticGraph(std::vector<Node> nodes, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::string& lemma(NodeId id) const { return nodes_.at(id).lemma; }

  std::optional<NodeId> find(std::string_view lemma) const;

  /// Neighbors sorted by id.
  std::span<const Neighbor> neighbors(NodeId id) const { return adjacency_.at(id); }
  std::size_t degree(NodeId id) const { return adjacency_.at(id).size(); }

  /// Co-occurrence weight, 0 when the nodes are not adjacent. Symmetric.
  std::uint64_t weight(NodeId a, NodeId b) const;

  std::uint64_t total_weight() const noexcept { return total_weight_; }

  friend bool operator==(const SemanticGraph& a, const SemanticGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::map<std::string, NodeId, std::less<>> index_;
  std::uint64_t total_weight_ = 0;
};

/// Graph file body: {"nodes": [{id, lemma, frequency}], "edges": [{source, target, weight}]}.
nlohmann::json graph_to_json(const SemanticGraph& g);
SemanticGraph graph_from_json(const nlohmann::json& j);

}  // namespace semnet
