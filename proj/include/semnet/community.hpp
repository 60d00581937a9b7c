#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "semnet/metrics.hpp"
#include "semnet/semantic_graph.hpp"

namespace semnet {

using CommunityId = std::uint32_t;

/// How edge weights enter modularity. `unweighted` treats every edge as 1.
enum class WeightMode { weighted, unweighted };

const char* to_string(WeightMode mode) noexcept;

struct CommunityPartition {
  std::vector<CommunityId> assignment;  // indexed by NodeId, dense 0..C-1
  std::size_t community_count = 0;
  double modularity = 0.0;
};

/// Newman modularity Q = sum_c [ W_c / W - (S_c / 2W)^2 ].
///
/// W is the total edge weight, W_c the weight inside community c and S_c the
/// summed weighted degree of c. Community ids need not be dense. A graph
/// without edges has Q = 0. Throws DataError unless the assignment covers
/// every node.
double modularity_of(const SemanticGraph& g, std::span<const CommunityId> assignment,
                     WeightMode mode = WeightMode::weighted);

struct LouvainOptions {
  double resolution = 1.0;
  std::uint64_t seed = 0;
  WeightMode mode = WeightMode::weighted;
};

/// Two-phase Louvain: repeated local moves, then aggregation of communities
/// into single nodes, until a level makes no merge. Nodes are visited in a
/// seeded shuffle of lexicographic lemma order, so the result is a pure
/// function of (graph, options). The returned modularity is
/// modularity_of(g, assignment, mode); a partition scoring below the
/// all-in-one partition is replaced by it.
CommunityPartition louvain(const SemanticGraph& g, const LouvainOptions& options = {});

struct BridgingConcept {
  NodeId node = 0;
  std::string lemma;
  double betweenness = 0.0;
  std::vector<CommunityId> adjacent_communities;  // ascending
};

/// Nodes whose neighbors fall in at least two communities, by descending
/// betweenness (ties by lemma), truncated to top_n.
std::vector<BridgingConcept> bridging_concepts(const SemanticGraph& g, const CommunityPartition& p,
                                               const CentralityTable& betweenness, std::size_t top_n);
std::vector<BridgingConcept> bridging_concepts(const SemanticGraph& g, const CommunityPartition& p,
                                               std::size_t top_n);

}  // namespace semnet
