#pragma once

#include <string>
#include <vector>

#include "semnet/semantic_graph.hpp"

namespace semnet {

/// Per-node scores with a ranking by descending score; ties are broken by
/// lemma in lexicographic order.
struct CentralityTable {
  std::string metric;
  std::vector<double> scores;  // indexed by NodeId
  std::vector<NodeId> ranking;

  static CentralityTable ranked(std::string metric, const SemanticGraph& g, std::vector<double> scores);
};

/// 2E / (V(V-1)) over unweighted edges. Throws UndefinedMetricError when V < 2.
double density(const SemanticGraph& g);

/// Node ids of the largest connected component, ascending. Among equally
/// large components the one holding the smallest id wins.
std::vector<NodeId> largest_component(const SemanticGraph& g);

/// Mean hop distance over unordered node pairs of the largest connected
/// component. Throws UndefinedMetricError when the graph has no edges.
double average_path_length(const SemanticGraph& g);

/// Unweighted degree.
CentralityTable degree_centrality(const SemanticGraph& g);

/// Unnormalized shortest-path betweenness over hop distances (Brandes).
/// Endpoints are excluded and each unordered pair counts once.
CentralityTable betweenness_centrality(const SemanticGraph& g);

/// Divides betweenness by (V-1)(V-2)/2, the number of pairs a node can sit
/// between. Returns the input unchanged when V < 3.
CentralityTable normalized_betweenness(const CentralityTable& raw, const SemanticGraph& g);

}  // namespace semnet
