#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semnet/semantic_graph.hpp"
#include "semnet/text_pipeline.hpp"

namespace semnet {

struct GraphBuildConfig {
  std::size_t window_sentences = 3;
  std::uint64_t min_node_freq = 5;
  std::uint64_t min_edge_weight = 2;

  /// Throws DataError when any field is below 1.
  void validate() const;
};

/// Lemmas pooled from consecutive sentences of one document.
using Window = std::vector<std::string>;

/// Stride-1 windows of `w` sentences. A document with fewer than `w`
/// sentences yields one window over all of them; an empty one yields none.
std::vector<Window> windows(const Document& doc, std::size_t w);

/// Lemma pair with first < second.
using LemmaPair = std::pair<std::string, std::string>;

struct CooccurrenceCounts {
  std::map<std::string, std::uint64_t> frequency;
  std::map<LemmaPair, std::uint64_t> weight;

  /// Adds another count table into this one. Summation is commutative, so
  /// per-document tables can be merged in any order.
  void merge(const CooccurrenceCounts& other);

  friend bool operator==(const CooccurrenceCounts&, const CooccurrenceCounts&) = default;
};

/// Each window adds 1 to every unordered pair of distinct lemmas present in
/// it, however often they repeat. Frequencies count token occurrences over
/// sentences, so overlapping windows do not inflate them.
CooccurrenceCounts count_cooccurrences(const Document& doc, std::size_t w);
CooccurrenceCounts count_cooccurrences(std::span<const Document> docs, std::size_t w);

/// Drops nodes below min_node_freq, then edges below min_edge_weight or
/// touching a dropped node, then nodes left isolated. Ids follow
/// lexicographic lemma order. Throws IntegrityError when an edge endpoint
/// has no frequency entry.
SemanticGraph build_graph(const CooccurrenceCounts& counts, const GraphBuildConfig& config);

}  // namespace semnet
