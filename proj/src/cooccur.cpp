#include "semnet/cooccur.hpp"

#include <algorithm>
#include <set>

#include "semnet/error.hpp"

namespace semnet {

void GraphBuildConfig::validate() const {
  if (window_sentences < 1) throw DataError("window size must be at least 1");
  if (min_node_freq < 1) throw DataError("min_node_freq must be at least 1");
  if (min_edge_weight < 1) throw DataError("min_edge_weight must be at least 1");
}

std::vector<Window> windows(const Document& doc, std::size_t w) {
  if (w < 1) throw DataError("window size must be at least 1");
  const auto& s = doc.sentences;
  std::vector<Window> out;
  if (s.empty()) return out;
  const std::size_t span = std::min(w, s.size());
  for (std::size_t first = 0; first + span <= s.size(); ++first) {
    Window win;
    for (std::size_t k = first; k < first + span; ++k) win.insert(win.end(), s[k].begin(), s[k].end());
    out.push_back(std::move(win));
  }
  return out;
}

void CooccurrenceCounts::merge(const CooccurrenceCounts& other) {
  for (const auto& [lemma, f] : other.frequency) frequency[lemma] += f;
  for (const auto& [pair, c] : other.weight) weight[pair] += c;
}

CooccurrenceCounts count_cooccurrences(const Document& doc, std::size_t w) {
  CooccurrenceCounts counts;
  for (const auto& sentence : doc.sentences) {
    for (const auto& lemma : sentence) ++counts.frequency[lemma];
  }
  for (const auto& win : windows(doc, w)) {
    const std::set<std::string> distinct(win.begin(), win.end());
    for (auto a = distinct.begin(); a != distinct.end(); ++a) {
      for (auto b = std::next(a); b != distinct.end(); ++b) ++counts.weight[{*a, *b}];
    }
  }
  return counts;
}

CooccurrenceCounts count_cooccurrences(std::span<const Document> docs, std::size_t w) {
  if (w < 1) throw DataError("window size must be at least 1");
  CooccurrenceCounts total;
  for (const auto& doc : docs) total.merge(count_cooccurrences(doc, w));
  return total;
}

SemanticGraph build_graph(const CooccurrenceCounts& counts, const GraphBuildConfig& config) {
  config.validate();
  for (const auto& [pair, c] : counts.weight) {
    if (pair.first >= pair.second) throw IntegrityError("edge key (" + pair.first + ", " + pair.second + ") not ordered");
    if (!counts.frequency.contains(pair.first) || !counts.frequency.contains(pair.second)) {
      throw IntegrityError("edge (" + pair.first + ", " + pair.second + ") has an endpoint without a frequency");
    }
  }

  std::set<std::string> connected;
  std::vector<std::pair<const LemmaPair*, std::uint64_t>> kept_edges;
  for (const auto& [pair, c] : counts.weight) {
    if (c < config.min_edge_weight) continue;
    if (counts.frequency.at(pair.first) < config.min_node_freq) continue;
    if (counts.frequency.at(pair.second) < config.min_node_freq) continue;
    kept_edges.emplace_back(&pair, c);
    connected.insert(pair.first);
    connected.insert(pair.second);
  }

  // std::set iteration is lexicographic, so position = id.
  std::vector<Node> nodes;
  std::map<std::string_view, NodeId> ids;
  for (const auto& lemma : connected) {
    ids.emplace(lemma, static_cast<NodeId>(nodes.size()));
    nodes.push_back({lemma, counts.frequency.at(lemma)});
  }
  std::vector<Edge> edges;
  edges.reserve(kept_edges.size());
  for (const auto& [pair, c] : kept_edges) edges.push_back({ids.at(pair->first), ids.at(pair->second), c});
  return SemanticGraph(std::move(nodes), std::move(edges));
}

}  // namespace semnet
