#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semnet/community.hpp"
#include "semnet/cooccur.hpp"
#include "semnet/corpus.hpp"
#include "semnet/metrics.hpp"
#include "semnet/semantic_graph.hpp"
#include "semnet/sentiment.hpp"
#include "semnet/text_pipeline.hpp"

namespace semnet {

/// A metric value, or the reason it is undefined for this graph.
struct MetricValue {
  std::optional<double> value;
  std::string undefined_reason;

  static MetricValue of(double v) { return {v, {}}; }
  static MetricValue undefined(std::string reason) { return {std::nullopt, std::move(reason)}; }
};

struct RankedScore {
  std::string lemma;
  double score = 0.0;
};

struct AnalysisSettings {
  GraphBuildConfig graph;
  LouvainOptions community;
  std::size_t top_k = 25;
};

struct NetworkReport {
  std::string name;

  // Corpus summary.
  std::optional<CorpusManifest> manifest;
  std::size_t review_count = 0;
  std::size_t document_count = 0;  // documents with at least one sentence
  std::size_t sentence_count = 0;

  // Config echo. `pipeline` and `sentiment` are descriptive JSON blocks.
  nlohmann::json pipeline = nlohmann::json::object();
  nlohmann::json sentiment_config = nlohmann::json::object();
  AnalysisSettings settings;

  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t largest_component_size = 0;
  MetricValue density;
  MetricValue average_path_length;
  MetricValue modularity;
  std::size_t community_count = 0;

  std::vector<RankedScore> top_degree;
  std::vector<RankedScore> top_betweenness;
  std::vector<BridgingConcept> bridging;
  std::map<CommunityId, CommunitySentiment> community_sentiment;
  std::vector<IdentityAlignmentRow> identity_alignment;
};

/// Everything computed for one corpus; the report plus the full per-node
/// data the exporters need.
struct Analysis {
  std::vector<Document> documents;
  SemanticGraph graph;
  CommunityPartition partition;
  CentralityTable degree;
  CentralityTable betweenness;
  NetworkReport report;
};

/// Short description of a pipeline configuration for report echoes, with
/// entry counts and content fingerprints of each list. `sources` names where
/// each list came from ("builtin" or a path).
nlohmann::json describe_pipeline(const PipelineConfig& config, const std::map<std::string, std::string>& sources = {});
nlohmann::json describe_sentiment(const SentimentLexicon& lex, const std::vector<IdentityTermSet>& sets,
                                  const std::map<std::string, std::string>& sources = {});

/// Graph, metrics and sentiment over already-cleaned documents. Throws
/// EmptyCorpusError when no document has a sentence. Metrics that are
/// undefined for the resulting graph are marked, not thrown.
Analysis analyze_documents(std::string name, std::vector<Document> documents, const AnalysisSettings& settings,
                           const SentimentLexicon& lex, const std::vector<IdentityTermSet>& sets);

/// Full pipeline over a loaded corpus: clean, then analyze_documents.
Analysis build_report(std::string name, const LoadedCorpus& corpus, const PipelineConfig& pipeline,
                      const AnalysisSettings& settings, const SentimentLexicon& lex,
                      const std::vector<IdentityTermSet>& sets);

/// Report JSON with top-level schema_version. Object keys are sorted and
/// doubles use shortest round-trip form, so equal reports serialize to equal
/// bytes.
nlohmann::json report_to_json(const NetworkReport& report, const nlohmann::json& provenance);

/// Reads a report. Only schema_version and the metrics block are required;
/// missing tables load empty, which allows hand-written stub reports.
NetworkReport report_from_json(const nlohmann::json& j);

struct MetricComparison {
  std::string metric;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> delta;  // a - b
};

struct ComparativeReport {
  std::string name_a;
  std::string name_b;
  std::vector<MetricComparison> rows;  // density, average_path_length, modularity
  std::optional<double> relative_density;  // (d_a - d_b) / d_b
  std::optional<long> relative_density_percent;  // rounded headline figure
  std::vector<std::string> labels_a;
  std::vector<std::string> labels_b;
  std::string label_rule;
};

inline constexpr const char* kHighlyInterconnected = "Highly Interconnected";
inline constexpr const char* kCompartmentalized = "Compartmentalized";

/// Per-metric deltas, relative density, and network-type labels.
///
/// Label rule: a network denser AND with shorter average paths than the other
/// is "Highly Interconnected"; the one with higher modularity is
/// "Compartmentalized". Ties and undefined metrics assign no label.
ComparativeReport compare(const NetworkReport& a, const NetworkReport& b);

/// Plain-text table of a comparison, one metric per row.
std::string render_comparison(const ComparativeReport& c);
nlohmann::json comparison_to_json(const ComparativeReport& c, const nlohmann::json& provenance);

/// GEXF 1.3 with node attributes frequency, community, degree, betweenness
/// and weighted undirected edges.
void export_gexf(const SemanticGraph& g, const CommunityPartition& p, const CentralityTable& degree,
                 const CentralityTable& betweenness, const std::filesystem::path& path,
                 const std::string& description = {});

/// Writes nodes.csv (lemma,id,frequency,community,degree,betweenness) and
/// edges.csv (source,target,weight) into `dir`, creating it if needed.
void export_csv_tables(const Analysis& analysis, const std::filesystem::path& dir);

void export_json(const nlohmann::json& document, const std::filesystem::path& path);

/// Quotes a CSV field per RFC 4180 when it contains a comma, quote or line break.
std::string csv_field(const std::string& raw);

}  // namespace semnet
