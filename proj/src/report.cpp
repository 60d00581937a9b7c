#include "semnet/report.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include <fmt/format.h>

#include "semnet/error.hpp"
#include "semnet/version.hpp"

namespace semnet {

using nlohmann::json;

namespace {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

template <typename Range>
std::string fingerprint_lines(const Range& lines) {
  std::string joined;
  for (const auto& l : lines) {
    joined += l;
    joined += '\n';
  }
  return fnv1a_hex(joined);
}

std::string source_of(const std::map<std::string, std::string>& sources, const std::string& key) {
  auto it = sources.find(key);
  return it == sources.end() ? "builtin" : it->second;
}

json list_echo(const std::string& source, std::size_t entries, const std::string& fingerprint) {
  return {{"source", source}, {"entries", entries}, {"fingerprint", fingerprint}};
}

json metric_to_json(const MetricValue& m) {
  if (m.value) return {{"value", *m.value}};
  return {{"value", nullptr}, {"undefined", m.undefined_reason}};
}

MetricValue metric_from_json(const json& j) {
  if (j.is_number()) return MetricValue::of(j.get<double>());
  const auto& v = j.at("value");
  if (v.is_null()) return MetricValue::undefined(j.value("undefined", std::string("undefined")));
  return MetricValue::of(v.get<double>());
}

json ranked_to_json(const std::vector<RankedScore>& rows) {
  auto out = json::array();
  for (const auto& r : rows) out.push_back({{"lemma", r.lemma}, {"score", r.score}});
  return out;
}

std::vector<RankedScore> ranked_from_json(const json& j) {
  std::vector<RankedScore> out;
  for (const auto& r : j) out.push_back({r.at("lemma").get<std::string>(), r.at("score").get<double>()});
  return out;
}

std::vector<RankedScore> top_of(const CentralityTable& t, const SemanticGraph& g, std::size_t k) {
  std::vector<RankedScore> out;
  for (std::size_t i = 0; i < t.ranking.size() && i < k; ++i) {
    out.push_back({g.lemma(t.ranking[i]), t.scores[t.ranking[i]]});
  }
  return out;
}

std::string fmt_number(const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : "undefined"; }

std::string fmt_delta(const std::optional<double>& v) {
  if (!v) return "undefined";
  // Avoid printing "-0" for deltas that round to zero.
  const double shown = std::abs(*v) < 5e-13 ? 0.0 : *v;
  return fmt::format("{:+.6g}", shown);
}

std::string join_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) return "-";
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += " / ";
    out += l;
  }
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

json describe_pipeline(const PipelineConfig& config, const std::map<std::string, std::string>& sources) {
  std::vector<std::string> lexicon_lines;
  for (const auto& [token, lemma] : config.conflation_lexicon) lexicon_lines.push_back(token + ' ' + lemma);
  return {
      {"min_token_len", config.min_token_len},
      {"standard_stoplist", list_echo(source_of(sources, "standard_stoplist"), config.standard_stoplist.size(),
                                      fingerprint_lines(config.standard_stoplist))},
      {"technical_stoplist", list_echo(source_of(sources, "technical_stoplist"), config.technical_stoplist.size(),
                                       fingerprint_lines(config.technical_stoplist))},
      {"conflation_lexicon", list_echo(source_of(sources, "conflation_lexicon"), config.conflation_lexicon.size(),
                                       fingerprint_lines(lexicon_lines))},
      {"stop_filter_order", "surface token, then lemma"},
  };
}

json describe_sentiment(const SentimentLexicon& lex, const std::vector<IdentityTermSet>& sets,
                        const std::map<std::string, std::string>& sources) {
  std::vector<std::string> lines;
  for (const auto& [lemma, v] : lex.entries()) lines.push_back(fmt::format("{}\t{}", lemma, v));
  auto set_echo = json::array();
  for (const auto& s : sets) set_echo.push_back({{"name", s.name}, {"terms", std::vector<std::string>(s.terms.begin(), s.terms.end())}});
  return {
      {"method", "mean lexicon valence per document, no negation handling"},
      {"lexicon", list_echo(source_of(sources, "lexicon"), lex.size(), fingerprint_lines(lines))},
      {"identity_sets", {{"source", source_of(sources, "identity_sets")}, {"sets", std::move(set_echo)}}},
  };
}

Analysis analyze_documents(std::string name, std::vector<Document> documents, const AnalysisSettings& settings,
                           const SentimentLexicon& lex, const std::vector<IdentityTermSet>& sets) {
  settings.graph.validate();
  Analysis a;
  auto& r = a.report;
  r.name = std::move(name);
  r.settings = settings;
  r.review_count = documents.size();

  std::erase_if(documents, [](const Document& d) { return d.sentences.empty(); });
  if (documents.empty()) throw EmptyCorpusError("no review survived cleaning; nothing to analyze");
  a.documents = std::move(documents);
  r.document_count = a.documents.size();
  for (const auto& d : a.documents) r.sentence_count += d.sentences.size();

  a.graph = build_graph(count_cooccurrences(a.documents, settings.graph.window_sentences), settings.graph);
  const auto& g = a.graph;
  r.node_count = g.node_count();
  r.edge_count = g.edge_count();
  r.largest_component_size = g.node_count() == 0 ? 0 : largest_component(g).size();

  r.density = g.node_count() < 2 ? MetricValue::undefined("graph has fewer than 2 nodes") : MetricValue::of(density(g));
  r.average_path_length =
      g.edge_count() == 0 ? MetricValue::undefined("graph has no edges") : MetricValue::of(average_path_length(g));

  a.partition = louvain(g, settings.community);
  r.community_count = a.partition.community_count;
  r.modularity = g.edge_count() == 0 ? MetricValue::undefined("graph has no edges")
                                     : MetricValue::of(a.partition.modularity);

  a.degree = degree_centrality(g);
  a.betweenness = betweenness_centrality(g);
  r.top_degree = top_of(a.degree, g, settings.top_k);
  r.top_betweenness = top_of(a.betweenness, g, settings.top_k);
  r.bridging = bridging_concepts(g, a.partition, a.betweenness, settings.top_k);

  r.community_sentiment = community_sentiment(a.documents, g, a.partition, lex);
  r.identity_alignment = identity_alignment(a.documents, sets, lex);
  r.sentiment_config = describe_sentiment(lex, sets);
  return a;
}

Analysis build_report(std::string name, const LoadedCorpus& corpus, const PipelineConfig& pipeline,
                      const AnalysisSettings& settings, const SentimentLexicon& lex,
                      const std::vector<IdentityTermSet>& sets) {
  std::vector<Document> docs;
  docs.reserve(corpus.reviews.size());
  for (const auto& review : corpus.reviews) docs.push_back(clean_document(review, pipeline));
  auto a = analyze_documents(std::move(name), std::move(docs), settings, lex, sets);
  a.report.manifest = corpus.manifest;
  a.report.pipeline = describe_pipeline(pipeline);
  return a;
}

json report_to_json(const NetworkReport& r, const json& provenance) {
  json corpus = {{"reviews", r.review_count}, {"documents", r.document_count}, {"sentences", r.sentence_count}};
  if (r.manifest) {
    corpus["manifest"] = {{"app_id", r.manifest->app_id},
                          {"collection_window", {r.manifest->collection_window.start, r.manifest->collection_window.end}},
                          {"filter_min_chars", r.manifest->filter_min_chars},
                          {"review_count_raw", r.manifest->review_count_raw},
                          {"review_count_validated", r.manifest->review_count_validated}};
  }

  auto bridging = json::array();
  for (const auto& b : r.bridging) {
    bridging.push_back({{"lemma", b.lemma}, {"betweenness", b.betweenness}, {"communities", b.adjacent_communities}});
  }
  auto sentiment = json::array();
  for (const auto& [c, s] : r.community_sentiment) {
    sentiment.push_back({{"community", c}, {"mean_valence", s.mean_valence}, {"support", s.support}});
  }
  auto identity = json::array();
  for (const auto& row : r.identity_alignment) {
    identity.push_back({{"name", row.name},
                        {"matching_documents", row.matching_documents},
                        {"scored_documents", row.scored_documents},
                        {"mean_valence", row.mean_valence ? json(*row.mean_valence) : json(nullptr)}});
  }

  const auto& s = r.settings;
  return {
      {"schema_version", kReportSchemaVersion},
      {"provenance", provenance},
      {"name", r.name},
      {"corpus", std::move(corpus)},
      {"config",
       {{"pipeline", r.pipeline},
        {"graph",
         {{"window_sentences", s.graph.window_sentences},
          {"min_node_freq", s.graph.min_node_freq},
          {"min_edge_weight", s.graph.min_edge_weight}}},
        {"community",
         {{"algorithm", "louvain"},
          {"resolution", s.community.resolution},
          {"seed", s.community.seed},
          {"weight_mode", to_string(s.community.mode)}}},
        {"sentiment", r.sentiment_config},
        {"top_k", s.top_k}}},
      {"metric_modes",
       {{"path_length", "unweighted hop distance over the largest connected component"},
        {"betweenness", "unnormalized, unweighted hop distance, each unordered pair once"},
        {"degree", "unweighted"},
        {"modularity", to_string(s.community.mode)},
        {"density", "unweighted edge count"},
        {"louvain_determinism", "seeded visit order; reference tools are typically nondeterministic"}}},
      {"graph", {{"nodes", r.node_count}, {"edges", r.edge_count}, {"largest_component_nodes", r.largest_component_size}}},
      {"metrics",
       {{"density", metric_to_json(r.density)},
        {"average_path_length", metric_to_json(r.average_path_length)},
        {"modularity", metric_to_json(r.modularity)},
        {"community_count", r.community_count}}},
      {"top_degree", ranked_to_json(r.top_degree)},
      {"top_betweenness", ranked_to_json(r.top_betweenness)},
      {"bridging_concepts", std::move(bridging)},
      {"community_sentiment", std::move(sentiment)},
      {"identity_alignment", std::move(identity)},
  };
}

NetworkReport report_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw DataError("unsupported report schema_version " + j.at("schema_version").dump());
    }
    NetworkReport r;
    r.name = j.value("name", std::string("unnamed"));
    const auto& m = j.at("metrics");
    r.density = metric_from_json(m.at("density"));
    r.average_path_length = metric_from_json(m.at("average_path_length"));
    r.modularity = metric_from_json(m.at("modularity"));
    r.community_count = m.value("community_count", std::size_t{0});

    if (auto g = j.find("graph"); g != j.end()) {
      r.node_count = g->value("nodes", std::size_t{0});
      r.edge_count = g->value("edges", std::size_t{0});
      r.largest_component_size = g->value("largest_component_nodes", std::size_t{0});
    }
    if (auto c = j.find("corpus"); c != j.end()) {
      r.review_count = c->value("reviews", std::size_t{0});
      r.document_count = c->value("documents", std::size_t{0});
      r.sentence_count = c->value("sentences", std::size_t{0});
      if (auto mf = c->find("manifest"); mf != c->end()) {
        CorpusManifest man;
        man.app_id = mf->at("app_id").get<std::uint32_t>();
        man.collection_window = {mf->at("collection_window")[0].get<std::int64_t>(),
                                 mf->at("collection_window")[1].get<std::int64_t>()};
        man.filter_min_chars = mf->at("filter_min_chars").get<std::size_t>();
        man.review_count_raw = mf->at("review_count_raw").get<std::size_t>();
        man.review_count_validated = mf->at("review_count_validated").get<std::size_t>();
        r.manifest = man;
      }
    }
    if (auto cfg = j.find("config"); cfg != j.end()) {
      r.pipeline = cfg->value("pipeline", json::object());
      r.sentiment_config = cfg->value("sentiment", json::object());
      if (auto gc = cfg->find("graph"); gc != cfg->end()) {
        r.settings.graph.window_sentences = gc->value("window_sentences", r.settings.graph.window_sentences);
        r.settings.graph.min_node_freq = gc->value("min_node_freq", r.settings.graph.min_node_freq);
        r.settings.graph.min_edge_weight = gc->value("min_edge_weight", r.settings.graph.min_edge_weight);
      }
      if (auto cc = cfg->find("community"); cc != cfg->end()) {
        r.settings.community.resolution = cc->value("resolution", 1.0);
        r.settings.community.seed = cc->value("seed", std::uint64_t{0});
        r.settings.community.mode =
            cc->value("weight_mode", std::string("weighted")) == "unweighted" ? WeightMode::unweighted : WeightMode::weighted;
      }
      r.settings.top_k = cfg->value("top_k", r.settings.top_k);
    }
    if (auto t = j.find("top_degree"); t != j.end()) r.top_degree = ranked_from_json(*t);
    if (auto t = j.find("top_betweenness"); t != j.end()) r.top_betweenness = ranked_from_json(*t);
    if (auto t = j.find("bridging_concepts"); t != j.end()) {
      for (const auto& b : *t) {
        r.bridging.push_back({0, b.at("lemma").get<std::string>(), b.at("betweenness").get<double>(),
                              b.at("communities").get<std::vector<CommunityId>>()});
      }
    }
    if (auto t = j.find("community_sentiment"); t != j.end()) {
      for (const auto& s : *t) {
        r.community_sentiment.emplace(s.at("community").get<CommunityId>(),
                                      CommunitySentiment{s.at("mean_valence").get<double>(), s.at("support").get<std::size_t>()});
      }
    }
    if (auto t = j.find("identity_alignment"); t != j.end()) {
      for (const auto& row : *t) {
        IdentityAlignmentRow out{row.at("name").get<std::string>(), row.at("matching_documents").get<std::size_t>(),
                                 row.value("scored_documents", std::size_t{0}), std::nullopt};
        if (!row.at("mean_valence").is_null()) out.mean_valence = row.at("mean_valence").get<double>();
        r.identity_alignment.push_back(std::move(out));
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw DataError(std::string("report: ") + e.what());
  }
}

ComparativeReport compare(const NetworkReport& a, const NetworkReport& b) {
  ComparativeReport c;
  c.name_a = a.name;
  c.name_b = b.name;
  auto row = [](std::string metric, const MetricValue& x, const MetricValue& y) {
    MetricComparison m{std::move(metric), x.value, y.value, std::nullopt};
    if (x.value && y.value) m.delta = *x.value - *y.value;
    return m;
  };
  c.rows.push_back(row("density", a.density, b.density));
  c.rows.push_back(row("average_path_length", a.average_path_length, b.average_path_length));
  c.rows.push_back(row("modularity", a.modularity, b.modularity));

  if (a.density.value && b.density.value && *b.density.value > 0.0) {
    c.relative_density = (*a.density.value - *b.density.value) / *b.density.value;
    c.relative_density_percent = std::lround(*c.relative_density * 100.0);
  }

  c.label_rule =
      "interpretive: denser and shorter average path than the other network -> \"Highly Interconnected\"; "
      "higher modularity -> \"Compartmentalized\"; ties assign no label";
  const auto& da = a.density.value;
  const auto& db = b.density.value;
  const auto& pa = a.average_path_length.value;
  const auto& pb = b.average_path_length.value;
  if (da && db && pa && pb) {
    if (*da > *db && *pa < *pb) c.labels_a.emplace_back(kHighlyInterconnected);
    if (*db > *da && *pb < *pa) c.labels_b.emplace_back(kHighlyInterconnected);
  }
  const auto& qa = a.modularity.value;
  const auto& qb = b.modularity.value;
  if (qa && qb) {
    if (*qa > *qb) c.labels_a.emplace_back(kCompartmentalized);
    if (*qb > *qa) c.labels_b.emplace_back(kCompartmentalized);
  }
  return c;
}

std::string render_comparison(const ComparativeReport& c) {
  static constexpr std::pair<const char*, const char*> kTitles[] = {
      {"density", "graph density"},
      {"average_path_length", "avg. path length"},
      {"modularity", "modularity"},
  };
  auto title = [](const std::string& metric) {
    for (const auto& [key, t] : kTitles) {
      if (metric == key) return std::string(t);
    }
    return metric;
  };
  const auto width = std::max<std::size_t>({24, c.name_a.size() + 2, c.name_b.size() + 2});

  std::string out = "Comparative topological metrics\n";
  out += fmt::format("{:<20}{:<{}}{:<{}}{}\n", "metric", c.name_a, width, c.name_b, width, "delta (a - b)");
  for (const auto& r : c.rows) {
    out += fmt::format("{:<20}{:<{}}{:<{}}{}\n", title(r.metric), fmt_number(r.a), width, fmt_number(r.b), width,
                       fmt_delta(r.delta));
  }
  out += fmt::format("{:<20}{:<{}}{:<{}}\n", "network type", join_labels(c.labels_a), width, join_labels(c.labels_b),
                     width);
  if (c.relative_density) {
    const long pct = *c.relative_density_percent;
    out += fmt::format("relative density: {} is ≈{}% {} than {} (exact {:.4f}%)\n", c.name_a, std::labs(pct),
                       pct >= 0 ? "higher" : "lower", c.name_b, *c.relative_density * 100.0);
  } else {
    out += "relative density: undefined (density of " + c.name_b + " is missing or zero)\n";
  }
  out += "network type rule (" + c.label_rule + ")\n";
  return out;
}

json comparison_to_json(const ComparativeReport& c, const json& provenance) {
  auto rows = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : c.rows) {
    rows.push_back({{"metric", r.metric}, {"a", opt(r.a)}, {"b", opt(r.b)}, {"delta", opt(r.delta)}});
  }
  return {
      {"schema_version", kReportSchemaVersion},
      {"provenance", provenance},
      {"a", c.name_a},
      {"b", c.name_b},
      {"metrics", std::move(rows)},
      {"relative_density", opt(c.relative_density)},
      {"relative_density_percent",
       c.relative_density_percent ? json(*c.relative_density_percent) : json(nullptr)},
      {"network_type", {{"a", c.labels_a}, {"b", c.labels_b}, {"rule", c.label_rule}}},
  };
}

void export_gexf(const SemanticGraph& g, const CommunityPartition& p, const CentralityTable& degree,
                 const CentralityTable& betweenness, const std::filesystem::path& path,
                 const std::string& description) {
  if (p.assignment.size() != g.node_count() || degree.scores.size() != g.node_count() ||
      betweenness.scores.size() != g.node_count()) {
    throw DataError("gexf export: node tables do not match the graph");
  }
  auto out = open_for_write(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<gexf xmlns=\"http://gexf.net/1.3\" xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://gexf.net/1.3 http://gexf.net/1.3/gexf.xsd\" version=\"1.3\">\n"
         "  <meta>\n"
      << "    <creator>" << kToolName << ' ' << kToolVersion << "</creator>\n";
  if (!description.empty()) out << "    <description>" << xml_escape(description) << "</description>\n";
  out << "  </meta>\n"
         "  <graph defaultedgetype=\"undirected\" mode=\"static\">\n"
         "    <attributes class=\"node\" mode=\"static\">\n"
         "      <attribute id=\"frequency\" title=\"frequency\" type=\"long\"/>\n"
         "      <attribute id=\"community\" title=\"community\" type=\"integer\"/>\n"
         "      <attribute id=\"degree\" title=\"degree\" type=\"integer\"/>\n"
         "      <attribute id=\"betweenness\" title=\"betweenness\" type=\"double\"/>\n"
         "    </attributes>\n"
         "    <nodes>\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << fmt::format(
        "      <node id=\"{}\" label=\"{}\">\n"
        "        <attvalues>\n"
        "          <attvalue for=\"frequency\" value=\"{}\"/>\n"
        "          <attvalue for=\"community\" value=\"{}\"/>\n"
        "          <attvalue for=\"degree\" value=\"{}\"/>\n"
        "          <attvalue for=\"betweenness\" value=\"{}\"/>\n"
        "        </attvalues>\n"
        "      </node>\n",
        v, xml_escape(g.lemma(v)), g.node(v).frequency, p.assignment[v], static_cast<std::uint64_t>(degree.scores[v]),
        betweenness.scores[v]);
  }
  out << "    </nodes>\n"
         "    <edges>\n";
  std::size_t edge_id = 0;
  for (const auto& e : g.edges()) {
    out << fmt::format("      <edge id=\"{}\" source=\"{}\" target=\"{}\" weight=\"{}\"/>\n", edge_id++, e.source,
                       e.target, e.weight);
  }
  out << "    </edges>\n"
         "  </graph>\n"
         "</gexf>\n";
  finish(out, path);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void export_csv_tables(const Analysis& a, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto& g = a.graph;

  const auto nodes_path = dir / "nodes.csv";
  auto nodes = open_for_write(nodes_path);
  nodes << "lemma,id,frequency,community,degree,betweenness\r\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    nodes << fmt::format("{},{},{},{},{},{}\r\n", csv_field(g.lemma(v)), v, g.node(v).frequency,
                         a.partition.assignment.at(v), static_cast<std::uint64_t>(a.degree.scores.at(v)),
                         a.betweenness.scores.at(v));
  }
  finish(nodes, nodes_path);

  const auto edges_path = dir / "edges.csv";
  auto edges = open_for_write(edges_path);
  edges << "source,target,weight\r\n";
  for (const auto& e : g.edges()) edges << fmt::format("{},{},{}\r\n", e.source, e.target, e.weight);
  finish(edges, edges_path);
}

void export_json(const json& document, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << document.dump(2) << '\n';
  finish(out, path);
}

}  // namespace semnet
