#include "semnet/cli.hpp"

#include <charconv>
#include <chrono>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "semnet/corpus.hpp"
#include "semnet/cooccur.hpp"
#include "semnet/error.hpp"
#include "semnet/report.hpp"
#include "semnet/sentiment.hpp"
#include "semnet/store.hpp"
#include "semnet/text_pipeline.hpp"
#include "semnet/version.hpp"

namespace semnet::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::int64_t parse_time(const std::string& text, bool end_of_day) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char dash1 = 0;
  char dash2 = 0;
  if (text.size() == 10 && std::sscanf(text.c_str(), "%4d%c%2u%c%2u", &y, &dash1, &m, &dash2, &d) == 5 &&
      dash1 == '-' && dash2 == '-') {
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) throw DataError("invalid date '" + text + "'");
    const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + (end_of_day ? 86399 : 0);
  }
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("expected YYYY-MM-DD or a UNIX timestamp, got '" + text + "'");
  }
  return v;
}

namespace {

/// Error for a stage input that does not exist yet.
class MissingStageError : public DataError {
 public:
  using DataError::DataError;
};

void require_input(const fs::path& path, const char* what, const char* producer) {
  if (!fs::exists(path)) {
    throw MissingStageError(fmt::format("{} '{}' not found; produce it with `semnet {}` first", what, path.string(),
                                        producer));
  }
}

json provenance(const std::string& command, json config) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", std::move(config)}};
}

/// Verbose output; a null stream discards it.
struct Diagnostics {
  std::ostream* os = nullptr;

  void provenance(const json& prov) const {
    if (os != nullptr) *os << "provenance: " << prov.dump() << '\n';
  }
};

std::string file_label(const std::string& path) { return fs::path(path).filename().string(); }

struct PipelineFlags {
  std::vector<std::string> stoplists;
  std::string standard_stoplist;
  std::string conflation;
  std::size_t min_token_len = 3;

  void add_to(CLI::App* app) {
    app->add_option("--stoplist", stoplists, "Extra technical stop-list file(s), merged with the default")
        ->check(CLI::ExistingFile);
    app->add_option("--standard-stoplist", standard_stoplist, "Replace the standard function-word list")
        ->check(CLI::ExistingFile);
    app->add_option("--conflation", conflation, "Replace the conflation lexicon")->check(CLI::ExistingFile);
    app->add_option("--min-token-len", min_token_len, "Shortest token kept")->capture_default_str();
  }

  std::pair<PipelineConfig, json> build() const {
    auto config = PipelineConfig::defaults();
    std::map<std::string, std::string> sources;
    config.min_token_len = min_token_len;
    if (!standard_stoplist.empty()) {
      config.standard_stoplist = load_word_list(standard_stoplist);
      sources["standard_stoplist"] = file_label(standard_stoplist);
    }
    if (!stoplists.empty()) {
      std::string label = "builtin";
      for (const auto& p : stoplists) {
        config.technical_stoplist.merge(load_word_list(p));
        label += "+" + file_label(p);
      }
      sources["technical_stoplist"] = label;
    }
    if (!conflation.empty()) {
      config.conflation_lexicon = load_conflation_lexicon(conflation);
      sources["conflation_lexicon"] = file_label(conflation);
    }
    return {std::move(config), describe_pipeline(config, sources)};
  }
};

struct GraphFlags {
  GraphBuildConfig config;

  void add_to(CLI::App* app) {
    app->add_option("--window", config.window_sentences, "Sliding window size in sentences")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--min-node-freq", config.min_node_freq, "Drop lemmas rarer than this")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--min-edge-weight", config.min_edge_weight, "Drop edges lighter than this")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }

  json echo() const {
    return {{"window_sentences", config.window_sentences},
            {"min_node_freq", config.min_node_freq},
            {"min_edge_weight", config.min_edge_weight}};
  }
};

struct CommunityFlags {
  LouvainOptions options;
  bool unweighted = false;

  void add_to(CLI::App* app) {
    app->add_option("--resolution", options.resolution, "Louvain resolution")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", options.seed, "Seed for every randomized step")->capture_default_str();
    app->add_flag("--unweighted-modularity", unweighted, "Treat every edge as weight 1 for communities");
  }

  LouvainOptions resolved() const {
    auto o = options;
    o.mode = unweighted ? WeightMode::unweighted : WeightMode::weighted;
    return o;
  }

  json echo() const {
    const auto o = resolved();
    return {{"resolution", o.resolution}, {"seed", o.seed}, {"weight_mode", to_string(o.mode)}};
  }
};

// --- subcommands -------------------------------------------------------------

struct FetchCommand {
  std::uint32_t app_id = 0;
  std::string from = "2018-01-01";
  std::string to = "2026-01-31";
  std::string language = "en";
  int pages = 10;
  std::size_t min_chars = kDefaultMinChars;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--app-id", app_id, "Store application id")->required()->check(CLI::PositiveNumber);
    app->add_option("--from", from, "Window start, YYYY-MM-DD or UNIX seconds")->capture_default_str();
    app->add_option("--to", to, "Window end (inclusive), YYYY-MM-DD or UNIX seconds")->capture_default_str();
    app->add_option("--language", language, "ISO 639-1 language code")->capture_default_str();
    app->add_option("--pages", pages, "Maximum number of result pages")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--min-chars", min_chars, "Reviews must be longer than this many characters")->capture_default_str();
    app->add_option("--out", out, "Corpus file (JSONL); manifest goes to <out>.manifest.json")->required();
  }

  int run(std::ostream& os, const Diagnostics& diag, const Environment& env) const {
    FetchOptions opts;
    opts.app_id = app_id;
    opts.window = {parse_time(from, false), parse_time(to, true)};
    if (opts.window.start > opts.window.end) throw DataError("--from is after --to");
    opts.language = language;
    opts.page_limit = pages;

    RateLimiter limiter(rate_limit_from_env(), env.sleep);
    auto transport = env.make_transport();
    const auto fetched = fetch_reviews(*transport, opts, limiter, env.sleep);

    std::vector<RawReview> kept;
    for (const auto& r : fetched) {
      if (filter_substantive(r, min_chars)) kept.push_back(r);
    }
    const CorpusManifest manifest{app_id, opts.window, min_chars, fetched.size(), kept.size()};
    const auto prov = provenance("fetch", {{"app_id", app_id},
                                           {"window", {opts.window.start, opts.window.end}},
                                           {"language", language},
                                           {"pages", pages},
                                           {"min_chars", min_chars},
                                           {"rate_limit_rps", limiter.rate()}});
    diag.provenance(prov);
    persist_corpus(kept, manifest, out, &prov);
    os << fmt::format("fetched {} reviews, {} validated (> {} chars) -> {}\n", fetched.size(), kept.size(), min_chars,
                      out);
    return kOk;
  }
};

struct CleanCommand {
  std::string corpus;
  std::string out;
  PipelineFlags pipeline;

  void add_to(CLI::App* app) {
    app->add_option("--corpus", corpus, "Corpus file written by fetch")->required();
    pipeline.add_to(app);
    app->add_option("--out", out, "Document store (JSON)")->required();
  }

  int run(std::ostream& os, const Diagnostics& diag) const {
    require_input(corpus, "corpus", "fetch");
    const auto loaded = load_corpus(corpus);
    const auto [config, echo] = pipeline.build();
    DocumentStore store;
    store.manifest = loaded.manifest;
    store.provenance = provenance("clean", {{"corpus", file_label(corpus)}, {"pipeline", echo}});
    std::size_t sentences = 0;
    for (const auto& r : loaded.reviews) {
      auto doc = clean_document(r, config);
      sentences += doc.sentences.size();
      store.documents.push_back(std::move(doc));
    }
    diag.provenance(store.provenance);
    write_documents(store, out);
    os << fmt::format("cleaned {} reviews into {} sentences -> {}\n", store.documents.size(), sentences, out);
    return kOk;
  }
};

struct GraphCommand {
  std::string documents;
  std::string out;
  GraphFlags graph;

  void add_to(CLI::App* app) {
    app->add_option("--documents", documents, "Document store written by clean")->required();
    graph.add_to(app);
    app->add_option("--out", out, "Graph file (JSON)")->required();
  }

  int run(std::ostream& os, const Diagnostics& diag) const {
    require_input(documents, "document store", "clean");
    const auto store = read_documents(documents);
    GraphStore gs;
    gs.graph = build_graph(count_cooccurrences(store.documents, graph.config.window_sentences), graph.config);
    gs.provenance = provenance("graph", {{"documents", file_label(documents)}, {"graph", graph.echo()}});
    diag.provenance(gs.provenance);
    write_graph(gs, out);
    os << fmt::format("graph: {} nodes, {} edges -> {}\n", gs.graph.node_count(), gs.graph.edge_count(), out);
    return kOk;
  }
};

struct SentimentFlags {
  std::string lexicon;
  std::string identity_sets;

  void add_to(CLI::App* app) {
    app->add_option("--lexicon", lexicon, "Sentiment lexicon (lemma<TAB>valence)")->check(CLI::ExistingFile);
    app->add_option("--identity-sets", identity_sets, "Identity term sets (name: term, term)")->check(CLI::ExistingFile);
  }

  std::tuple<SentimentLexicon, std::vector<IdentityTermSet>, std::map<std::string, std::string>> build() const {
    std::map<std::string, std::string> sources;
    auto lex = SentimentLexicon::defaults();
    auto sets = default_identity_sets();
    if (!lexicon.empty()) {
      lex = SentimentLexicon::load(lexicon);
      sources["lexicon"] = file_label(lexicon);
    }
    if (!identity_sets.empty()) {
      sets = load_identity_sets(identity_sets);
      sources["identity_sets"] = file_label(identity_sets);
    }
    return {std::move(lex), std::move(sets), std::move(sources)};
  }
};

struct AnalyzeCommand {
  std::string corpus;
  std::string documents;
  std::string name;
  std::string out;
  std::size_t top_k = 25;
  PipelineFlags pipeline;
  GraphFlags graph;
  CommunityFlags community;
  SentimentFlags sentiment;

  void add_to(CLI::App* app) {
    auto* c = app->add_option("--corpus", corpus, "Corpus file; cleaned with the pipeline flags");
    auto* d = app->add_option("--documents", documents, "Document store written by clean");
    c->excludes(d);
    app->add_option("--name", name, "Label for this network in reports");
    pipeline.add_to(app);
    graph.add_to(app);
    community.add_to(app);
    sentiment.add_to(app);
    app->add_option("--top-k", top_k, "Rows in centrality tables")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--out", out, "Report file (JSON)")->required();
  }

  int run(std::ostream& os, const Diagnostics& diag) const {
    if (corpus.empty() && documents.empty()) {
      throw MissingStageError("analyze needs --corpus (from `semnet fetch`) or --documents (from `semnet clean`)");
    }
    AnalysisSettings settings{graph.config, community.resolved(), top_k};
    auto [lex, sets, sentiment_sources] = sentiment.build();

    Analysis analysis;
    json input;
    if (!corpus.empty()) {
      require_input(corpus, "corpus", "fetch");
      const auto loaded = load_corpus(corpus);
      const auto [config, echo] = pipeline.build();
      const auto label = name.empty() ? fmt::format("app {}", loaded.manifest.app_id) : name;
      analysis = build_report(label, loaded, config, settings, lex, sets);
      analysis.report.pipeline = echo;
      input = {{"corpus", file_label(corpus)}};
    } else {
      require_input(documents, "document store", "clean");
      auto store = read_documents(documents);
      const auto label = !name.empty() ? name
                         : store.manifest ? fmt::format("app {}", store.manifest->app_id)
                                          : fs::path(documents).stem().string();
      auto pipeline_echo = store.provenance.value("config", json::object()).value("pipeline", json::object());
      analysis = analyze_documents(label, std::move(store.documents), settings, lex, sets);
      analysis.report.manifest = store.manifest;
      analysis.report.pipeline = std::move(pipeline_echo);
      input = {{"documents", file_label(documents)}};
    }
    analysis.report.sentiment_config = describe_sentiment(lex, sets, sentiment_sources);

    auto prov = provenance("analyze", {{"input", input},
                                       {"graph", graph.echo()},
                                       {"community", community.echo()},
                                       {"top_k", top_k}});
    prov["seed"] = community.options.seed;
    diag.provenance(prov);
    export_json(report_to_json(analysis.report, prov), out);

    const auto& r = analysis.report;
    auto show = [](const MetricValue& m) { return m.value ? fmt::format("{:.4f}", *m.value) : "undefined"; };
    os << fmt::format("{}: V={} E={} density={} path={} modularity={} communities={} -> {}\n", r.name, r.node_count,
                      r.edge_count, show(r.density), show(r.average_path_length), show(r.modularity),
                      r.community_count, out);
    return kOk;
  }
};

struct CompareCommand {
  std::string a;
  std::string b;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("report_a", a, "First report JSON")->required();
    app->add_option("report_b", b, "Second report JSON")->required();
    app->add_option("--out", out, "Also write the comparison as JSON");
  }

  int run(std::ostream& os, const Diagnostics& diag) const {
    require_input(a, "report", "analyze");
    require_input(b, "report", "analyze");
    const auto ra = report_from_json(read_json_file(a));
    const auto rb = report_from_json(read_json_file(b));
    const auto cmp = compare(ra, rb);
    os << render_comparison(cmp);
    const auto prov = provenance("compare", {{"a", file_label(a)}, {"b", file_label(b)}});
    diag.provenance(prov);
    if (!out.empty()) export_json(comparison_to_json(cmp, prov), out);
    return kOk;
  }
};

struct ExportCommand {
  std::string graph_path;
  std::string out;
  CommunityFlags community;

  void add_to(CLI::App* app) {
    app->add_option("--graph", graph_path, "Graph file written by graph")->required();
    community.add_to(app);
    app->add_option("--out", out, "Output directory for graph.gexf, nodes.csv, edges.csv")->required();
  }

  int run(std::ostream& os, const Diagnostics& diag) const {
    require_input(graph_path, "graph file", "graph");
    auto gs = read_graph(graph_path);
    Analysis a;
    a.graph = std::move(gs.graph);
    a.partition = louvain(a.graph, community.resolved());
    a.degree = degree_centrality(a.graph);
    a.betweenness = betweenness_centrality(a.graph);

    const fs::path dir(out);
    export_csv_tables(a, dir);
    const auto prov = provenance("export", {{"graph", file_label(graph_path)}, {"community", community.echo()}});
    diag.provenance(prov);
    export_gexf(a.graph, a.partition, a.degree, a.betweenness, dir / "graph.gexf", prov.dump());
    os << fmt::format("exported {} nodes, {} edges, {} communities -> {}\n", a.graph.node_count(), a.graph.edge_count(),
                      a.partition.community_count, dir.string());
    return kOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Semantic co-occurrence networks from game-review corpora", "semnet"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Print stage diagnostics");

  FetchCommand fetch;
  CleanCommand clean;
  GraphCommand graph;
  AnalyzeCommand analyze;
  CompareCommand comparecmd;
  ExportCommand exportcmd;
  auto* fetch_app = app.add_subcommand("fetch", "Download reviews from the store review endpoint");
  auto* clean_app = app.add_subcommand("clean", "Segment, tokenize, lemmatize and stop-filter a corpus");
  auto* graph_app = app.add_subcommand("graph", "Build the co-occurrence graph from cleaned documents");
  auto* analyze_app = app.add_subcommand("analyze", "Compute network metrics, communities and sentiment");
  auto* compare_app = app.add_subcommand("compare", "Compare two reports side by side");
  auto* export_app = app.add_subcommand("export", "Write GEXF and CSV tables for a graph");
  fetch.add_to(fetch_app);
  clean.add_to(clean_app);
  graph.add_to(graph_app);
  analyze.add_to(analyze_app);
  comparecmd.add_to(compare_app);
  exportcmd.add_to(export_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failing->help();
    return kUsageError;
  }

  const Diagnostics diag{verbose ? &err : nullptr};
  try {
    if (fetch_app->parsed()) return fetch.run(out, diag, env);
    if (clean_app->parsed()) return clean.run(out, diag);
    if (graph_app->parsed()) return graph.run(out, diag);
    if (analyze_app->parsed()) return analyze.run(out, diag);
    if (compare_app->parsed()) return comparecmd.run(out, diag);
    if (export_app->parsed()) return exportcmd.run(out, diag);
  } catch (const NetworkError& e) {
    err << "network error: " << e.what() << " (resume cursor: " << e.cursor() << ")\n";
    return kIoError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace semnet::cli
