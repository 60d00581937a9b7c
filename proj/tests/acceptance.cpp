// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <sys/wait.h>

#include "oracles.hpp"
#include "planted.hpp"
#include "semnet/community.hpp"
#include "semnet/cooccur.hpp"
#include "semnet/corpus.hpp"
#include "semnet/metrics.hpp"
#include "semnet/text_pipeline.hpp"

using namespace semnet;
using namespace semnet::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kMetricTolerance = 1e-9;
constexpr double kModularityExpected = 0.357142857;
constexpr double kModularityTolerance = 1e-9;
constexpr double kMinAri = 0.9;
constexpr double kMinQ = 0.3;
constexpr double kOracleBudgetSeconds = 30.0;
constexpr double kPlantedBudgetSeconds = 10.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// Runs the CLI binary with stdout captured to `stdout_path`; returns its exit status.
int run_cli(const std::string& args, const fs::path& cwd, const fs::path& stdout_path) {
  const auto cmd = fmt::format("cd {} && {} {} > {} 2>&1", quoted(cwd), quoted(SEMNET_CLI_PATH), args, quoted(stdout_path));
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome metric_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  double worst_apl = 0;
  double worst_btw = 0;
  int graphs = 0;
  for (; graphs < 200; ++graphs) {
    const auto g = random_graph(2 + rng() % 29, 0.2, rng, 3);
    const auto btw = betweenness_centrality(g).scores;
    const auto expected = betweenness_oracle(g);
    for (std::size_t i = 0; i < btw.size(); ++i) worst_btw = std::max(worst_btw, std::abs(btw[i] - expected[i]));
    if (g.edge_count() > 0) worst_apl = std::max(worst_apl, std::abs(average_path_length(g) - apl_oracle(g)));
  }
  const double secs = seconds_since(t0);
  const bool ok = worst_btw <= kMetricTolerance && worst_apl <= kMetricTolerance && secs < kOracleBudgetSeconds;
  return {ok, fmt::format("{} graphs, max |betweenness err|={:.3g}, max |apl err|={:.3g}, {:.2f}s (limit {}s)", graphs,
                          worst_btw, worst_apl, secs, kOracleBudgetSeconds)};
}

Outcome modularity_exactness() {
  const auto g = two_triangles();
  const std::vector<CommunityId> split{0, 0, 0, 1, 1, 1};
  const double q = modularity_of(g, split);
  const double best = max_modularity_bruteforce(g);
  const auto p = louvain(g, {1.0, 0});
  const bool ok = std::abs(q - kModularityExpected) <= kModularityTolerance &&
                  std::abs(p.modularity - best) <= kModularityTolerance &&
                  std::abs(best - q) <= kModularityTolerance;
  return {ok, fmt::format("Q(two triangles)={:.12f}, brute-force max={:.12f}, louvain seed 0={:.12f}", q, best,
                          p.modularity)};
}

Outcome cooccurrence_oracle_check() {
  std::mt19937_64 rng(3);
  int mismatches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Document> docs(rng() % 11);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      docs[d].review_id = std::to_string(d);
      docs[d].sentences.resize(rng() % 7);
      for (auto& s : docs[d].sentences) {
        s.resize(1 + rng() % 5);
        for (auto& l : s) l = std::string(1, static_cast<char>('a' + rng() % 12));
      }
    }
    const std::size_t w = 1 + rng() % 3;
    if (!(count_cooccurrences(docs, w) == cooccurrence_oracle(docs, w))) ++mismatches;
  }
  return {mismatches == 0, fmt::format("500 fuzzed corpora, {} mismatches", mismatches)};
}

Outcome planted_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto config = PipelineConfig::defaults();
  double min_ari = 1.0;
  double min_q = 1.0;
  bool labels_ok = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<Document> docs;
    for (const auto& r : planted_reviews(seed)) docs.push_back(clean_document(r, config));
    const auto g = build_graph(count_cooccurrences(docs, 3), GraphBuildConfig{});
    const auto p = louvain(g, {1.0, seed});
    std::vector<std::uint32_t> truth;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const int t = planted_topic_of(g.lemma(v));
      labels_ok = labels_ok && t >= 0;
      truth.push_back(static_cast<std::uint32_t>(t));
    }
    min_ari = std::min(min_ari, adjusted_rand_index({p.assignment.begin(), p.assignment.end()}, truth));
    min_q = std::min(min_q, p.modularity);
  }
  const double secs = seconds_since(t0);
  const bool ok = labels_ok && min_ari >= kMinAri && min_q >= kMinQ && secs < kPlantedBudgetSeconds;
  return {ok, fmt::format("seeds 0-9: min ARI={:.4f} (>= {}), min Q={:.4f} (>= {}), {:.2f}s (limit {}s)", min_ari, kMinAri,
                          min_q, kMinQ, secs, kPlantedBudgetSeconds)};
}

Outcome pipeline_determinism() {
  const fs::path fixtures(SEMNET_FIXTURE_DIR);
  const auto work = fs::temp_directory_path() / "semnet_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  fs::copy_file(fixtures / "planted.jsonl", work / "planted.jsonl");
  fs::copy_file(fixtures / "planted.jsonl.manifest.json", work / "planted.jsonl.manifest.json");

  struct Run {
    std::string extra;
    std::string golden;
  };
  const std::vector<Run> runs{{"", "planted_report.golden.json"},
                              {"--min-edge-weight 10", "planted_report_w10.golden.json"}};
  std::vector<std::string> notes;
  bool ok = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto a = work / fmt::format("a{}.json", i);
    const auto b = work / fmt::format("b{}.json", i);
    const auto args = fmt::format("analyze --corpus planted.jsonl --seed 0 {} --out ", runs[i].extra);
    const int ca = run_cli(args + quoted(a), work, work / "log.txt");
    const int cb = run_cli(args + quoted(b), work, work / "log.txt");
    const auto bytes_a = slurp(a);
    const bool identical = ca == 0 && cb == 0 && !bytes_a.empty() && bytes_a == slurp(b);
    const bool golden = identical && bytes_a == slurp(fixtures / runs[i].golden);
    ok = ok && identical && golden;
    notes.push_back(fmt::format("{}: reruns {}, golden {}", runs[i].golden, identical ? "identical" : "DIFFER",
                                golden ? "match" : "MISMATCH"));
  }
  return {ok, fmt::format("{}; {}", notes[0], notes[1])};
}

Outcome comparison_format() {
  const fs::path fixtures(SEMNET_FIXTURE_DIR);
  const auto work = fs::temp_directory_path() / "semnet_acceptance_compare";
  fs::create_directories(work);
  const auto out = work / "compare.txt";
  const int code = run_cli(fmt::format("compare {} {}", quoted(fixtures / "stub_eco.json"),
                                       quoted(fixtures / "stub_wolfquest.json")),
                           work, out);
  const auto text = slurp(out);
  std::vector<std::string> missing;
  for (const char* needle : {"0.058", "0.041", "2.14", "3.05", "0.42", "0.56", "≈41% higher"}) {
    if (text.find(needle) == std::string::npos) missing.emplace_back(needle);
  }
  const bool ok = code == 0 && missing.empty();
  return {ok, missing.empty() ? fmt::format("exit {}, all reference values and the ≈41% headline present", code)
                              : fmt::format("exit {}, missing: {}", code, fmt::join(missing, ", "))};
}

Outcome lemmatizer_contract() {
  const auto lex = PipelineConfig::defaults().conflation_lexicon;
  bool family = true;
  for (const char* t : {"polluting", "polluted", "pollution"}) family = family && lemmatize(t, lex) == "pollute";

  std::mt19937_64 rng(7);
  const std::vector<std::string> suffixes{"", "s", "es", "ies", "sses", "ing", "ed", "ings", "edly", "ation"};
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string t;
    const auto len = 1 + rng() % 10;
    for (std::size_t k = 0; k < len; ++k) t.push_back(static_cast<char>('a' + rng() % 26));
    t += suffixes[rng() % suffixes.size()];
    const auto once = lemmatize(t, lex);
    if (lemmatize(once, lex) != once) ++violations;
  }
  return {family && violations == 0,
          fmt::format("pollute family {}, 10000 fuzzed tokens, {} idempotence violations", family ? "ok" : "BROKEN",
                      violations)};
}

Outcome filter_contract() {
  auto review = [](std::string text) { return RawReview{"r", 1, std::move(text), 0, "en", 0}; };
  std::string wide;  // multibyte characters count once each
  for (int i = 0; i < 51; ++i) wide += "é";
  const std::vector<std::pair<RawReview, bool>> cases{
      {review(std::string(49, 'a')), false}, {review(std::string(50, 'a')), false},
      {review(std::string(51, 'a')), true},  {review(std::string(500, 'a')), true},
      {review(""), false},                   {review(wide.substr(0, 100)), false},
      {review(wide), true},
  };
  int wrong = 0;
  for (const auto& [r, expected] : cases) wrong += filter_substantive(r) != expected ? 1 : 0;
  return {wrong == 0, fmt::format("{} boundary fixtures (49/50/51 chars, empty, multibyte), {} wrong", cases.size(), wrong)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"metric-oracle equivalence", metric_oracles},
      {"modularity exactness", modularity_exactness},
      {"co-occurrence oracle", cooccurrence_oracle_check},
      {"planted-structure recovery", planted_recovery},
      {"pipeline determinism", pipeline_determinism},
      {"comparison report format", comparison_format},
      {"lemmatizer contract", lemmatizer_contract},
      {"substantive-content filter", filter_contract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << fmt::format("{} [{}] {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
  }
  return failures == 0 ? 0 : 1;
}
