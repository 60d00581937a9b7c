#include "semnet/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "semnet/default_data.hpp"
#include "semnet/error.hpp"

namespace semnet {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_lemma(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) fn(lineno, line);
  }
}

}  // namespace

SentimentLexicon::SentimentLexicon(std::map<std::string, double, std::less<>> entries) : entries_(std::move(entries)) {
  for (const auto& [lemma, v] : entries_) {
    if (!is_lemma(lemma)) throw DataError("lexicon lemma '" + lemma + "' is not lowercase alphabetic");
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) throw DataError("valence of '" + lemma + "' outside [-1, 1]");
  }
}

SentimentLexicon SentimentLexicon::parse(std::string_view text, std::string_view source) {
  std::map<std::string, double, std::less<>> entries;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    const auto where = std::string(source) + ":" + std::to_string(lineno);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw DataError(where + ": expected 'lemma<TAB>valence'");
    const auto lemma = trim(line.substr(0, tab));
    const auto number = trim(line.substr(tab + 1));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), v);
    if (ec != std::errc() || ptr != number.data() + number.size()) {
      throw DataError(where + ": bad valence '" + std::string(number) + "'");
    }
    if (!is_lemma(lemma)) throw DataError(where + ": lemma must be lowercase alphabetic");
    if (!(v >= -1.0 && v <= 1.0)) throw DataError(where + ": valence outside [-1, 1]");
    entries.insert_or_assign(std::string(lemma), v);
  });
  return SentimentLexicon(std::move(entries));
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

SentimentLexicon SentimentLexicon::defaults() {
  return parse(default_data::kSentimentLexicon, "sentiment_lexicon.tsv");
}

std::optional<double> SentimentLexicon::valence(std::string_view lemma) const {
  if (auto it = entries_.find(lemma); it != entries_.end()) return it->second;
  return std::nullopt;
}

std::vector<IdentityTermSet> parse_identity_sets(std::string_view text, std::string_view source) {
  std::vector<IdentityTermSet> sets;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    const auto where = std::string(source) + ":" + std::to_string(lineno);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw DataError(where + ": expected 'name: term, term, ...'");
    IdentityTermSet set{std::string(trim(line.substr(0, colon))), {}};
    if (set.name.empty()) throw DataError(where + ": empty set name");
    std::string_view rest = line.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto term = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (term.empty()) continue;
      if (!is_lemma(term)) throw DataError(where + ": term '" + std::string(term) + "' is not a lowercase lemma");
      set.terms.emplace(term);
    }
    if (set.terms.empty()) throw DataError(where + ": set '" + set.name + "' has no terms");
    sets.push_back(std::move(set));
  });
  return sets;
}

std::vector<IdentityTermSet> load_identity_sets(const std::filesystem::path& path) {
  return parse_identity_sets(read_file(path), path.string());
}

std::vector<IdentityTermSet> default_identity_sets() {
  return parse_identity_sets(default_data::kIdentitySets, "identity_sets.txt");
}

std::optional<double> score_document(const Document& doc, const SentimentLexicon& lex) {
  double sum = 0.0;
  std::size_t hits = 0;
  for (const auto& sentence : doc.sentences) {
    for (const auto& lemma : sentence) {
      if (auto v = lex.valence(lemma)) {
        sum += *v;
        ++hits;
      }
    }
  }
  if (hits == 0) return std::nullopt;
  return sum / static_cast<double>(hits);
}

std::map<CommunityId, CommunitySentiment> community_sentiment(std::span<const Document> docs, const SemanticGraph& g,
                                                              const CommunityPartition& p,
                                                              const SentimentLexicon& lex) {
  if (p.assignment.size() != g.node_count()) throw DataError("partition does not match graph");

  struct Accumulator {
    double weighted_sum = 0.0;
    double weight = 0.0;
    std::size_t support = 0;
  };
  std::map<CommunityId, Accumulator> acc;

  for (const auto& doc : docs) {
    const auto score = score_document(doc, lex);
    if (!score) continue;
    std::map<CommunityId, std::size_t> tokens_in;
    std::size_t assigned = 0;
    for (const auto& sentence : doc.sentences) {
      for (const auto& lemma : sentence) {
        if (lex.contains(lemma)) continue;
        if (auto id = g.find(lemma)) {
          ++tokens_in[p.assignment[*id]];
          ++assigned;
        }
      }
    }
    if (assigned == 0) continue;
    for (const auto& [c, count] : tokens_in) {
      const double w = static_cast<double>(count) / static_cast<double>(assigned);
      auto& a = acc[c];
      a.weighted_sum += w * *score;
      a.weight += w;
      ++a.support;
    }
  }

  std::map<CommunityId, CommunitySentiment> out;
  for (const auto& [c, a] : acc) {
    // Weighted mean of values in [-1, 1]; clamp only guards rounding at the ends.
    const double mean = std::clamp(a.weighted_sum / a.weight, -1.0, 1.0);
    out.emplace(c, CommunitySentiment{mean, a.support});
  }
  return out;
}

std::vector<IdentityAlignmentRow> identity_alignment(std::span<const Document> docs,
                                                     std::span<const IdentityTermSet> sets,
                                                     const SentimentLexicon& lex) {
  std::vector<IdentityAlignmentRow> rows;
  rows.reserve(sets.size());
  for (const auto& set : sets) {
    IdentityAlignmentRow row{set.name, 0, 0, std::nullopt};
    double sum = 0.0;
    for (const auto& doc : docs) {
      const bool matches = std::any_of(doc.sentences.begin(), doc.sentences.end(), [&](const Sentence& s) {
        return std::any_of(s.begin(), s.end(), [&](const std::string& l) { return set.terms.contains(l); });
      });
      if (!matches) continue;
      ++row.matching_documents;
      if (auto score = score_document(doc, lex)) {
        sum += *score;
        ++row.scored_documents;
      }
    }
    if (row.scored_documents > 0) row.mean_valence = sum / static_cast<double>(row.scored_documents);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace semnet
