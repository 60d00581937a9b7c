#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/community.hpp"
#include "semnet/semantic_graph.hpp"
#include "semnet/text_pipeline.hpp"

namespace semnet {

/// lemma -> valence in [-1, +1].
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  /// Throws DataError for out-of-range valences or non-alphabetic lemmas.
  explicit SentimentLexicon(std::map<std::string, double, std::less<>> entries);

  /// "lemma<TAB>valence" per line, '#' comments.
  static SentimentLexicon parse(std::string_view text, std::string_view source = "<memory>");
  static SentimentLexicon load(const std::filesystem::path& path);
  static SentimentLexicon defaults();

  std::optional<double> valence(std::string_view lemma) const;
  bool contains(std::string_view lemma) const { return entries_.contains(lemma); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, double, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, double, std::less<>> entries_;
};

struct IdentityTermSet {
  std::string name;
  WordSet terms;
};

/// "name: term, term, ..." per line. Throws DataError on an empty term list.
std::vector<IdentityTermSet> parse_identity_sets(std::string_view text, std::string_view source = "<memory>");
std::vector<IdentityTermSet> load_identity_sets(const std::filesystem::path& path);
std::vector<IdentityTermSet> default_identity_sets();

/// Mean valence of the document's lemma tokens found in the lexicon; empty
/// when none match.
std::optional<double> score_document(const Document& doc, const SentimentLexicon& lex);

struct CommunitySentiment {
  double mean_valence = 0.0;
  std::size_t support = 0;  // documents contributing
};

/// Each scorable document contributes its score to community c with weight
/// equal to the share of its non-lexicon lemma tokens that are graph nodes
/// assigned to c. Communities without support are omitted.
std::map<CommunityId, CommunitySentiment> community_sentiment(std::span<const Document> docs, const SemanticGraph& g,
                                                              const CommunityPartition& p,
                                                              const SentimentLexicon& lex);

struct IdentityAlignmentRow {
  std::string name;
  std::size_t matching_documents = 0;
  std::size_t scored_documents = 0;
  std::optional<double> mean_valence;
};

/// A document matches a set when it holds at least one of its terms. The
/// mean runs over matching documents that have a score.
std::vector<IdentityAlignmentRow> identity_alignment(std::span<const Document> docs,
                                                     std::span<const IdentityTermSet> sets,
                                                     const SentimentLexicon& lex);

}  // namespace semnet
