#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/corpus.hpp"

namespace semnet {

using Sentence = std::vector<std::string>;

/// A cleaned review: ordered sentences of lemmas. No sentence is empty.
struct Document {
  std::string review_id;
  std::vector<Sentence> sentences;

  friend bool operator==(const Document&, const Document&) = default;
};

using WordSet = std::set<std::string, std::less<>>;
using ConflationLexicon = std::map<std::string, std::string, std::less<>>;

struct PipelineConfig {
  WordSet standard_stoplist;
  WordSet technical_stoplist;
  ConflationLexicon conflation_lexicon;
  std::size_t min_token_len = 3;

  bool is_stopped(std::string_view word) const {
    return standard_stoplist.contains(word) || technical_stoplist.contains(word);
  }

  /// Shipped stop-lists and conflation lexicon.
  static PipelineConfig defaults();
};

/// Parses a one-entry-per-line word list; '#' starts a comment. Entries are
/// lowercased and must be alphabetic.
WordSet parse_word_list(std::string_view text, std::string_view source = "<memory>");
WordSet load_word_list(const std::filesystem::path& path);

/// Parses "token lemma" lines. Both sides must be alphabetic; they are lowercased.
ConflationLexicon parse_conflation_lexicon(std::string_view text, std::string_view source = "<memory>");
ConflationLexicon load_conflation_lexicon(const std::filesystem::path& path);

/// Splits on '.', '!', '?' and runs of line breaks. Zero-length pieces are
/// dropped; everything else, whitespace included, is kept verbatim.
std::vector<std::string> segment_sentences(std::string_view text);

/// Lowercased maximal runs of ASCII letters of at least `min_len` characters.
/// Digits, punctuation and non-ASCII bytes separate tokens.
std::vector<std::string> tokenize(std::string_view sentence, std::size_t min_len = 3);

/// Reduces a lowercase alphabetic token to its base form.
///
/// One reduction step is a lexicon lookup if the token is a lexicon key and
/// otherwise the first applicable suffix rule (ies, sses, es, s, ing, ed).
/// Steps repeat until the token stops changing, so the result is always a
/// fixed point and lemmatize(lemmatize(t)) == lemmatize(t). A lexicon cycle
/// resolves to its lexicographically smallest member.
std::string lemmatize(std::string_view token, const ConflationLexicon& lexicon);

/// Order-preserving removal of every lemma found in either stop-list.
std::vector<std::string> apply_stoplists(const std::vector<std::string>& lemmas, const PipelineConfig& config);

/// segment -> tokenize -> lemmatize -> stop-filter. Surface tokens that are
/// themselves stop-listed are dropped before lemmatization so closed-class
/// words ("during", "this") cannot escape the list through suffix stripping.
/// Sentences left empty are dropped.
Document clean_document(const RawReview& review, const PipelineConfig& config);

}  // namespace semnet
