#include "semnet/text_pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "semnet/default_data.hpp"
#include "semnet/error.hpp"

namespace semnet {

namespace {

bool is_ascii_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower_ascii(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), to_lower_ascii);
  return out;
}

bool all_alpha(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_ascii_alpha);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Calls fn(lineno, content) for every non-blank line with comments stripped.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
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

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void bad_line(std::string_view source, std::size_t lineno, const std::string& what) {
  throw DataError(std::string(source) + ":" + std::to_string(lineno) + ": " + what);
}

// --- suffix rules ---------------------------------------------------------

bool ends_with(std::string_view s, std::string_view suffix) noexcept { return s.ends_with(suffix); }

bool is_vowel_at(std::string_view s, std::size_t i) noexcept {
  switch (s[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      return i > 0 && !is_vowel_at(s, i - 1);
    default:
      return false;
  }
}

bool has_vowel(std::string_view s) noexcept {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_vowel_at(s, i)) return true;
  }
  return false;
}

// Number of vowel-consonant sequences, as in Porter's measure.
int measure(std::string_view s) noexcept {
  int m = 0;
  bool prev_vowel = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool v = is_vowel_at(s, i);
    if (prev_vowel && !v) ++m;
    prev_vowel = v;
  }
  return m;
}

// consonant-vowel-consonant ending, last consonant not w/x/y
bool ends_cvc(std::string_view s) noexcept {
  const auto n = s.size();
  if (n < 3) return false;
  const char last = s[n - 1];
  if (last == 'w' || last == 'x' || last == 'y') return false;
  return !is_vowel_at(s, n - 1) && is_vowel_at(s, n - 2) && !is_vowel_at(s, n - 3);
}

// Repairs a stem after "ing"/"ed" removal: hopp -> hop, hop -> hope, creat -> create.
std::string restore_stem(std::string stem) {
  const auto n = stem.size();
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) return stem + 'e';
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel_at(stem, n - 1)) {
    const char c = stem[n - 1];
    if (c != 'l' && c != 's' && c != 'z') stem.pop_back();
    return stem;
  }
  if (measure(stem) == 1 && ends_cvc(stem)) return stem + 'e';
  return stem;
}

// One reduction step; returns the input unchanged when nothing applies.
std::string reduce_once(const std::string& t, const ConflationLexicon& lexicon) {
  if (auto it = lexicon.find(t); it != lexicon.end()) return it->second;
  const auto n = t.size();
  if (n <= 3) return t;
  std::string_view v(t);

  if (ends_with(v, "ies") && n >= 5) return std::string(v.substr(0, n - 3)) + 'y';
  if (ends_with(v, "sses")) return std::string(v.substr(0, n - 2));
  if (ends_with(v, "es") && n >= 5) {
    if (ends_with(v, "ches") || ends_with(v, "shes") || ends_with(v, "xes") || ends_with(v, "zzes")) {
      return std::string(v.substr(0, n - 2));
    }
    return std::string(v.substr(0, n - 1));
  }
  if (ends_with(v, "s")) {
    if (ends_with(v, "ss") || ends_with(v, "us") || ends_with(v, "is")) return t;
    return std::string(v.substr(0, n - 1));
  }
  if (ends_with(v, "ing")) {
    const auto stem = v.substr(0, n - 3);
    if (stem.size() >= 3 && has_vowel(stem)) return restore_stem(std::string(stem));
    return t;
  }
  if (ends_with(v, "ed") && !ends_with(v, "eed")) {
    const auto stem = v.substr(0, n - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return restore_stem(std::string(stem));
    return t;
  }
  return t;
}

}  // namespace

WordSet parse_word_list(std::string_view text, std::string_view source) {
  WordSet out;
  for_each_data_line(text, [&](std::size_t lineno, std::string_view line) {
    if (!all_alpha(line)) bad_line(source, lineno, "entry '" + std::string(line) + "' is not alphabetic");
    out.insert(lowercase(line));
  });
  return out;
}

WordSet load_word_list(const std::filesystem::path& path) {
  return parse_word_list(read_text_file(path), path.string());
}

ConflationLexicon parse_conflation_lexicon(std::string_view text, std::string_view source) {
  ConflationLexicon out;
  for_each_data_line(text, [&](std::size_t lineno, std::string_view line) {
    const auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) bad_line(source, lineno, "expected 'token lemma'");
    const auto token = line.substr(0, sep);
    const auto lemma = trim(line.substr(sep));
    if (!all_alpha(token) || !all_alpha(lemma)) bad_line(source, lineno, "token and lemma must be alphabetic");
    out.insert_or_assign(lowercase(token), lowercase(lemma));
  });
  return out;
}

ConflationLexicon load_conflation_lexicon(const std::filesystem::path& path) {
  return parse_conflation_lexicon(read_text_file(path), path.string());
}

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig c;
  c.standard_stoplist = parse_word_list(default_data::kStandardStoplist, "stoplist_standard.txt");
  c.technical_stoplist = parse_word_list(default_data::kTechnicalStoplist, "stoplist_technical.txt");
  c.conflation_lexicon = parse_conflation_lexicon(default_data::kConflationLexicon, "conflation.txt");
  return c;
}

std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    if (end > start) out.emplace_back(text.substr(start, end - start));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' || c == '!' || c == '?' || c == '\n' || c == '\r') {
      flush(i);
      start = i + 1;
    }
  }
  flush(text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence, std::size_t min_len) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    if (!is_ascii_alpha(sentence[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < sentence.size() && is_ascii_alpha(sentence[j])) ++j;
    if (j - i >= min_len) out.push_back(lowercase(sentence.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::string lemmatize(std::string_view token, const ConflationLexicon& lexicon) {
  std::vector<std::string> trail{std::string(token)};
  for (;;) {
    std::string next = reduce_once(trail.back(), lexicon);
    if (next == trail.back()) return next;
    if (auto seen = std::find(trail.begin(), trail.end(), next); seen != trail.end()) {
      return *std::min_element(seen, trail.end());
    }
    trail.push_back(std::move(next));
  }
}

std::vector<std::string> apply_stoplists(const std::vector<std::string>& lemmas, const PipelineConfig& config) {
  std::vector<std::string> out;
  out.reserve(lemmas.size());
  for (const auto& l : lemmas) {
    if (!config.is_stopped(l)) out.push_back(l);
  }
  return out;
}

Document clean_document(const RawReview& review, const PipelineConfig& config) {
  Document doc{review.review_id, {}};
  for (const auto& segment : segment_sentences(review.text)) {
    std::vector<std::string> lemmas;
    for (const auto& token : tokenize(segment, config.min_token_len)) {
      if (config.is_stopped(token)) continue;
      lemmas.push_back(lemmatize(token, config.conflation_lexicon));
    }
    auto kept = apply_stoplists(lemmas, config);
    if (!kept.empty()) doc.sentences.push_back(std::move(kept));
  }
  return doc;
}

}  // namespace semnet
