#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace semnet {

/// One review as returned by the store's review endpoint.
struct RawReview {
  std::string review_id;
  std::uint32_t app_id = 0;
  std::string text;
  std::int64_t created_at = 0;  // UNIX seconds
  std::string language;         // ISO 639-1
  std::uint64_t votes_up = 0;

  friend bool operator==(const RawReview&, const RawReview&) = default;
};

/// Closed interval of UNIX timestamps.
struct TimeWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;

  bool contains(std::int64_t t) const noexcept { return t >= start && t <= end; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct CorpusManifest {
  std::uint32_t app_id = 0;
  TimeWindow collection_window;
  std::size_t filter_min_chars = 50;
  std::size_t review_count_raw = 0;
  std::size_t review_count_validated = 0;

  friend bool operator==(const CorpusManifest&, const CorpusManifest&) = default;
};

inline constexpr std::size_t kDefaultMinChars = 50;

/// Number of Unicode scalar values in a UTF-8 string. Invalid bytes count as
/// one scalar each.
std::size_t utf8_scalar_count(std::string_view text) noexcept;

/// True iff the review text has strictly more than `min_chars` scalars.
bool filter_substantive(const RawReview& review, std::size_t min_chars = kDefaultMinChars) noexcept;

/// Sidecar manifest path for a corpus file: "<path>.manifest.json".
std::filesystem::path manifest_path_for(const std::filesystem::path& corpus_path);

/// Writes reviews as JSONL to `path` and the manifest next to it.
/// The manifest's validated count must equal reviews.size().
/// A non-null `provenance` is stored in the manifest under "provenance";
/// load_corpus ignores it.
void persist_corpus(const std::vector<RawReview>& reviews, const CorpusManifest& manifest,
                    const std::filesystem::path& path, const nlohmann::json* provenance = nullptr);

struct LoadedCorpus {
  CorpusManifest manifest;
  std::vector<RawReview> reviews;
};

/// Reads a corpus written by persist_corpus. Throws CorruptionError when the
/// record count disagrees with the manifest, a record is malformed, or a
/// review_id repeats; IoError when either file cannot be read.
LoadedCorpus load_corpus(const std::filesystem::path& path);

}  // namespace semnet
