#include "semnet/corpus.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "semnet/error.hpp"

namespace semnet {

using nlohmann::json;

std::size_t utf8_scalar_count(std::string_view text) noexcept {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0 && lead <= 0xF4) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = lead <= 0xEF ? 3 : 1;
    } else if (lead >= 0xC2) {
      len = 2;
    }
    if (len > 1) {
      if (i + len > text.size()) {
        len = 1;
      } else {
        for (std::size_t k = 1; k < len; ++k) {
          if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
            len = 1;
            break;
          }
        }
      }
    }
    i += len;
    ++count;
  }
  return count;
}

bool filter_substantive(const RawReview& review, std::size_t min_chars) noexcept {
  return utf8_scalar_count(review.text) > min_chars;
}

std::filesystem::path manifest_path_for(const std::filesystem::path& corpus_path) {
  auto p = corpus_path;
  p += ".manifest.json";
  return p;
}

namespace {

json review_to_json(const RawReview& r) {
  // Key order of nlohmann::json objects is lexicographic, which keeps lines byte-stable.
  return json{{"review_id", r.review_id}, {"app_id", r.app_id},     {"text", r.text},
              {"created_at", r.created_at}, {"language", r.language}, {"votes_up", r.votes_up}};
}

template <typename T>
T required(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw CorruptionError("corpus line " + std::to_string(line) + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw CorruptionError("corpus line " + std::to_string(line) + ": bad type for '" + key + "'");
  }
}

RawReview review_from_json(const json& obj, std::size_t line) {
  if (!obj.is_object()) {
    throw CorruptionError("corpus line " + std::to_string(line) + ": not a JSON object");
  }
  RawReview r;
  r.review_id = required<std::string>(obj, "review_id", line);
  r.app_id = required<std::uint32_t>(obj, "app_id", line);
  r.text = required<std::string>(obj, "text", line);
  r.created_at = required<std::int64_t>(obj, "created_at", line);
  r.language = required<std::string>(obj, "language", line);
  r.votes_up = required<std::uint64_t>(obj, "votes_up", line);
  if (r.review_id.empty()) {
    throw CorruptionError("corpus line " + std::to_string(line) + ": empty review_id");
  }
  return r;
}

json manifest_to_json(const CorpusManifest& m) {
  return json{{"app_id", m.app_id},
              {"collection_window", {m.collection_window.start, m.collection_window.end}},
              {"filter_min_chars", m.filter_min_chars},
              {"review_count_raw", m.review_count_raw},
              {"review_count_validated", m.review_count_validated}};
}

CorpusManifest manifest_from_json(const json& j) {
  try {
    CorpusManifest m;
    m.app_id = j.at("app_id").get<std::uint32_t>();
    const auto& w = j.at("collection_window");
    if (!w.is_array() || w.size() != 2) throw CorruptionError("manifest: collection_window must be [start, end]");
    m.collection_window = {w[0].get<std::int64_t>(), w[1].get<std::int64_t>()};
    m.filter_min_chars = j.at("filter_min_chars").get<std::size_t>();
    m.review_count_raw = j.at("review_count_raw").get<std::size_t>();
    m.review_count_validated = j.at("review_count_validated").get<std::size_t>();
    return m;
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("manifest: ") + e.what());
  }
}

}  // namespace

void persist_corpus(const std::vector<RawReview>& reviews, const CorpusManifest& manifest,
                    const std::filesystem::path& path, const json* provenance) {
  if (manifest.review_count_validated != reviews.size()) {
    throw DataError("manifest counts " + std::to_string(manifest.review_count_validated) +
                    " validated reviews but " + std::to_string(reviews.size()) + " were given");
  }
  if (manifest.review_count_validated > manifest.review_count_raw) {
    throw DataError("manifest: validated count exceeds raw count");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& r : reviews) out << review_to_json(r).dump() << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());

  const auto mpath = manifest_path_for(path);
  std::ofstream mout(mpath, std::ios::binary | std::ios::trunc);
  if (!mout) throw IoError("cannot open " + mpath.string() + " for writing");
  auto mj = manifest_to_json(manifest);
  if (provenance != nullptr) mj["provenance"] = *provenance;
  mout << mj.dump(2) << '\n';
  mout.flush();
  if (!mout) throw IoError("write failed: " + mpath.string());
}

LoadedCorpus load_corpus(const std::filesystem::path& path) {
  const auto mpath = manifest_path_for(path);
  std::ifstream min(mpath, std::ios::binary);
  if (!min) throw IoError("cannot read manifest " + mpath.string());
  json mj;
  try {
    mj = json::parse(min);
  } catch (const json::parse_error& e) {
    throw CorruptionError("manifest " + mpath.string() + ": " + e.what());
  }

  LoadedCorpus corpus;
  corpus.manifest = manifest_from_json(mj);

  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus " + path.string());
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorruptionError("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
    auto review = review_from_json(obj, lineno);
    if (!seen.insert(review.review_id).second) {
      throw CorruptionError("corpus line " + std::to_string(lineno) + ": duplicate review_id " + review.review_id);
    }
    corpus.reviews.push_back(std::move(review));
  }
  if (corpus.reviews.size() != corpus.manifest.review_count_validated) {
    throw CorruptionError("corpus " + path.string() + " holds " + std::to_string(corpus.reviews.size()) +
                          " records but its manifest declares " +
                          std::to_string(corpus.manifest.review_count_validated));
  }
  if (corpus.manifest.review_count_validated > corpus.manifest.review_count_raw) {
    throw CorruptionError("manifest: validated count exceeds raw count");
  }
  return corpus;
}

}  // namespace semnet
