#include "semnet/store.hpp"

#include <fstream>

#include "semnet/error.hpp"
#include "semnet/version.hpp"

namespace semnet {

using nlohmann::json;

namespace {

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(1) << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void check_schema(const json& j, const std::filesystem::path& path) {
  if (!j.is_object() || !j.contains("schema_version")) {
    throw CorruptionError(path.string() + ": missing schema_version");
  }
  if (j.at("schema_version") != kReportSchemaVersion) {
    throw CorruptionError(path.string() + ": unsupported schema_version " + j.at("schema_version").dump());
  }
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CorruptionError(path.string() + ": " + e.what());
  }
}

json manifest_json(const CorpusManifest& m) {
  return {{"app_id", m.app_id},
          {"collection_window", {m.collection_window.start, m.collection_window.end}},
          {"filter_min_chars", m.filter_min_chars},
          {"review_count_raw", m.review_count_raw},
          {"review_count_validated", m.review_count_validated}};
}

CorpusManifest manifest_from(const json& j) {
  CorpusManifest m;
  m.app_id = j.at("app_id").get<std::uint32_t>();
  m.collection_window = {j.at("collection_window").at(0).get<std::int64_t>(),
                         j.at("collection_window").at(1).get<std::int64_t>()};
  m.filter_min_chars = j.at("filter_min_chars").get<std::size_t>();
  m.review_count_raw = j.at("review_count_raw").get<std::size_t>();
  m.review_count_validated = j.at("review_count_validated").get<std::size_t>();
  return m;
}

void write_documents(const DocumentStore& store, const std::filesystem::path& path) {
  auto docs = json::array();
  for (const auto& d : store.documents) docs.push_back({{"review_id", d.review_id}, {"sentences", d.sentences}});
  json j = {{"schema_version", kReportSchemaVersion}, {"provenance", store.provenance}, {"documents", std::move(docs)}};
  if (store.manifest) j["manifest"] = manifest_json(*store.manifest);
  write_json(j, path);
}

DocumentStore read_documents(const std::filesystem::path& path) {
  const auto j = read_json_file(path);
  check_schema(j, path);
  try {
    DocumentStore store;
    store.provenance = j.value("provenance", json::object());
    if (auto m = j.find("manifest"); m != j.end()) store.manifest = manifest_from(*m);
    for (const auto& d : j.at("documents")) {
      Document doc{d.at("review_id").get<std::string>(), d.at("sentences").get<std::vector<Sentence>>()};
      for (const auto& s : doc.sentences) {
        if (s.empty()) throw CorruptionError(path.string() + ": empty sentence in " + doc.review_id);
      }
      store.documents.push_back(std::move(doc));
    }
    return store;
  } catch (const json::exception& e) {
    throw CorruptionError(path.string() + ": " + e.what());
  }
}

void write_graph(const GraphStore& store, const std::filesystem::path& path) {
  json j = graph_to_json(store.graph);
  j["schema_version"] = kReportSchemaVersion;
  j["provenance"] = store.provenance;
  write_json(j, path);
}

GraphStore read_graph(const std::filesystem::path& path) {
  const auto j = read_json_file(path);
  check_schema(j, path);
  return {j.value("provenance", json::object()), graph_from_json(j)};
}

}  // namespace semnet
