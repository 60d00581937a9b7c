#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "semnet/corpus.hpp"
#include "semnet/semantic_graph.hpp"
#include "semnet/text_pipeline.hpp"

namespace semnet {

/// Output of the clean stage.
struct DocumentStore {
  nlohmann::json provenance = nlohmann::json::object();
  std::optional<CorpusManifest> manifest;
  std::vector<Document> documents;
};

void write_documents(const DocumentStore& store, const std::filesystem::path& path);
DocumentStore read_documents(const std::filesystem::path& path);

/// Output of the graph stage.
struct GraphStore {
  nlohmann::json provenance = nlohmann::json::object();
  SemanticGraph graph;
};

void write_graph(const GraphStore& store, const std::filesystem::path& path);
GraphStore read_graph(const std::filesystem::path& path);

/// Parses a whole JSON file; IoError if unreadable, CorruptionError if not JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json manifest_json(const CorpusManifest& m);
CorpusManifest manifest_from(const nlohmann::json& j);

}  // namespace semnet
