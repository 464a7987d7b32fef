#pragma once

#include <filesystem>
#include <string>

#include "phodcos/pipeline.hpp"

namespace phodcos {

inline constexpr const char* kSchemaVersion = "1";

struct DocumentMetadata {
  std::string source;
  double epsilon = 0.0;
  int n_segments = 0;
  double max_error = 0.0;
};

/// Serialized form of a PHPath: per segment the 9 preimage control points
/// [w, x, y, z] and the start point. Doubles are written in shortest
/// round-trip form, so reloading reproduces the path exactly.
struct ParameterizationDocument {
  std::string schema_version = kSchemaVersion;
  double xi0 = 0.0;
  double xif = 1.0;
  double h = 1.0;
  std::vector<Segment> segments;
  DocumentMetadata metadata;

  static ParameterizationDocument from_path(const PHPath& path, DocumentMetadata metadata);
  PHPath to_path() const;

  std::string to_json(int indent = 2) const;
  /// Throws SchemaVersionMismatch for another schema version and ParseError
  /// (row 0) for malformed documents.
  static ParameterizationDocument from_json(const std::string& text);

  void save(const std::filesystem::path& file) const;
  static ParameterizationDocument load(const std::filesystem::path& file);
};

}  // namespace phodcos
