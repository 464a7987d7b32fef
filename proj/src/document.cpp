#include "phodcos/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phodcos/errors.hpp"

namespace phodcos {

using nlohmann::json;

ParameterizationDocument ParameterizationDocument::from_path(const PHPath& path,
                                                             DocumentMetadata metadata) {
  ParameterizationDocument doc;
  doc.xi0 = path.xi0();
  doc.xif = path.xif();
  doc.h = path.h();
  doc.segments = path.segments();
  metadata.n_segments = static_cast<int>(path.size());
  doc.metadata = std::move(metadata);
  return doc;
}

PHPath ParameterizationDocument::to_path() const { return PHPath(segments, xi0, xif); }

std::string ParameterizationDocument::to_json(int indent) const {
  json segs = json::array();
  for (const Segment& s : segments) {
    json pre = json::array();
    for (const Quaterniond& q : s.preimage_points()) pre.push_back({q.w(), q.x(), q.y(), q.z()});
    const Eigen::Vector3d& p0 = s.start();
    segs.push_back({{"preimage", pre}, {"p0", {p0.x(), p0.y(), p0.z()}}});
  }
  const json j = {
      {"schema_version", schema_version},
      {"xi0", xi0},
      {"xif", xif},
      {"h", h},
      {"segments", segs},
      {"metadata",
       {{"source", metadata.source},
        {"epsilon", metadata.epsilon},
        {"n_segments", metadata.n_segments},
        {"max_error", metadata.max_error}}},
  };
  return j.dump(indent);
}

ParameterizationDocument ParameterizationDocument::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  try {
    const std::string version = j.at("schema_version").get<std::string>();
    if (version != kSchemaVersion) {
      throw SchemaVersionMismatch("document schema version '" + version + "', expected '" +
                                  kSchemaVersion + "'");
    }
    ParameterizationDocument doc;
    doc.xi0 = j.at("xi0").get<double>();
    doc.xif = j.at("xif").get<double>();
    doc.h = j.at("h").get<double>();
    for (const json& s : j.at("segments")) {
      const json& pre = s.at("preimage");
      if (pre.size() != kPreimageDegree + 1) throw ParseError(0, "preimage needs 9 control points");
      Preimage<double> a;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const auto c = pre.at(i).get<std::array<double, 4>>();
        a[i] = Quaterniond(c[0], c[1], c[2], c[3]);
      }
      const auto p0 = s.at("p0").get<std::array<double, 3>>();
      doc.segments.emplace_back(a, Eigen::Vector3d(p0[0], p0[1], p0[2]));
    }
    if (doc.segments.empty()) throw ParseError(0, "document has no segments");
    const json& m = j.at("metadata");
    doc.metadata.source = m.at("source").get<std::string>();
    doc.metadata.epsilon = m.at("epsilon").get<double>();
    doc.metadata.n_segments = m.at("n_segments").get<int>();
    doc.metadata.max_error = m.at("max_error").get<double>();
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed document: ") + e.what());
  }
}

void ParameterizationDocument::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw Error("cannot write '" + file.string() + "'");
  out << to_json() << '\n';
}

ParameterizationDocument ParameterizationDocument::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open '" + file.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace phodcos
