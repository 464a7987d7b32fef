#include <gtest/gtest.h>

#include <filesystem>

#include "phodcos/document.hpp"
#include "phodcos/errors.hpp"

using namespace phodcos;

TEST(Document, RoundTripIsExact) {
  const PHPath path = build_path(*exemplary_curve(), 8);
  const auto doc = ParameterizationDocument::from_path(path, {"exemplary", 1e-3, 0, 1.6e-3});
  EXPECT_EQ(doc.metadata.n_segments, 8);
  const auto back = ParameterizationDocument::from_json(doc.to_json());
  EXPECT_EQ(back.schema_version, "1");
  EXPECT_EQ(back.metadata.source, "exemplary");
  EXPECT_EQ(back.metadata.epsilon, 1e-3);
  EXPECT_EQ(back.metadata.max_error, 1.6e-3);
  EXPECT_EQ(back.h, path.h());
  const PHPath reloaded = back.to_path();
  ASSERT_EQ(reloaded.size(), path.size());
  for (std::size_t k = 0; k < path.size(); ++k) {
    for (std::size_t i = 0; i < 9; ++i) {
      EXPECT_EQ(reloaded.segments()[k].preimage_points()[i], path.segments()[k].preimage_points()[i]);
    }
    EXPECT_EQ(reloaded.segments()[k].start(), path.segments()[k].start());
  }
  for (int s = 0; s <= 97; ++s) {
    const double xi = s / 97.0;
    EXPECT_EQ(reloaded.position(xi), path.position(xi));
    EXPECT_EQ(reloaded.frame(xi).R, path.frame(xi).R);
    EXPECT_EQ(reloaded.geometry(xi).arc_length, path.geometry(xi).arc_length);
  }
}

TEST(Document, SaveAndLoad) {
  const PHPath path = build_path(*helix_curve(), 4);
  const auto file = std::filesystem::temp_directory_path() / "phodcos_doc_test.json";
  ParameterizationDocument::from_path(path, {"helix", 1e-6, 0, 0.0}).save(file);
  const auto doc = ParameterizationDocument::load(file);
  std::filesystem::remove(file);
  EXPECT_EQ(doc.segments.size(), 4u);
  EXPECT_EQ(doc.to_path().position(0.3), path.position(0.3));
}

TEST(Document, Rejections) {
  const PHPath path = build_path(*line_curve(), 1);
  std::string json = ParameterizationDocument::from_path(path, {"line", 1, 0, 0}).to_json();
  const auto pos = json.find("\"schema_version\": \"1\"");
  ASSERT_NE(pos, std::string::npos);
  std::string v2 = json;
  v2.replace(pos, std::string("\"schema_version\": \"1\"").size(), "\"schema_version\": \"2\"");
  EXPECT_THROW(ParameterizationDocument::from_json(v2), SchemaVersionMismatch);
  EXPECT_THROW(ParameterizationDocument::from_json("{not json"), ParseError);
  EXPECT_THROW(ParameterizationDocument::from_json("{\"schema_version\": \"1\"}"), ParseError);
  EXPECT_THROW(ParameterizationDocument::load("/nonexistent/doc.json"), Error);
}
