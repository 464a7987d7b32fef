#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "phodcos/errors.hpp"
#include "phodcos/pipeline.hpp"
#include "phodcos/sampled_curve.hpp"

using namespace phodcos;
namespace fs = std::filesystem;

namespace {

std::vector<Sample> sample(const CurveSource& src, int n) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double xi = src.xi0() + src.width() * i / (n - 1);
    out.push_back({xi, src.evaluate(xi, 0)});
  }
  return out;
}

std::vector<Sample> ellipse(int n) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double xi = static_cast<double>(i) / (n - 1);
    const double t = 2 * std::numbers::pi * xi;
    out.push_back({xi, Eigen::Vector3d(2 * std::cos(t), std::sin(t), 0.3 * std::sin(2 * t))});
  }
  return out;
}

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("phodcos_csv_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".csv");
    std::ofstream(path_) << content;
  }
  ~TempFile() { fs::remove(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(QuinticSpline, ReproducesLine) {
  const auto samples = sample(*line_curve(), 40);
  const SampledCurve fit(samples, 1e-12);
  const double scale = 3.0;
  for (int s = 0; s <= 50; ++s) {
    const double xi = s / 50.0;
    EXPECT_LE((fit.evaluate(xi, 0) - line_curve()->evaluate(xi, 0)).norm(), 1e-12 * scale);
    EXPECT_LE((fit.evaluate(xi, 1) - Eigen::Vector3d(1, 2, -1)).norm(), 1e-10 * scale);
    for (int k = 2; k <= 4; ++k) EXPECT_LE(fit.evaluate(xi, k).norm(), 1e-8 * scale) << k;
  }
}

TEST(QuinticSpline, C4AcrossKnots) {
  const auto fit = from_samples(ellipse(60), 1e-12);
  const auto knots = fit->breakpoints();
  ASSERT_FALSE(knots.empty());
  for (double t : knots) {
    for (int k = 0; k <= 4; ++k) {
      const Eigen::Vector3d l = fit->evaluate(t - 1e-12, k);
      const Eigen::Vector3d r = fit->evaluate(t + 1e-12, k);
      EXPECT_LE((l - r).norm(), 1e-6 * std::max(1.0, l.norm())) << "order " << k;
    }
  }
}

TEST(QuinticSpline, InterpolatesWhenBasisEqualsSamples) {
  const auto samples = ellipse(30);
  const auto spline = QuinticSpline::fit(samples, 30);
  EXPECT_EQ(spline.basis_count(), 30);
  for (const auto& s : samples) EXPECT_LE((spline.evaluate(s.xi, 0) - s.point).norm(), 1e-11);
}

TEST(SampledCurve, FitToleranceAndDeterminism) {
  const auto samples = ellipse(400);
  const SampledCurve a(samples, 1e-6);
  const SampledCurve b(samples, 1e-6);
  EXPECT_LE(a.max_residual(), 1e-6);
  EXPECT_EQ(a.spline().knots(), b.spline().knots());
  EXPECT_TRUE((a.spline().coeffs().array() == b.spline().coeffs().array()).all());
  for (const auto& s : samples) EXPECT_LE((a.evaluate(s.xi, 0) - s.point).norm(), 1e-6);
  EXPECT_TRUE(validate_derivatives(a).ok);
}

TEST(SampledCurve, ClosedCurveThroughPipeline) {
  const auto fit = from_samples(ellipse(400), 1e-9);
  EXPECT_LE((fit->evaluate(0.0, 0) - fit->evaluate(1.0, 0)).norm(), 2e-9);
  const PHPath path = build_path(*fit, 16);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto m = junction_mismatch(path, k);
    EXPECT_LT(m.position, 1e-10);
    EXPECT_LT(m.frame, 1e-8);
    EXPECT_LT(m.preimage, 1e-8);
  }
  EXPECT_LT(conversion_error(*fit, path, 200), 1e-4);
}

TEST(SampledCurve, Rejections) {
  auto few = ellipse(7);
  EXPECT_THROW(SampledCurve(few, 1e-6), InsufficientSamples);
  auto samples = ellipse(20);
  std::swap(samples[5], samples[6]);
  EXPECT_THROW(SampledCurve(samples, 1e-6), NonMonotonicParameter);
  samples = ellipse(20);
  samples[9].xi = samples[8].xi;
  EXPECT_THROW(from_samples(samples, 1e-6), NonMonotonicParameter);
}

TEST(LoadCsv, ThreeColumnsUniformParameter) {
  std::string text = "x,y,z\n";
  for (int i = 0; i < 100; ++i) text += std::to_string(i) + ",0.5,-1e-3\n";
  const TempFile f(text);
  const auto s = load_orbit_csv(f.path());
  ASSERT_EQ(s.size(), 100u);
  for (int i = 0; i < 100; ++i) EXPECT_DOUBLE_EQ(s[static_cast<std::size_t>(i)].xi, i / 99.0);
  EXPECT_EQ(s[3].point, Eigen::Vector3d(3, 0.5, -1e-3));
}

TEST(LoadCsv, FourColumnsAffineTime) {
  const TempFile f("10 1 2 3\n12 4 5 6\n\n20\t7 8 9\n");
  const auto s = load_orbit_csv(f.path());
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[0].xi, 0.0);
  EXPECT_DOUBLE_EQ(s[1].xi, 0.2);
  EXPECT_DOUBLE_EQ(s[2].xi, 1.0);
  EXPECT_EQ(s[2].point, Eigen::Vector3d(7, 8, 9));
}

TEST(LoadCsv, BomCrlfAndScientific) {
  const TempFile f("\xEF\xBB\xBFt, x, y, z\r\n0, 1e0, +2.5E-1, -3\r\n1, 1, 1, 1\r\n");
  const auto s = load_orbit_csv(f.path());
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].point, Eigen::Vector3d(1, 0.25, -3));
}

TEST(LoadCsv, MalformedRowNamesRow) {
  std::string text;
  for (int i = 1; i <= 10; ++i) text += i == 7 ? "1,2,abc\n" : "1,2,3\n";
  const TempFile f(text);
  try {
    load_orbit_csv(f.path());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 7u);
    EXPECT_NE(std::string(e.what()).find("row 7"), std::string::npos);
  }
}

TEST(LoadCsv, ColumnCountMismatch) {
  const TempFile f("1,2,3\n4,5,6\n7,8\n");
  try {
    load_orbit_csv(f.path());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
  const TempFile g("1,2\n");
  EXPECT_THROW(load_orbit_csv(g.path()), ParseError);
}

TEST(LoadCsv, EmptyAndMissing) {
  const TempFile header_only("x,y,z\n\n");
  EXPECT_THROW(load_orbit_csv(header_only.path()), EmptyFile);
  const TempFile empty("");
  EXPECT_THROW(load_orbit_csv(empty.path()), EmptyFile);
  EXPECT_THROW(load_orbit_csv("/nonexistent/orbit.csv"), Error);
}
