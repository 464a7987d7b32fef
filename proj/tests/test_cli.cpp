#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "phodcos/commands.hpp"
#include "phodcos/document.hpp"

using namespace phodcos;
using namespace phodcos::cli;
namespace fs = std::filesystem;

namespace {

fs::path temp(const std::string& name) {
  return fs::temp_directory_path() / ("phodcos_cli_" + std::to_string(::getpid()) + "_" + name);
}

SourceSpec curve(const std::string& name) {
  SourceSpec s;
  s.curve = name;
  return s;
}

std::vector<std::vector<double>> read_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell == "-" ? NAN : std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string fit_to(const std::string& curve_name, double eps, const fs::path& file) {
  FitOptions opt;
  opt.source = curve(curve_name);
  opt.epsilon = eps;
  opt.output = file.string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fit(opt, out, err), kOk) << err.str();
  return out.str();
}

std::string eval_doc(const fs::path& file, int samples) {
  EvalOptions opt;
  opt.document = file.string();
  opt.samples = samples;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_eval(opt, out, err), kOk) << err.str();
  return out.str();
}

}  // namespace

TEST(CmdFit, Exemplary) {
  const auto file = temp("ex.json");
  const std::string msg = fit_to("exemplary", 1e-4, file);
  EXPECT_NE(msg.find("n_segments=16"), std::string::npos) << msg;
  const auto doc = ParameterizationDocument::load(file);
  EXPECT_LE(doc.metadata.n_segments, 16);
  EXPECT_LT(doc.metadata.max_error, 1e-4);
  EXPECT_EQ(doc.metadata.source, "exemplary");
  fs::remove(file);
}

TEST(CmdFit, LineStaysAtInitialCount) {
  FitOptions opt;
  opt.source = curve("line");
  opt.epsilon = 1e-9;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fit(opt, out, err), kOk);
  EXPECT_NE(out.str().find("n_segments=2 "), std::string::npos);
}

TEST(CmdFit, CsvSourceMetadata) {
  const auto csv = temp("orbit.csv");
  {
    std::ofstream f(csv);
    f << "x,y,z\n";
    for (int i = 0; i < 300; ++i) {
      const double t = 2 * std::numbers::pi * i / 299.0;
      f.precision(17);
      f << 2 * std::cos(t) << ',' << std::sin(t) << ',' << 0.3 * std::sin(2 * t) << '\n';
    }
  }
  const auto doc_file = temp("orbit.json");
  FitOptions opt;
  opt.source.csv = csv.string();
  opt.epsilon = 1e-6;
  opt.output = doc_file.string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_fit(opt, out, err), kOk) << err.str();
  const auto doc = ParameterizationDocument::load(doc_file);
  EXPECT_EQ(doc.metadata.source, "csv:" + csv.string());
  EXPECT_LT(doc.metadata.max_error, 1e-6);
  const auto again = ParameterizationDocument::from_json(doc.to_json());
  EXPECT_EQ(again.to_path().position(0.42), doc.to_path().position(0.42));
  fs::remove(csv);
  fs::remove(doc_file);
}

TEST(CmdFit, ErrorCodes) {
  std::ostringstream out, err;
  FitOptions opt;
  opt.source = curve("nope");
  EXPECT_EQ(cmd_fit(opt, out, err), kInputError);
  opt.source = SourceSpec{};
  EXPECT_EQ(cmd_fit(opt, out, err), kInputError);
  opt.source.csv = "/nonexistent.csv";
  EXPECT_EQ(cmd_fit(opt, out, err), kInputError);
  opt.source = curve("exemplary");
  opt.epsilon = -1;
  EXPECT_EQ(cmd_fit(opt, out, err), kInputError);
  opt.epsilon = 1e-30;
  opt.max_segments = 8;
  opt.samples_per_segment = 20;
  EXPECT_EQ(cmd_fit(opt, out, err), kToleranceFailure);
}

TEST(CmdConvergence, ExemplaryTable) {
  ConvergenceOptions opt;
  opt.source = curve("exemplary");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_convergence(opt, out, err), kOk) << err.str();
  std::string header;
  const auto rows = read_csv(out.str(), &header);
  EXPECT_EQ(header, "n_segments,error,ratio");
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_TRUE(std::isnan(rows[0][2]));
  EXPECT_EQ(rows[8][0], 256);
  EXPECT_GE(rows[8][2], 55);
  EXPECT_LE(rows[8][2], 70);
  EXPECT_NEAR(rows[0][1], 1.2569, 0.02 * 1.2569);
}

TEST(CmdConvergence, LineRatiosFlagged) {
  ConvergenceOptions opt;
  opt.source = curve("line");
  opt.max_exp = 4;
  const auto file = temp("conv.csv");
  opt.output = file.string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_convergence(opt, out, err), kOk);
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  for (const auto& row : read_csv(ss.str())) {
    EXPECT_LT(row[1], 1e-12);
    EXPECT_TRUE(std::isnan(row[2]));
  }
  fs::remove(file);
  opt.min_exp = 5;
  opt.max_exp = 2;
  EXPECT_EQ(cmd_convergence(opt, out, err), kInputError);
}

TEST(CmdEval, StraightLine) {
  const auto file = temp("line.json");
  fit_to("line", 1e-9, file);
  std::string header;
  const auto rows = read_csv(eval_doc(file, 5), &header);
  EXPECT_EQ(header, eval_header());
  ASSERT_EQ(rows.size(), 5u);
  const double len = std::sqrt(6.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    ASSERT_EQ(r.size(), 20u);
    EXPECT_DOUBLE_EQ(r[0], i / 4.0);
    for (int c = 4; c < 13; ++c) EXPECT_NEAR(r[static_cast<std::size_t>(c)], rows[0][static_cast<std::size_t>(c)], 1e-12);
    EXPECT_NEAR(r[4], 1 / len, 1e-12);  // R11: tangent x component
    for (int c = 13; c < 16; ++c) EXPECT_NEAR(r[static_cast<std::size_t>(c)], 0.0, 1e-12);
    EXPECT_NEAR(r[16], len, 1e-12);
    EXPECT_NEAR(r[17], len * r[0], 1e-12);
    EXPECT_NEAR(r[18], 0.0, 1e-12);
  }
  fs::remove(file);
}

TEST(CmdEval, SpeedMatchesNumericDerivative) {
  const auto file = temp("ex_eval.json");
  fit_to("exemplary", 1e-8, file);
  const auto rows = read_csv(eval_doc(file, 20001));
  for (std::size_t i = 2; i + 2 < rows.size(); i += 500) {
    const double h = rows[i + 1][0] - rows[i][0];
    Eigen::Vector3d d;
    for (int c = 0; c < 3; ++c) {
      const auto p = [&](std::size_t j) { return rows[j][static_cast<std::size_t>(c) + 1]; };
      d[c] = (p(i - 2) - 8 * p(i - 1) + 8 * p(i + 1) - p(i + 2)) / (12 * h);
    }
    EXPECT_NEAR(rows[i][16], d.norm(), 1e-6 * rows[i][16]) << rows[i][0];
  }
  fs::remove(file);
}

TEST(CmdEval, FramesContinuousAcrossJunction) {
  const auto file = temp("ex_junction.json");
  fit_to("exemplary", 1e-4, file);
  const auto doc = ParameterizationDocument::load(file);
  ASSERT_EQ(doc.metadata.n_segments, 16);
  // 16 segments: the sample at xi = 0.5 sits on a junction; its neighbours are
  // 1e-9 away on either side.
  const PHPath path = doc.to_path();
  for (double j : {0.25, 0.5, 0.75}) {
    const auto l = path.frame(j - 1e-9).R;
    const auto r = path.frame(j + 1e-9).R;
    EXPECT_LE((l - r).cwiseAbs().maxCoeff(), 1e-7);
  }
  fs::remove(file);
}

TEST(CmdEval, RoundTripIsBitIdentical) {
  const auto file = temp("rt.json");
  fit_to("exemplary", 1e-6, file);
  const auto direct = [&] {
    PipelineConfig cfg;
    cfg.epsilon = 1e-6;
    return phodcos::phodcos(*exemplary_curve(), cfg).path;
  }();
  const PHPath loaded = ParameterizationDocument::load(file).to_path();
  for (int s = 0; s <= 50; ++s) {
    const double xi = s / 50.0;
    EXPECT_EQ(loaded.position(xi), direct.position(xi));
    EXPECT_EQ(loaded.frame(xi).omega, direct.frame(xi).omega);
  }
  fs::remove(file);
}

TEST(CmdEval, Errors) {
  EvalOptions opt;
  opt.document = "/nonexistent.json";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_eval(opt, out, err), kInputError);
  const auto file = temp("bad.json");
  std::ofstream(file) << R"({"schema_version": "7"})";
  opt.document = file.string();
  EXPECT_EQ(cmd_eval(opt, out, err), kInputError);
  EXPECT_NE(err.str().find("schema version"), std::string::npos);
  fs::remove(file);
}

TEST(CmdVerify, BuiltinsPass) {
  for (const auto& [name, segments] :
       std::vector<std::pair<std::string, int>>{{"exemplary", 1}, {"exemplary-planar", 1}, {"exemplary", 4}, {"helix", 4}}) {
    VerifyOptions opt;
    opt.source = curve(name);
    opt.n_segments = segments;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify(opt, out, err), kOk) << name << "\n" << out.str() << err.str();
    for (const char* p : {"ph-condition", "planarity", "rigid-invariance", "reversion", "angle-fiber",
                          "global-fiber"}) {
      EXPECT_NE(out.str().find(std::string("PASS ") + p), std::string::npos) << p;
    }
  }
}

TEST(CmdVerify, BadSource) {
  VerifyOptions opt;
  opt.source = curve("nope");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify(opt, out, err), kInputError);
}

#ifdef PHODCOS_CLI_PATH
TEST(Binary, ExitCodes) {
  const std::string exe = PHODCOS_CLI_PATH;
  const auto run = [&](const std::string& args) {
    const int status = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("fit --curve line --epsilon 1e-9"), 0);
  EXPECT_EQ(run("fit --curve nope"), 2);
  EXPECT_EQ(run("fit --curve exemplary --epsilon 1e-30 --max-segments 4 --samples 10"), 3);
  EXPECT_EQ(run("verify --curve exemplary"), 0);
  EXPECT_EQ(run("convergence --curve line --max-exp 2"), 0);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("--help"), 0);
}
#endif
