#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "phodcos/curve_source.hpp"
#include "phodcos/pipeline.hpp"

namespace phodcos::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kToleranceFailure = 3,
  kPropertyFailure = 4,
};

/// A builtin curve name or a CSV file of samples.
struct SourceSpec {
  std::optional<std::string> curve;
  std::optional<std::string> csv;
  double fit_tol = 1e-9;
};

struct ResolvedSource {
  CurveSourcePtr source;
  /// "exemplary", "csv:<path>", ...
  std::string description;
};

/// Throws std::invalid_argument for an empty or ambiguous spec and the
/// ingestion errors for bad CSV input.
ResolvedSource resolve_source(const SourceSpec& spec);

struct FitOptions {
  SourceSpec source;
  double epsilon = 1e-6;
  std::string output;
  Growth growth = Growth::Double;
  int n_s_init = 2;
  int samples_per_segment = 1000;
  int max_segments = 4096;
};

struct ConvergenceOptions {
  SourceSpec source;
  int min_exp = 0;
  int max_exp = 8;
  int samples_per_segment = 1000;
  /// CSV destination; empty writes to `out`.
  std::string output;
};

struct EvalOptions {
  std::string document;
  int samples = 101;
  std::string output;
};

struct VerifyOptions {
  SourceSpec source;
  int n_segments = 1;
};

/// Each command reports on `out`/`err` and returns an ExitCode.
int cmd_fit(const FitOptions& opt, std::ostream& out, std::ostream& err);
int cmd_convergence(const ConvergenceOptions& opt, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

/// Header of the cmd_eval CSV.
std::string eval_header();

}  // namespace phodcos::cli
