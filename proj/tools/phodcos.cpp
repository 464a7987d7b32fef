#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "phodcos/commands.hpp"

namespace {

void add_source_options(CLI::App* cmd, phodcos::cli::SourceSpec& spec) {
  auto* curve = cmd->add_option("--curve", spec.curve,
                                "builtin curve: exemplary, exemplary-planar, line, helix");
  auto* csv = cmd->add_option("--csv", spec.csv, "CSV of x,y,z or t,x,y,z samples");
  curve->excludes(csv);
  cmd->add_option("--fit-tol", spec.fit_tol, "spline fit tolerance for CSV samples")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace phodcos::cli;
  CLI::App app{"Smooth path parameterization with Pythagorean-hodograph curves"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit a parameterization to a tolerance");
  add_source_options(fit_cmd, fit.source);
  fit_cmd->add_option("--epsilon", fit.epsilon, "max conversion error")->check(CLI::PositiveNumber);
  fit_cmd->add_option("-o,--output", fit.output, "write the parameterization document here");
  fit_cmd->add_option("--growth", fit.growth, "segment count update: double or increment")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, phodcos::Growth>{{"double", phodcos::Growth::Double},
                                                 {"increment", phodcos::Growth::Increment}}));
  fit_cmd->add_option("--initial-segments", fit.n_s_init)->check(CLI::PositiveNumber);
  fit_cmd->add_option("--samples", fit.samples_per_segment, "error samples per segment")
      ->check(CLI::Range(2, 1000000));
  fit_cmd->add_option("--max-segments", fit.max_segments)->check(CLI::PositiveNumber);

  ConvergenceOptions conv;
  auto* conv_cmd = app.add_subcommand("convergence", "error table for 2^m uniform segments");
  add_source_options(conv_cmd, conv.source);
  conv_cmd->add_option("--min-exp", conv.min_exp);
  conv_cmd->add_option("--max-exp", conv.max_exp);
  conv_cmd->add_option("--samples", conv.samples_per_segment, "error samples per segment")
      ->check(CLI::Range(2, 1000000));
  conv_cmd->add_option("-o,--output", conv.output, "CSV output (default stdout)");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "sample a parameterization document densely");
  eval_cmd->add_option("--document", eval.document)->required();
  eval_cmd->add_option("--samples", eval.samples, "number of uniform parameter samples");
  eval_cmd->add_option("-o,--output", eval.output, "CSV output (default stdout)");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check the interpolant's invariance properties");
  add_source_options(verify_cmd, verify.source);
  verify_cmd->add_option("--segments", verify.n_segments)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (*fit_cmd) return cmd_fit(fit, std::cout, std::cerr);
  if (*conv_cmd) return cmd_convergence(conv, std::cout, std::cerr);
  if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
  return cmd_verify(verify, std::cout, std::cerr);
}
