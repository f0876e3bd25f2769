// torustame: decide tameness of affine torus maps and run the supporting probes.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "torustame/cli.hpp"

using namespace torustame;
using namespace torustame::cli;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty()) return {};
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Malformed, "cannot open input file " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tameness decisions and probes for affine maps x -> Ax + b of the d-torus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string input_path;
  std::string format_name = "json";
  std::string bound_text;
  std::string range_text = "-1..1";
  Options options;

  const std::pair<const char*, const char*> commands[] = {
      {"semicascade", "decide tameness of the semicascade (A^p = A^q)"},
      {"cascade", "decide tameness of the cascade (A^m = I); needs |det A| = 1"},
      {"certify", "re-verify certificates, or a claimed \"certificate\" in the input"},
      {"simulate", "iterate the map on the torus and probe for convergent subsequences"},
      {"frequencies", "frequency orbits (A^T)^n u with escape probe"},
      {"sidon", "extract a quasi-independent (Sidon) subset and estimate its ratio"},
      {"sweep", "exhaustive decider/oracle cross-check over an entry range"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", input_path, "input file, or - for stdin");
    sub->add_option("--format", format_name, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--grid", options.grid, "grid points per axis (default: 32 for d <= 3)");
    sub->add_option("--iters", options.iters, "iteration count");
    sub->add_option("--tol", options.tol, "convergence tolerance");
    sub->add_option("--seed", options.seed, "random seed");
    sub->add_option("--bound", bound_text, "escape bound (integer)");
    sub->add_option("--range", range_text, "sweep entry range LO..HI");
    sub->add_option("--dim", options.dim, "sweep dimension");
    sub->add_option("--count", options.count, "number of Sidon vectors to extract");
    sub->add_option("--trials", options.trials, "random trials for the Sidon ratio");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Command command = *command_from_string(name);
  const Format format = format_name == "text" ? Format::Text : Format::Json;

  Report report;
  try {
    if (!bound_text.empty() && options.bound.set_str(bound_text, 10) != 0)
      throw Error(ErrorCode::InvalidArgument, "--bound must be an integer");
    const auto range = parse_range(range_text);
    if (!range) throw Error(ErrorCode::InvalidArgument, "--range must look like LO..HI");
    options.range_lo = range->first;
    options.range_hi = range->second;
    if (input_path.empty() && command != Command::Sweep)
      throw Error(ErrorCode::Malformed, "--input is required for " + name);
    report = run(parse_input(read_input(input_path), command, options));
  } catch (const Error& e) {
    report.command = name;
    report.error = to_report_error(e);
  }
  std::cout << emit(report, format);
  return exit_code(report);
}
