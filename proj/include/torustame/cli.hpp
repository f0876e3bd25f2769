#pragma once

// Batch interface: job parsing, dispatch to the library, and report serialization.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "torustame/error.hpp"
#include "torustame/matrix.hpp"
#include "torustame/tameness.hpp"

namespace torustame::cli {

using json = nlohmann::json;

inline constexpr std::string_view kToolName = "torustame";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class Command { Semicascade, Cascade, Certify, Simulate, Frequencies, Sidon, Sweep };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view name);

enum class Format { Json, Text };

/// Most matrices a sweep will enumerate.
inline constexpr std::uint64_t kSweepCap = 1'000'000;

struct Options {
  std::size_t grid = 0;  // per axis; 0 picks default_grid_per_axis(d)
  std::size_t iters = 50;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  Integer bound = 1'000'000;
  long range_lo = -1;
  long range_hi = 1;
  std::size_t dim = 2;     // sweep
  std::size_t count = 12;  // sidon
  std::size_t trials = 200;
};

/// Translation component as given: radians, or a rational number of full turns ("p/q").
struct Angle {
  double radians = 0.0;
  std::optional<Rational> turns;
};

struct MapInput {
  IntMatrix a{1};
  std::vector<Angle> b;  // always d entries after parsing
  std::optional<std::vector<double>> x0;
  std::optional<IntVector> u;
  std::optional<json> certificate;  // claim for `certify`
};

struct JobSpec {
  Command command = Command::Semicascade;
  std::optional<MapInput> map;
  std::optional<std::vector<IntVector>> stream;  // `sidon` with a stream file
  Options options;
};

/// Parses the structured input {"d": int, "A": [[int]], "b": [angle], ...}.
/// `sidon` also accepts the stream format (one integer vector per line) and
/// `sweep` accepts empty input. Throws Error with Malformed, Dimension or NonInteger.
JobSpec parse_input(std::string_view text, Command command, Options options = {});

/// Per-command option checks; throws InvalidArgument or CapExceeded.
void validate(const JobSpec& job);

std::optional<std::pair<long, long>> parse_range(std::string_view text);

struct ReportError {
  std::string code;     // e.g. DETERMINANT_NOT_UNIT
  std::string kind;     // input | precondition | limit | internal
  std::string message;
  friend bool operator==(const ReportError&, const ReportError&) = default;
};

/// Exact quantities live under `exact`, floating-point ones under `floating`.
struct Report {
  std::string tool{kToolName};
  std::string version{kToolVersion};
  std::string command;
  json job;
  json exact = json::object();
  json floating = json::object();
  double elapsed_ms = 0.0;
  std::optional<ReportError> error;
  friend bool operator==(const Report&, const Report&) = default;
};

ReportError to_report_error(const Error& e);

/// Runs the job; module errors are captured into Report::error.
Report run(const JobSpec& job);

int exit_code(const Report& report);
int exit_code(ErrorCode code);

std::string emit(const Report& report, Format format);
Report parse_report(std::string_view json_text);

json certificate_to_json(const TamenessCertificate& c);
TamenessCertificate certificate_from_json(const json& j);

json integer_to_json(const Integer& z);

}  // namespace torustame::cli
