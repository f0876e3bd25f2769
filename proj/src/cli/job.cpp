#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "torustame/cli.hpp"
#include "torustame/dynamics.hpp"
#include "torustame/sidon.hpp"

namespace torustame::cli {

namespace {

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::Semicascade, "semicascade"}, {Command::Cascade, "cascade"},
    {Command::Certify, "certify"},         {Command::Simulate, "simulate"},
    {Command::Frequencies, "frequencies"}, {Command::Sidon, "sidon"},
    {Command::Sweep, "sweep"},
};

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer() && j.is_number_unsigned()) {
    Integer z;
    mpz_set_ui(z.get_mpz_t(), j.get<std::uint64_t>());
    return z;
  }
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer z;
    const bool digits = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                                  [](unsigned char c) { return std::isdigit(c); });
    if (digits && s != "-" && z.set_str(s, 10) == 0) return z;
  }
  fail(ErrorCode::NonInteger, where + " must be an integer (or a decimal integer string), got " + j.dump());
}

Angle angle_from_json(const json& j, std::size_t i) {
  Angle angle;
  if (j.is_number()) {
    angle.radians = j.get<double>();
    if (!std::isfinite(angle.radians)) fail(ErrorCode::Malformed, "b[" + std::to_string(i) + "] is not finite");
    return angle;
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Rational q;
    const auto slash = s.find('/');
    Integer num, den = 1;
    bool ok = num.set_str(s.substr(0, slash), 10) == 0;
    if (ok && slash != std::string::npos) ok = den.set_str(s.substr(slash + 1), 10) == 0 && den != 0;
    if (!ok) fail(ErrorCode::Malformed, "b[" + std::to_string(i) + "] must be a number of radians or a fraction of a turn \"p/q\"");
    q = Rational(num, den);
    q.canonicalize();
    // Reduce to [0, 1) turns before converting.
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    q -= fl;
    angle.turns = q;
    angle.radians = kTwoPi * q.get_d();
    return angle;
  }
  fail(ErrorCode::Malformed, "b[" + std::to_string(i) + "] must be a number or a string \"p/q\"");
}

MapInput parse_map(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::Malformed, "input must be a JSON object");
  if (!doc.contains("d") || !doc.contains("A")) fail(ErrorCode::Malformed, "input requires keys \"d\" and \"A\"");
  const json& jd = doc["d"];
  if (!jd.is_number_integer() || jd.get<std::int64_t>() < 1) fail(ErrorCode::Dimension, "\"d\" must be a positive integer");
  const auto d = static_cast<std::size_t>(jd.get<std::int64_t>());

  const json& ja = doc["A"];
  if (!ja.is_array()) fail(ErrorCode::Malformed, "\"A\" must be an array of rows");
  if (ja.size() != d) fail(ErrorCode::Dimension, "\"A\" must have d = " + std::to_string(d) + " rows");
  MapInput map;
  map.a = IntMatrix(d);
  for (std::size_t i = 0; i < d; ++i) {
    const json& row = ja[i];
    if (!row.is_array()) fail(ErrorCode::Malformed, "\"A\" row " + std::to_string(i) + " must be an array");
    if (row.size() != d) fail(ErrorCode::Dimension, "\"A\" row " + std::to_string(i) + " must have d = " + std::to_string(d) + " entries");
    for (std::size_t j = 0; j < d; ++j)
      map.a(i, j) = integer_from_json(row[j], "A[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }

  map.b.assign(d, Angle{0.0, Rational(0)});
  if (doc.contains("b")) {
    const json& jb = doc["b"];
    if (!jb.is_array()) fail(ErrorCode::Malformed, "\"b\" must be an array");
    if (jb.size() != d) fail(ErrorCode::Dimension, "\"b\" must have d = " + std::to_string(d) + " entries");
    for (std::size_t i = 0; i < d; ++i) map.b[i] = angle_from_json(jb[i], i);
  }
  if (doc.contains("x0")) {
    const json& jx = doc["x0"];
    if (!jx.is_array()) fail(ErrorCode::Malformed, "\"x0\" must be an array");
    if (jx.size() != d) fail(ErrorCode::Dimension, "\"x0\" must have d entries");
    std::vector<double> x0;
    for (const auto& v : jx) {
      if (!v.is_number()) fail(ErrorCode::Malformed, "\"x0\" entries must be numbers");
      x0.push_back(v.get<double>());
    }
    map.x0 = std::move(x0);
  }
  if (doc.contains("u")) {
    const json& ju = doc["u"];
    if (!ju.is_array()) fail(ErrorCode::Malformed, "\"u\" must be an array");
    if (ju.size() != d) fail(ErrorCode::Dimension, "\"u\" must have d entries");
    IntVector u;
    for (std::size_t i = 0; i < d; ++i) u.push_back(integer_from_json(ju[i], "u[" + std::to_string(i) + "]"));
    map.u = std::move(u);
  }
  if (doc.contains("certificate")) {
    if (!doc["certificate"].is_object()) fail(ErrorCode::Malformed, "\"certificate\" must be an object");
    map.certificate = doc["certificate"];
  }
  return map;
}

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
}

bool looks_like_json(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && (text[pos] == '{' || text[pos] == '[');
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommandNames)
    if (cmd == c) return name;
  return "unknown";
}

std::optional<Command> command_from_string(std::string_view name) {
  for (const auto& [cmd, n] : kCommandNames)
    if (n == name) return cmd;
  return std::nullopt;
}

std::optional<std::pair<long, long>> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return std::nullopt;
  long lo = 0, hi = 0;
  const auto lhs = text.substr(0, dots), rhs = text.substr(dots + 2);
  auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), lo);
  auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), hi);
  if (r1.ec != std::errc{} || r1.ptr != lhs.data() + lhs.size()) return std::nullopt;
  if (r2.ec != std::errc{} || r2.ptr != rhs.data() + rhs.size()) return std::nullopt;
  return std::make_pair(lo, hi);
}

JobSpec parse_input(std::string_view text, Command command, Options options) {
  JobSpec job;
  job.command = command;
  job.options = std::move(options);

  if (command == Command::Sweep && blank(text)) return job;
  if (command == Command::Sidon && !looks_like_json(text)) {
    std::istringstream in{std::string(text)};
    auto stream = FrequencyStream::from_text(in);
    std::vector<IntVector> vectors;
    while (auto v = stream.next()) vectors.push_back(std::move(*v));
    job.stream = std::move(vectors);
    return job;
  }

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Malformed, std::string("input is not valid JSON: ") + e.what());
  }
  job.map = parse_map(doc);
  if (command == Command::Sweep) job.options.dim = job.map->a.dim();
  return job;
}

void validate(const JobSpec& job) {
  const Options& o = job.options;
  if (job.command != Command::Sweep && !job.map && !job.stream)
    fail(ErrorCode::Malformed, std::string(to_string(job.command)) + " needs an input map");
  if (!(o.tol > 0.0) || !std::isfinite(o.tol)) fail(ErrorCode::InvalidArgument, "--tol must be positive");
  if (o.bound < 0) fail(ErrorCode::InvalidArgument, "--bound must be nonnegative");
  switch (job.command) {
    case Command::Simulate:
    case Command::Frequencies:
      if (o.iters == 0) fail(ErrorCode::InvalidArgument, "--iters must be positive");
      if (o.iters > 100'000) fail(ErrorCode::CapExceeded, "--iters is capped at 100000");
      break;
    case Command::Sidon:
      if (o.count == 0) fail(ErrorCode::InvalidArgument, "--count must be positive");
      if (o.trials == 0) fail(ErrorCode::InvalidArgument, "--trials must be positive");
      if (o.count > kQuasiIndependenceCap)
        fail(ErrorCode::CapExceeded, "--count is capped at " + std::to_string(kQuasiIndependenceCap) + " (exhaustive quasi-independence check)");
      break;
    case Command::Sweep: {
      if (o.range_lo > o.range_hi) fail(ErrorCode::InvalidArgument, "--range needs LO <= HI");
      if (o.dim == 0) fail(ErrorCode::InvalidArgument, "--dim must be positive");
      const auto width = static_cast<double>(o.range_hi) - static_cast<double>(o.range_lo) + 1.0;
      const double total = std::pow(width, static_cast<double>(o.dim * o.dim));
      if (total > static_cast<double>(kSweepCap))
        fail(ErrorCode::CapExceeded, "sweep would enumerate more than " + std::to_string(kSweepCap) + " matrices");
      break;
    }
    default:
      break;
  }
  if (job.command == Command::Simulate || job.command == Command::Sidon || job.command == Command::Frequencies) {
    if (o.grid > 4096) fail(ErrorCode::CapExceeded, "--grid is capped at 4096 points per axis");
    const std::size_t d = job.map ? job.map->a.dim() : (job.stream && !job.stream->empty() ? job.stream->front().size() : 1);
    const std::size_t per_axis = o.grid ? o.grid : default_grid_per_axis(d);
    if (std::pow(static_cast<double>(per_axis), static_cast<double>(d)) > 4.0 * kGridPointCap)
      fail(ErrorCode::CapExceeded, "grid has more than " + std::to_string(4 * kGridPointCap) + " points");
  }
}

}  // namespace torustame::cli
