#include <sstream>

#include "torustame/cli.hpp"

namespace torustame::cli {

json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

namespace {

json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return integer_to_json(q.get_num());
  return q.get_str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) == 0 && q.get_den() != 0) {
      q.canonicalize();
      return q;
    }
  }
  throw Error(ErrorCode::Malformed, "polynomial coefficient must be an integer or \"p/q\", got " + j.dump());
}

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Malformed, std::string("certificate is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::Malformed, std::string("certificate field \"") + key + "\" has the wrong type");
  }
}

std::optional<UntameReason> reason_from_string(std::string_view s) {
  for (auto r : {UntameReason::NotSquarefree, UntameReason::OrderBoundExhausted, UntameReason::ZeroEigenvalue,
                 UntameReason::PositiveIndex})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::string_view class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::Input: return "input";
    case ErrorClass::Precondition: return "precondition";
    case ErrorClass::Limit: return "limit";
    case ErrorClass::Internal: return "internal";
  }
  return "internal";
}

json report_to_json(const Report& r) {
  json j;
  j["tool"] = r.tool;
  j["version"] = r.version;
  j["command"] = r.command;
  j["job"] = r.job;
  j["exact"] = r.exact;
  j["floating"] = r.floating;
  j["timing"] = {{"elapsed_ms", r.elapsed_ms}};
  if (r.error) j["error"] = {{"code", r.error->code}, {"kind", r.error->kind}, {"message", r.error->message}};
  return j;
}

void certificate_text(std::ostream& os, const json& c) {
  os << "verdict: " << c.value("verdict", "?") << " (" << c.value("kind", "?") << ")\n";
  if (c.contains("minimal_pair")) {
    const auto& p = c["minimal_pair"];
    os << "certificate: A^p = A^q for (p, q) = (" << p[0].dump() << ", " << p[1].dump() << ")";
    os << ", index k = " << c["index_k"].dump() << ", period s = " << c["period_s"].dump() << "\n";
  }
  if (c.contains("minimal_order_m")) os << "certificate: A^m = I for m = " << c["minimal_order_m"].dump() << "\n";
  if (c.contains("witness")) {
    const auto& w = c["witness"];
    os << "witness: " << w.value("reason", "?") << ", stripped minimal polynomial g = " << w.value("polynomial", "?")
       << ", order bound s_max = " << w["order_bound"].dump() << "\n";
  }
}

}  // namespace

json certificate_to_json(const TamenessCertificate& c) {
  json j;
  j["verdict"] = std::string(to_string(c.verdict));
  j["kind"] = std::string(to_string(c.kind));
  j["index_k"] = c.index_k;
  j["period_s"] = c.period_s;
  if (c.minimal_pair) j["minimal_pair"] = {c.minimal_pair->first, c.minimal_pair->second};
  if (c.minimal_order_m) j["minimal_order_m"] = *c.minimal_order_m;
  if (c.witness) {
    json coeffs = json::array();
    for (const auto& q : c.witness->stripped_min_poly.coeffs()) coeffs.push_back(rational_to_json(q));
    j["witness"] = {{"reason", std::string(to_string(c.witness->reason))},
                    {"polynomial", c.witness->stripped_min_poly.to_string()},
                    {"coefficients", coeffs},
                    {"order_bound", c.witness->order_bound}};
  }
  return j;
}

TamenessCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Malformed, "certificate must be an object");
  TamenessCertificate c;
  const auto verdict = required<std::string>(j, "verdict");
  const auto kind = required<std::string>(j, "kind");
  if (verdict == "TAME") c.verdict = Verdict::Tame;
  else if (verdict == "UNTAME") c.verdict = Verdict::Untame;
  else throw Error(ErrorCode::Malformed, "certificate verdict must be TAME or UNTAME");
  if (kind == "SEMICASCADE") c.kind = SystemKind::Semicascade;
  else if (kind == "CASCADE") c.kind = SystemKind::Cascade;
  else throw Error(ErrorCode::Malformed, "certificate kind must be SEMICASCADE or CASCADE");
  if (j.contains("index_k")) c.index_k = required<std::size_t>(j, "index_k");
  if (j.contains("period_s")) c.period_s = required<std::uint64_t>(j, "period_s");
  if (j.contains("minimal_pair")) {
    const auto pair = required<std::vector<std::uint64_t>>(j, "minimal_pair");
    if (pair.size() != 2) throw Error(ErrorCode::Malformed, "minimal_pair must have two entries");
    c.minimal_pair = std::make_pair(pair[0], pair[1]);
  }
  if (j.contains("minimal_order_m")) c.minimal_order_m = required<std::uint64_t>(j, "minimal_order_m");
  if (j.contains("witness")) {
    const json& w = j["witness"];
    if (!w.is_object()) throw Error(ErrorCode::Malformed, "witness must be an object");
    const auto reason = reason_from_string(required<std::string>(w, "reason"));
    if (!reason) throw Error(ErrorCode::Malformed, "unknown witness reason");
    if (!w.contains("coefficients") || !w["coefficients"].is_array())
      throw Error(ErrorCode::Malformed, "witness needs a coefficient array");
    std::vector<Rational> coeffs;
    for (const auto& q : w["coefficients"]) coeffs.push_back(rational_from_json(q));
    c.witness = UntameWitness{*reason, RatPoly(std::move(coeffs)), required<std::uint64_t>(w, "order_bound")};
  }
  return c;
}

int exit_code(ErrorCode code) {
  switch (error_class(code)) {
    case ErrorClass::Input: return 2;
    case ErrorClass::Precondition: return 3;
    case ErrorClass::Limit: return 4;
    case ErrorClass::Internal: return 1;
  }
  return 1;
}

int exit_code(const Report& report) {
  if (!report.error) return 0;
  if (report.error->kind == "input") return 2;
  if (report.error->kind == "precondition") return 3;
  if (report.error->kind == "limit") return 4;
  return 1;
}

ReportError to_report_error(const Error& e) {
  return ReportError{std::string(error_name(e.code())), std::string(class_name(error_class(e.code()))), e.what()};
}

std::string emit(const Report& report, Format format) {
  if (format == Format::Json) return report_to_json(report).dump(2) + "\n";

  std::ostringstream os;
  os << report.tool << ' ' << report.version << ": " << report.command << '\n';
  if (report.error) {
    os << "error: " << report.error->code << ": " << report.error->message << '\n';
    return os.str();
  }
  const json& ex = report.exact;
  if (ex.contains("certificate")) certificate_text(os, ex["certificate"]);
  for (const char* key : {"semicascade", "cascade"})
    if (ex.contains(key) && ex[key].is_object()) {
      os << key << ":\n";
      certificate_text(os, ex[key]);
    }
  for (const auto& [key, value] : ex.items()) {
    if (key == "certificate" || key == "semicascade" || key == "cascade") continue;
    if (value.is_array() && value.size() > 8) {
      os << key << ": [" << value.size() << " items]\n";
      continue;
    }
    os << key << ": " << value.dump() << '\n';
  }
  for (const auto& [key, value] : report.floating.items()) {
    if (value.is_array() && value.size() > 8) {
      os << key << " (floating): [" << value.size() << " items]\n";
      continue;
    }
    os << key << " (floating): " << value.dump() << '\n';
  }
  return os.str();
}

Report parse_report(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Malformed, std::string("report is not valid JSON: ") + e.what());
  }
  try {
    Report r;
    r.tool = j.at("tool").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.job = j.at("job");
    r.exact = j.at("exact");
    r.floating = j.at("floating");
    r.elapsed_ms = j.at("timing").at("elapsed_ms").get<double>();
    if (j.contains("error")) {
      const json& e = j["error"];
      r.error = ReportError{e.at("code").get<std::string>(), e.at("kind").get<std::string>(), e.at("message").get<std::string>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("report is missing fields: ") + e.what());
  }
}

}  // namespace torustame::cli
