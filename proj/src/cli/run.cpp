#include <algorithm>
#include <chrono>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

#include "internal.hpp"
#include "torustame/dynamics.hpp"
#include "torustame/sidon.hpp"

namespace torustame::cli {

namespace {

json matrix_to_json(const IntMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (const auto& e : a.row(i)) row.push_back(integer_to_json(e));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(std::span<const Integer> v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(integer_to_json(e));
  return out;
}

json poly_to_json(const RatPoly& f) {
  json coeffs = json::array();
  for (const auto& q : f.coeffs()) coeffs.push_back(q.get_den() == 1 ? integer_to_json(q.get_num()) : json(q.get_str()));
  return {{"polynomial", f.to_string()}, {"coefficients", coeffs}};
}

std::size_t grid_per_axis(const Options& o, std::size_t d) { return o.grid ? o.grid : default_grid_per_axis(d); }

AffineMap affine_map(const MapInput& m) {
  std::vector<double> b;
  for (const auto& angle : m.b) b.push_back(angle.radians);
  return AffineMap(m.a, std::move(b));
}

void run_semicascade(const MapInput& m, Report& r) {
  const auto c = decide_semicascade(m.a);
  r.exact["certificate"] = certificate_to_json(c);
  r.exact["certificate_check"] = certificate_check(m.a, c);
  r.exact["min_poly"] = poly_to_json(min_poly(m.a));
}

void run_cascade(const MapInput& m, Report& r) {
  r.exact["determinant"] = integer_to_json(determinant(m.a));
  const auto c = decide_cascade(m.a);
  r.exact["certificate"] = certificate_to_json(c);
  r.exact["certificate_check"] = certificate_check(m.a, c);
  r.exact["min_poly"] = poly_to_json(min_poly(m.a));
}

void run_certify(const MapInput& m, Report& r) {
  if (m.certificate) {
    const auto claim = certificate_from_json(*m.certificate);
    r.exact["claim"] = certificate_to_json(claim);
    r.exact["claim_valid"] = certificate_check(m.a, claim);
    return;
  }
  const auto semi = decide_semicascade(m.a);
  const auto oracle = oracle_semicascade(m.a);
  r.exact["semicascade"] = certificate_to_json(semi);
  r.exact["semicascade_check"] = certificate_check(m.a, semi);
  r.exact["oracle_verdict"] = std::string(to_string(oracle.verdict));
  r.exact["oracle_pair"] = oracle.minimal_pair ? json{oracle.minimal_pair->first, oracle.minimal_pair->second} : json(nullptr);
  r.exact["oracle_agrees"] = oracle.verdict == semi.verdict && oracle.minimal_pair == semi.minimal_pair;
  const bool unimodular = abs(determinant(m.a)) == 1;
  r.exact["cascade_applicable"] = unimodular;
  if (unimodular) {
    const auto cas = decide_cascade(m.a);
    r.exact["cascade"] = certificate_to_json(cas);
    r.exact["cascade_check"] = certificate_check(m.a, cas);
  }
}

void run_simulate(const MapInput& m, const Options& o, Report& r) {
  const AffineMap phi = affine_map(m);
  const std::size_t d = m.a.dim();
  const TorusPoint x0{m.x0.value_or(std::vector<double>(d, 0.0))};
  json points = json::array();
  for (const auto& p : orbit(phi, x0, o.iters)) points.push_back(p.coords);
  r.floating["orbit"] = std::move(points);

  std::vector<std::uint64_t> indices(o.iters + 1);
  std::iota(indices.begin(), indices.end(), 0);
  const auto grid = uniform_grid(d, grid_per_axis(o, d));
  const auto probe = convergence_probe(phi, indices, grid, o.tol);
  r.exact["convergent_subsequence"] = probe.subsequence;
  r.floating["max_deviation"] = probe.max_deviation;
  r.exact["semicascade_verdict"] = std::string(to_string(decide_semicascade(m.a).verdict));
}

std::vector<IntVector> start_vectors(const MapInput& m) {
  if (m.u) return {*m.u};
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < m.a.dim(); ++j) {
    IntVector e(m.a.dim());
    e[j] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

void run_frequencies(const MapInput& m, const Options& o, Report& r) {
  const std::size_t per_axis = grid_per_axis(o, m.a.dim());
  json orbits = json::array(), averages = json::array();
  for (const auto& u : start_vectors(m)) {
    const auto fo = frequency_orbit(m.a, u, o.iters);
    const auto esc = escape_probe(fo, o.bound);
    json terms = json::array(), avg = json::array();
    for (const auto& t : fo.terms) {
      terms.push_back(vector_to_json(t));
      const auto z = grid_average_exponential(t, per_axis);
      avg.push_back({z.real(), z.imag()});
    }
    orbits.push_back({{"u", vector_to_json(u)},
                      {"terms", std::move(terms)},
                      {"escaped", esc.escaped},
                      {"first_n", esc.first_n ? json(*esc.first_n) : json(nullptr)}});
    averages.push_back({{"u", vector_to_json(u)}, {"grid_average", std::move(avg)}});
  }
  r.exact["orbits"] = std::move(orbits);
  r.floating["grid_averages"] = std::move(averages);
}

void run_sidon(const JobSpec& job, Report& r) {
  const Options& o = job.options;
  std::optional<FrequencyStream> stream;
  if (job.stream) {
    stream = FrequencyStream::from_list(*job.stream);
  } else {
    const MapInput& m = *job.map;
    std::optional<IntVector> start;
    for (const auto& u : start_vectors(m))
      if (escape_probe(frequency_orbit(m.a, u, o.iters), o.bound).escaped) {
        start = u;
        break;
      }
    if (!start)
      throw Error(ErrorCode::StreamExhausted,
                  "no start frequency escapes the bound within --iters steps; the frequency set looks bounded");
    r.exact["start_frequency"] = vector_to_json(*start);
    stream = FrequencyStream::from_frequency_orbit(m.a, *start);
  }
  const auto report = extract_sidon(*stream, o.count);
  json selected = json::array();
  for (const auto& v : report.selected) selected.push_back(vector_to_json(v));
  r.exact["selected"] = std::move(selected);
  r.exact["quasi_independence_checked_up_to"] = report.quasi_independence_checked_up_to;
  r.exact["stream_items_used"] = report.pulled;
  const std::size_t d = stream->dim();
  r.floating["estimated_ratio"] = estimate_sidon_ratio(report.selected, o.trials, grid_per_axis(o, d), o.seed);
}

struct SweepEntry {
  TamenessCertificate decided;
  OracleResult oracle;
  std::optional<std::uint64_t> cascade_order;
  bool unimodular = false;
  bool check = true;
};

IntMatrix sweep_matrix(std::uint64_t index, std::size_t d, long lo, std::uint64_t width) {
  IntMatrix a(d);
  for (std::size_t k = d * d; k-- > 0;) {
    a(k / d, k % d) = lo + static_cast<long>(index % width);
    index /= width;
  }
  return a;
}

void run_sweep(const Options& o, Report& r) {
  const std::size_t d = o.dim;
  const auto width = static_cast<std::uint64_t>(o.range_hi - o.range_lo + 1);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < d * d; ++k) total *= width;

  std::vector<SweepEntry> entries(total);
  const unsigned workers = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < total; i += workers) {
          const IntMatrix a = sweep_matrix(i, d, o.range_lo, width);
          SweepEntry& e = entries[i];
          e.decided = decide_semicascade(a);
          e.oracle = oracle_semicascade(a);
          if (e.decided.verdict == Verdict::Tame) e.check = certificate_check(a, e.decided);
          e.unimodular = abs(determinant(a)) == 1;
          if (e.unimodular) {
            const auto c = decide_cascade(a);
            if (c.verdict == Verdict::Tame) {
              e.cascade_order = c.minimal_order_m;
              e.check = e.check && certificate_check(a, c);
            }
          }
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  json list = json::array();
  std::uint64_t tame = 0, disagreements = 0, failed_checks = 0;
  std::set<std::uint64_t> orders;
  for (std::uint64_t i = 0; i < total; ++i) {
    const SweepEntry& e = entries[i];
    const bool agree = e.decided.verdict == e.oracle.verdict && e.decided.minimal_pair == e.oracle.minimal_pair;
    if (e.decided.verdict == Verdict::Tame) ++tame;
    if (!agree) ++disagreements;
    if (!e.check) ++failed_checks;
    if (e.cascade_order) orders.insert(*e.cascade_order);
    const auto& pair = e.decided.minimal_pair;
    list.push_back({{"A", matrix_to_json(sweep_matrix(i, d, o.range_lo, width))},
                    {"verdict", std::string(to_string(e.decided.verdict))},
                    {"pair", pair ? json{pair->first, pair->second} : json(nullptr)},
                    {"oracle_verdict", std::string(to_string(e.oracle.verdict))},
                    {"oracle_pair", e.oracle.minimal_pair ? json{e.oracle.minimal_pair->first, e.oracle.minimal_pair->second} : json(nullptr)},
                    {"cascade_order", e.cascade_order ? json(*e.cascade_order) : json(nullptr)},
                    {"agree", agree}});
  }
  r.exact["count"] = total;
  r.exact["tame"] = tame;
  r.exact["untame"] = total - tame;
  r.exact["disagreements"] = disagreements;
  r.exact["agreement"] = disagreements == 0;
  r.exact["failed_certificate_checks"] = failed_checks;
  r.exact["cascade_orders"] = orders;
  r.exact["entries"] = std::move(list);
}

}  // namespace

json job_to_json(const JobSpec& job) {
  json j;
  j["command"] = std::string(to_string(job.command));
  if (job.map) {
    const MapInput& m = *job.map;
    json input;
    input["d"] = m.a.dim();
    input["A"] = matrix_to_json(m.a);
    json b = json::array();
    for (const auto& angle : m.b) b.push_back(angle.turns ? json(angle.turns->get_str()) : json(angle.radians));
    input["b"] = std::move(b);
    if (m.x0) input["x0"] = *m.x0;
    if (m.u) input["u"] = vector_to_json(*m.u);
    if (m.certificate) input["certificate"] = *m.certificate;
    j["input"] = std::move(input);
  }
  if (job.stream) j["stream_length"] = job.stream->size();

  const Options& o = job.options;
  json opts = json::object();
  const std::size_t d = job.map ? job.map->a.dim() : (job.stream && !job.stream->empty() ? job.stream->front().size() : 1);
  switch (job.command) {
    case Command::Simulate:
      opts = {{"grid", grid_per_axis(o, d)}, {"iters", o.iters}, {"tol", o.tol}};
      break;
    case Command::Frequencies:
      opts = {{"grid", grid_per_axis(o, d)}, {"iters", o.iters}, {"bound", integer_to_json(o.bound)}};
      break;
    case Command::Sidon:
      opts = {{"grid", grid_per_axis(o, d)}, {"count", o.count}, {"trials", o.trials}, {"seed", o.seed}};
      if (job.map) {
        opts["iters"] = o.iters;
        opts["bound"] = integer_to_json(o.bound);
      }
      break;
    case Command::Sweep:
      opts = {{"range", {o.range_lo, o.range_hi}}, {"dim", o.dim}};
      break;
    default:
      break;
  }
  j["options"] = std::move(opts);
  return j;
}

Report run(const JobSpec& job) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = std::string(to_string(job.command));
  try {
    r.job = job_to_json(job);
    validate(job);
    switch (job.command) {
      case Command::Semicascade: run_semicascade(*job.map, r); break;
      case Command::Cascade: run_cascade(*job.map, r); break;
      case Command::Certify: run_certify(*job.map, r); break;
      case Command::Simulate: run_simulate(*job.map, job.options, r); break;
      case Command::Frequencies: run_frequencies(*job.map, job.options, r); break;
      case Command::Sidon: run_sidon(job, r); break;
      case Command::Sweep: run_sweep(job.options, r); break;
    }
  } catch (const Error& e) {
    r.error = to_report_error(e);
    r.exact = json::object();
    r.floating = json::object();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace torustame::cli
