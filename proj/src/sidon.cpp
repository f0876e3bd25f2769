#include "torustame/sidon.hpp"

#include "torustame/dynamics.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

namespace torustame {

std::optional<IntVector> FrequencyStream::next() {
  std::optional<IntVector> v = source_();
  if (v && v->size() != dim_) throw Error(ErrorCode::DimensionMismatch, "frequency stream produced a vector of the wrong dimension");
  return v;
}

FrequencyStream FrequencyStream::from_list(std::vector<IntVector> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "frequency stream: empty list");
  const std::size_t dim = vectors.front().size();
  return FrequencyStream(dim, [vectors = std::move(vectors), pos = std::size_t{0}]() mutable -> std::optional<IntVector> {
    if (pos == vectors.size()) return std::nullopt;
    return vectors[pos++];
  });
}

FrequencyStream FrequencyStream::from_formula(std::size_t dim, std::function<IntVector(std::uint64_t)> f) {
  return FrequencyStream(dim, [f = std::move(f), k = std::uint64_t{0}]() mutable -> std::optional<IntVector> {
    return f(++k);
  });
}

FrequencyStream FrequencyStream::from_frequency_orbit(const IntMatrix& a, IntVector u) {
  if (u.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency stream: start vector dimension mismatch");
  return FrequencyStream(a.dim(), [at = a.transpose(), cur = std::move(u), started = false]() mutable -> std::optional<IntVector> {
    if (started) cur = mat_vec(at, cur);
    started = true;
    return cur;
  });
}

FrequencyStream FrequencyStream::from_text(std::istream& in) {
  std::vector<IntVector> vectors;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    IntVector v;
    std::string token;
    while (fields >> token) {
      Integer value;
      if (value.set_str(token, 10) != 0) {
        std::ostringstream os;
        os << "frequency stream line " << lineno << ": '" << token << "' is not an integer";
        throw Error(ErrorCode::NonInteger, os.str());
      }
      v.push_back(std::move(value));
    }
    if (v.empty()) continue;
    if (!vectors.empty() && v.size() != vectors.front().size()) {
      std::ostringstream os;
      os << "frequency stream line " << lineno << ": expected " << vectors.front().size() << " components";
      throw Error(ErrorCode::Dimension, os.str());
    }
    vectors.push_back(std::move(v));
  }
  return from_list(std::move(vectors));
}

Integer l1_norm(std::span<const Integer> v) {
  Integer s = 0;
  for (const auto& c : v) s += abs(c);
  return s;
}

SidonReport extract_sidon(FrequencyStream& stream, std::size_t count, std::size_t pull_limit) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "extract_sidon: count must be positive");
  SidonReport report;
  Integer running = 0;
  while (report.selected.size() < count) {
    if (report.pulled == pull_limit) break;
    std::optional<IntVector> v = stream.next();
    if (!v) break;
    ++report.pulled;
    Integer norm = l1_norm(*v);
    if (norm > running) {
      running += norm;
      report.selected.push_back(std::move(*v));
    }
  }
  if (report.selected.size() < count) {
    std::ostringstream os;
    os << "extract_sidon: found " << report.selected.size() << " of " << count
       << " vectors after " << report.pulled << " stream items";
    throw Error(ErrorCode::StreamExhausted, os.str());
  }
  const std::size_t checked = std::min(count, kQuasiIndependenceCap);
  if (!verify_quasi_independence(std::span(report.selected).first(checked)))
    throw Error(ErrorCode::Internal, "extract_sidon: selection is not quasi-independent");
  report.quasi_independence_checked_up_to = checked;
  return report;
}

bool verify_quasi_independence(std::span<const IntVector> vectors) {
  const std::size_t n = vectors.size();
  if (n > kQuasiIndependenceCap) {
    std::ostringstream os;
    os << "verify_quasi_independence: " << n << " vectors exceed the cap of " << kQuasiIndependenceCap;
    throw Error(ErrorCode::CapExceeded, os.str());
  }
  if (n == 0) return true;
  const std::size_t d = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "verify_quasi_independence: mixed dimensions");

  // Balanced-ternary counter over eps; the running sum is updated per changed digit.
  // Counting from 0 up to 11...1 visits exactly one of eps, -eps for every nonzero eps,
  // which is enough since the two vanish together.
  std::vector<int> eps(n, 0);
  IntVector sum(d);
  while (true) {
    std::size_t k = 0;
    while (k < n && eps[k] == 1) {
      eps[k] = -1;
      for (std::size_t i = 0; i < d; ++i) sum[i] -= 2 * vectors[k][i];
      ++k;
    }
    if (k == n) return true;
    ++eps[k];
    for (std::size_t i = 0; i < d; ++i) sum[i] += vectors[k][i];

    bool zero = true;
    for (const auto& c : sum)
      if (c != 0) {
        zero = false;
        break;
      }
    if (zero) {
      bool trivial = true;
      for (int e : eps) trivial = trivial && e == 0;
      if (!trivial) return false;
    }
  }
}

double sidon_ratio(std::span<const IntVector> vectors, std::span<const std::complex<double>> coeffs,
                   std::size_t grid_per_axis) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "sidon_ratio: no frequencies");
  if (coeffs.size() != vectors.size()) throw Error(ErrorCode::DimensionMismatch, "sidon_ratio: coefficient count mismatch");
  if (grid_per_axis == 0) throw Error(ErrorCode::InvalidArgument, "sidon_ratio: empty grid");
  const std::size_t d = vectors.front().size();
  const std::size_t m = vectors.size();
  const Integer modulus = static_cast<unsigned long>(grid_per_axis);

  std::vector<unsigned long> residue(m * d);
  for (std::size_t k = 0; k < m; ++k) {
    if (vectors[k].size() != d) throw Error(ErrorCode::DimensionMismatch, "sidon_ratio: mixed dimensions");
    for (std::size_t i = 0; i < d; ++i) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), vectors[k][i].get_mpz_t(), modulus.get_mpz_t());
      residue[k * d + i] = r.get_ui();
    }
  }
  std::vector<std::complex<double>> roots(grid_per_axis);
  for (std::size_t r = 0; r < grid_per_axis; ++r)
    roots[r] = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(grid_per_axis));

  double l1 = 0.0;
  for (const auto& c : coeffs) l1 += std::abs(c);

  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= grid_per_axis;
  std::vector<std::size_t> idx(d, 0);
  double sup = 0.0;
  for (std::size_t n = 0; n < total; ++n) {
    std::complex<double> p = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      unsigned long phase = 0;
      for (std::size_t i = 0; i < d; ++i) phase = (phase + residue[k * d + i] * idx[i]) % grid_per_axis;
      p += coeffs[k] * roots[phase];
    }
    sup = std::max(sup, std::abs(p));
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < grid_per_axis) break;
      idx[i] = 0;
    }
  }
  if (sup == 0.0) throw Error(ErrorCode::Internal, "sidon_ratio: polynomial vanishes on the whole grid");
  return l1 / sup;
}

double estimate_sidon_ratio(std::span<const IntVector> vectors, std::size_t trials,
                            std::size_t grid_per_axis, std::uint64_t seed) {
  if (vectors.empty()) throw Error(ErrorCode::EmptyInput, "estimate_sidon_ratio: no frequencies");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "estimate_sidon_ratio: trials must be positive");
  double best = 0.0;
  std::vector<std::complex<double>> coeffs(vectors.size());
  for (std::size_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(static_cast<std::uint64_t>(t) >> 32)};
    std::mt19937_64 gen(seq);
    for (auto& c : coeffs) {
      // 53 random bits -> uniform phase in [0, 2 pi)
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      c = std::polar(1.0, kTwoPi * u);
    }
    best = std::max(best, sidon_ratio(vectors, coeffs, grid_per_axis));
  }
  return best;
}

}  // namespace torustame
