#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "torustame/matrix.hpp"

namespace torustame {

/// A source of integer vectors of one fixed dimension. Possibly infinite.
class FrequencyStream {
 public:
  using Source = std::function<std::optional<IntVector>()>;

  FrequencyStream(std::size_t dim, Source source) : dim_(dim), source_(std::move(source)) {}

  static FrequencyStream from_list(std::vector<IntVector> vectors);
  /// f(1), f(2), ...
  static FrequencyStream from_formula(std::size_t dim, std::function<IntVector(std::uint64_t)> f);
  /// u, A^T u, (A^T)^2 u, ...
  static FrequencyStream from_frequency_orbit(const IntMatrix& a, IntVector u);
  /// One vector per line, whitespace-separated integers. Blank lines are skipped.
  static FrequencyStream from_text(std::istream& in);

  std::size_t dim() const noexcept { return dim_; }

  /// Next vector, or nullopt when the source is finished.
  std::optional<IntVector> next();

 private:
  std::size_t dim_;
  Source source_;
};

struct SidonReport {
  std::vector<IntVector> selected;
  std::size_t quasi_independence_checked_up_to = 0;
  std::size_t pulled = 0;  // stream items consumed
};

inline constexpr std::size_t kQuasiIndependenceCap = 12;
inline constexpr std::size_t kDefaultPullLimit = 1'000'000;

Integer l1_norm(std::span<const Integer> v);

/// Greedy selection: a vector is taken when its l1 norm strictly exceeds the
/// sum of the l1 norms of everything taken so far. The largest vector of any
/// {-1,0,1} combination of such vectors outweighs the rest, so the selection is
/// quasi-independent. Throws StreamExhausted when `count` vectors cannot be
/// found within `pull_limit` stream items.
SidonReport extract_sidon(FrequencyStream& stream, std::size_t count,
                          std::size_t pull_limit = kDefaultPullLimit);

/// True iff no nonzero eps in {-1,0,1}^n has sum eps_i v_i = 0. Exhaustive.
bool verify_quasi_independence(std::span<const IntVector> vectors);

/// sum |c_k| / max over the grid of |sum c_k exp(i (lambda_k, x))|.
double sidon_ratio(std::span<const IntVector> vectors, std::span<const std::complex<double>> coeffs,
                   std::size_t grid_per_axis);

/// Max of sidon_ratio over `trials` unit-modulus coefficient vectors with
/// independent uniform phases. Trial t draws from a generator seeded by (seed, t),
/// so results are bit-reproducible and a longer run extends a shorter one.
double estimate_sidon_ratio(std::span<const IntVector> vectors, std::size_t trials,
                            std::size_t grid_per_axis, std::uint64_t seed);

}  // namespace torustame
