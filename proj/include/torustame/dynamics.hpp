#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "torustame/matrix.hpp"

namespace torustame {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2*pi).
double wrap_angle(double t);

/// Circular distance min(|s - t|, 2*pi - |s - t|) of two reduced angles.
double circle_distance(double s, double t);

struct TorusPoint {
  std::vector<double> coords;

  std::size_t dim() const noexcept { return coords.size(); }
};

/// Sup over coordinates of the circular distance.
double torus_distance(const TorusPoint& x, const TorusPoint& y);

/// x -> A x + b on R^d / (2 pi Z)^d.
class AffineMap {
 public:
  AffineMap(IntMatrix a, std::vector<double> b);
  explicit AffineMap(IntMatrix a);

  const IntMatrix& linear() const noexcept { return a_; }
  std::span<const double> translation() const noexcept { return b_; }
  std::size_t dim() const noexcept { return a_.dim(); }

 private:
  IntMatrix a_;
  std::vector<double> b_;
};

TorusPoint apply(const AffineMap& phi, const TorusPoint& x);

/// [x0, phi(x0), ..., phi^n(x0)].
std::vector<TorusPoint> orbit(const AffineMap& phi, const TorusPoint& x0, std::size_t n);

/// Uniform grid with `per_axis` points 2*pi*j/per_axis on each axis, last axis fastest.
std::vector<TorusPoint> uniform_grid(std::size_t d, std::size_t per_axis);

/// Total number of grid points default_grid_per_axis keeps under for d > 3.
inline constexpr std::size_t kGridPointCap = 32768;

/// 32 for d <= 3, otherwise floor(kGridPointCap^(1/d)) but at least 2.
std::size_t default_grid_per_axis(std::size_t d);

struct FrequencyOrbit {
  IntVector u;
  std::vector<IntVector> terms;  // terms[n] = (A^T)^n u
};

FrequencyOrbit frequency_orbit(const IntMatrix& a, std::span<const Integer> u, std::size_t n);

struct EscapeResult {
  bool escaped = false;
  std::optional<std::size_t> first_n;
};

/// First index whose sup-norm exceeds bound.
EscapeResult escape_probe(const FrequencyOrbit& fo, const Integer& bound);

/// Mean of exp(i (lambda, x)) over the uniform per_axis^d grid. Phases are reduced
/// modulo per_axis in integer arithmetic and summed in grid order.
std::complex<double> grid_average_exponential(std::span<const Integer> lambda, std::size_t per_axis);

struct ConvergenceResult {
  std::vector<std::uint64_t> subsequence;
  double max_deviation = 0.0;
};

/// Looks for a sub-list of `indices` along which phi^n converges on `grid`:
/// indices are grouped by the exact value of A^n, each group is split greedily
/// (in index order) into clusters whose members stay within tol of every other
/// member at every grid point, and the largest cluster wins (earliest first
/// index on ties).
ConvergenceResult convergence_probe(const AffineMap& phi, std::span<const std::uint64_t> indices,
                                    std::span<const TorusPoint> grid, double tol);

struct IndependenceQuery {
  std::vector<std::vector<double>> functions;  // samples over one shared grid
  double a = 0.0;
  double b = 0.0;
};

inline constexpr std::size_t kIndependenceCap = 12;

/// True iff every pair of disjoint index sets P, Q has a grid point with
/// f_p < a on P and f_q > b on Q. Enumerates all 3^n patterns.
bool independence_check(const IndependenceQuery& q);

}  // namespace torustame
