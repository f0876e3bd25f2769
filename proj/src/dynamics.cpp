#include "torustame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace torustame {

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circle_distance(double s, double t) {
  const double delta = std::fabs(s - t);
  return std::min(delta, kTwoPi - delta);
}

double torus_distance(const TorusPoint& x, const TorusPoint& y) {
  if (x.dim() != y.dim()) throw Error(ErrorCode::DimensionMismatch, "torus_distance: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) worst = std::max(worst, circle_distance(x.coords[i], y.coords[i]));
  return worst;
}

AffineMap::AffineMap(IntMatrix a, std::vector<double> b) : a_(std::move(a)), b_(std::move(b)) {
  if (b_.size() != a_.dim()) throw Error(ErrorCode::Dimension, "translation length must equal the matrix dimension");
  for (double& t : b_) t = wrap_angle(t);
}

AffineMap::AffineMap(IntMatrix a) : AffineMap(a, std::vector<double>(a.dim(), 0.0)) {}

namespace {

std::vector<double> linear_part_as_double(const IntMatrix& a) {
  std::vector<double> out;
  out.reserve(a.dim() * a.dim());
  for (const auto& e : a.entries()) out.push_back(e.get_d());
  return out;
}

TorusPoint affine_image(std::span<const double> a, std::size_t d, std::span<const double> b,
                        const TorusPoint& x) {
  TorusPoint y{std::vector<double>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    double acc = b[i];
    for (std::size_t j = 0; j < d; ++j) acc += a[i * d + j] * x.coords[j];
    y.coords[i] = wrap_angle(acc);
  }
  return y;
}

}  // namespace

TorusPoint apply(const AffineMap& phi, const TorusPoint& x) {
  if (x.dim() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "apply: point dimension mismatch");
  return affine_image(linear_part_as_double(phi.linear()), phi.dim(), phi.translation(), x);
}

std::vector<TorusPoint> orbit(const AffineMap& phi, const TorusPoint& x0, std::size_t n) {
  if (x0.dim() != phi.dim()) throw Error(ErrorCode::DimensionMismatch, "orbit: point dimension mismatch");
  const auto a = linear_part_as_double(phi.linear());
  std::vector<TorusPoint> out;
  out.reserve(n + 1);
  TorusPoint x = x0;
  for (double& t : x.coords) t = wrap_angle(t);
  out.push_back(x);
  for (std::size_t k = 0; k < n; ++k) out.push_back(affine_image(a, phi.dim(), phi.translation(), out.back()));
  return out;
}

std::vector<TorusPoint> uniform_grid(std::size_t d, std::size_t per_axis) {
  if (d == 0 || per_axis == 0) throw Error(ErrorCode::InvalidArgument, "uniform_grid: empty grid");
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per_axis;
  std::vector<TorusPoint> grid;
  grid.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t n = 0; n < total; ++n) {
    TorusPoint p{std::vector<double>(d)};
    for (std::size_t i = 0; i < d; ++i) p.coords[i] = kTwoPi * static_cast<double>(idx[i]) / static_cast<double>(per_axis);
    grid.push_back(std::move(p));
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return grid;
}

std::size_t default_grid_per_axis(std::size_t d) {
  if (d <= 3) return 32;
  auto n = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(kGridPointCap), 1.0 / static_cast<double>(d))));
  // pow may land just below an exact root
  while (true) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= n + 1;
    if (total > kGridPointCap) break;
    ++n;
  }
  return std::max<std::size_t>(n, 2);
}

FrequencyOrbit frequency_orbit(const IntMatrix& a, std::span<const Integer> u, std::size_t n) {
  if (u.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "frequency_orbit: frequency dimension mismatch");
  const IntMatrix at = a.transpose();
  FrequencyOrbit fo;
  fo.u.assign(u.begin(), u.end());
  fo.terms.reserve(n + 1);
  fo.terms.push_back(fo.u);
  for (std::size_t k = 0; k < n; ++k) fo.terms.push_back(mat_vec(at, fo.terms.back()));
  return fo;
}

EscapeResult escape_probe(const FrequencyOrbit& fo, const Integer& bound) {
  for (std::size_t n = 0; n < fo.terms.size(); ++n)
    for (const auto& c : fo.terms[n])
      if (abs(c) > bound) return {true, n};
  return {false, std::nullopt};
}

std::complex<double> grid_average_exponential(std::span<const Integer> lambda, std::size_t per_axis) {
  if (lambda.empty() || per_axis == 0) throw Error(ErrorCode::InvalidArgument, "grid_average_exponential: empty grid");
  const std::size_t d = lambda.size();
  const Integer modulus = static_cast<unsigned long>(per_axis);
  std::vector<unsigned long> residue(d);
  for (std::size_t i = 0; i < d; ++i) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), lambda[i].get_mpz_t(), modulus.get_mpz_t());
    residue[i] = r.get_ui();
  }
  std::vector<std::complex<double>> roots(per_axis);
  for (std::size_t r = 0; r < per_axis; ++r)
    roots[r] = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(per_axis));

  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per_axis;
  std::vector<std::size_t> idx(d, 0);
  std::complex<double> sum = 0.0;
  for (std::size_t n = 0; n < total; ++n) {
    unsigned long phase = 0;
    for (std::size_t i = 0; i < d; ++i) phase = (phase + residue[i] * idx[i]) % per_axis;
    sum += roots[phase];
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < per_axis) break;
      idx[i] = 0;
    }
  }
  return sum / static_cast<double>(total);
}

ConvergenceResult convergence_probe(const AffineMap& phi, std::span<const std::uint64_t> indices,
                                    std::span<const TorusPoint> grid, double tol) {
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "convergence_probe: no indices");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "convergence_probe: tolerance must be positive");
  const std::size_t d = phi.dim();
  for (const auto& x : grid)
    if (x.dim() != d) throw Error(ErrorCode::DimensionMismatch, "convergence_probe: grid dimension mismatch");

  // phi^n(x) = A^n x + t_n with t_0 = 0 and t_(n+1) = A t_n + b.
  const std::uint64_t last = *std::max_element(indices.begin(), indices.end());
  const std::set<std::uint64_t> wanted(indices.begin(), indices.end());
  const auto a = linear_part_as_double(phi.linear());
  IntMatrix power = IntMatrix::identity(d);
  std::vector<double> shift(d, 0.0);

  std::vector<IntMatrix> distinct;
  std::vector<std::pair<std::size_t, std::vector<TorusPoint>>> by_index;  // index value -> (group, images)
  std::vector<std::uint64_t> index_values;
  for (std::uint64_t n = 0; n <= last; ++n) {
    if (wanted.count(n)) {
      std::size_t g = 0;
      while (g < distinct.size() && !(distinct[g] == power)) ++g;
      if (g == distinct.size()) distinct.push_back(power);
      const auto ad = linear_part_as_double(power);
      std::vector<TorusPoint> img;
      img.reserve(grid.size());
      for (const auto& x : grid) img.push_back(affine_image(ad, d, shift, x));
      index_values.push_back(n);
      by_index.emplace_back(g, std::move(img));
    }
    if (n == last) break;
    power = mat_mul(phi.linear(), power);
    std::vector<double> next(d);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = phi.translation()[i];
      for (std::size_t j = 0; j < d; ++j) acc += a[i * d + j] * shift[j];
      next[i] = wrap_angle(acc);
    }
    shift = std::move(next);
  }

  auto deviation = [&](std::size_t i, std::size_t j) {
    double worst = 0.0;
    const auto& xi = by_index[i].second;
    const auto& xj = by_index[j].second;
    for (std::size_t p = 0; p < xi.size(); ++p) worst = std::max(worst, torus_distance(xi[p], xj[p]));
    return worst;
  };

  // Clusters over the de-duplicated index list, in increasing index order.
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<double> spread;
  std::vector<std::size_t> cluster_group;
  for (std::size_t i = 0; i < by_index.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < clusters.size() && !placed; ++c) {
      if (cluster_group[c] != by_index[i].first) continue;
      double worst = spread[c];
      bool fits = true;
      for (std::size_t member : clusters[c]) {
        const double dev = deviation(member, i);
        if (dev >= tol) {
          fits = false;
          break;
        }
        worst = std::max(worst, dev);
      }
      if (fits) {
        clusters[c].push_back(i);
        spread[c] = worst;
        placed = true;
      }
    }
    if (!placed) {
      clusters.push_back({i});
      spread.push_back(0.0);
      cluster_group.push_back(by_index[i].first);
    }
  }

  std::size_t best = 0;
  for (std::size_t c = 1; c < clusters.size(); ++c)
    if (clusters[c].size() > clusters[best].size()) best = c;

  ConvergenceResult result;
  for (std::size_t i : clusters[best]) result.subsequence.push_back(index_values[i]);
  result.max_deviation = spread[best];
  return result;
}

bool independence_check(const IndependenceQuery& q) {
  const std::size_t n = q.functions.size();
  if (n > kIndependenceCap) {
    std::ostringstream os;
    os << "independence_check: " << n << " functions exceed the cap of " << kIndependenceCap;
    throw Error(ErrorCode::CapExceeded, os.str());
  }
  if (!(q.a < q.b)) throw Error(ErrorCode::InvalidArgument, "independence_check: need a < b");
  if (n == 0) return true;
  const std::size_t points = q.functions.front().size();
  for (const auto& f : q.functions)
    if (f.size() != points) throw Error(ErrorCode::DimensionMismatch, "independence_check: sample arrays differ in length");

  // Each grid point realizes every pattern (P, Q) with P within its below-set and Q within its above-set.
  std::set<std::pair<std::uint32_t, std::uint32_t>> realized;
  for (std::size_t x = 0; x < points; ++x) {
    std::uint32_t below = 0, above = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (q.functions[k][x] < q.a) below |= 1U << k;
      if (q.functions[k][x] > q.b) above |= 1U << k;
    }
    realized.emplace(below, above);
  }

  std::vector<int> digit(n, 0);  // 0: free, 1: in P, 2: in Q
  while (true) {
    std::uint32_t p_mask = 0, q_mask = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (digit[k] == 1) p_mask |= 1U << k;
      if (digit[k] == 2) q_mask |= 1U << k;
    }
    bool found = p_mask == 0 && q_mask == 0;
    for (auto it = realized.begin(); it != realized.end() && !found; ++it)
      found = (it->first & p_mask) == p_mask && (it->second & q_mask) == q_mask;
    if (!found) return false;

    std::size_t k = 0;
    while (k < n && digit[k] == 2) digit[k++] = 0;
    if (k == n) return true;
    ++digit[k];
  }
}

}  // namespace torustame
