#include "torustame/exactalg.hpp"

#include <vector>

namespace torustame {

RatPoly char_poly(const IntMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix m = IntMatrix::zero(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = mat_mul(a, m);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    const IntMatrix am = mat_mul(a, m);
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    Integer kk = static_cast<unsigned long>(k);
    if (mpz_divisible_p(trace.get_mpz_t(), kk.get_mpz_t()) == 0)
      throw Error(ErrorCode::Internal, "char_poly: inexact Faddeev-LeVerrier division");
    Integer q;
    mpz_divexact(q.get_mpz_t(), trace.get_mpz_t(), kk.get_mpz_t());
    c[n - k] = -q;
  }
  std::vector<Rational> coeffs(c.begin(), c.end());
  return RatPoly(std::move(coeffs));
}

namespace {

struct PivotRow {
  std::vector<Rational> vec;
  std::size_t pivot;
  RatPoly combo;  // vec = combo(a) applied to the start vector
};

}  // namespace

RatPoly vector_min_poly(const IntMatrix& a, std::span<const Integer> v) {
  const std::size_t n = a.dim();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector_min_poly: dimension mismatch");

  std::vector<PivotRow> basis;
  IntVector krylov(v.begin(), v.end());
  for (std::size_t m = 0; m <= n; ++m) {
    std::vector<Rational> w(krylov.begin(), krylov.end());
    RatPoly combo = RatPoly::monomial(m);
    for (const auto& row : basis) {
      if (w[row.pivot] == 0) continue;
      Rational f = w[row.pivot] / row.vec[row.pivot];
      for (std::size_t j = 0; j < n; ++j) w[j] -= f * row.vec[j];
      combo = combo - RatPoly::constant(f) * row.combo;
    }
    std::size_t pivot = 0;
    while (pivot < n && w[pivot] == 0) ++pivot;
    if (pivot == n) return combo;
    basis.push_back({std::move(w), pivot, std::move(combo)});
    krylov = mat_vec(a, krylov);
  }
  throw Error(ErrorCode::Internal, "vector_min_poly: Krylov sequence did not become dependent");
}

RatPoly min_poly(const IntMatrix& a) {
  const std::size_t n = a.dim();
  RatPoly mu = RatPoly::constant(1);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n);
    e[j] = 1;
    mu = poly_lcm(mu, vector_min_poly(a, e));
  }
  return mu;
}

}  // namespace torustame
