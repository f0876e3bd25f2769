#include "torustame/matrix.hpp"

#include <utility>

namespace torustame {

namespace {

template <typename Scalar>
SquareMatrix<Scalar> multiply(const SquareMatrix<Scalar>& a, const SquareMatrix<Scalar>& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "mat_mul: dimension mismatch");
  const std::size_t d = a.dim();
  SquareMatrix<Scalar> c(d);
  Scalar acc;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

}  // namespace

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }

IntMatrix mat_add(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "mat_add: dimension mismatch");
  IntMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix mat_pow(const IntMatrix& a, unsigned long n) {
  IntMatrix result = IntMatrix::identity(a.dim());
  IntMatrix base = a;
  while (n > 0) {
    if (n & 1UL) result = mat_mul(result, base);
    n >>= 1;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

IntVector mat_vec(const IntMatrix& a, std::span<const Integer> v) {
  if (v.size() != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "mat_vec: dimension mismatch");
  IntVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j);
  return r;
}

Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.dim();
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const RatMatrix& a) {
  const std::size_t n = a.dim();
  RatMatrix m = a;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < n; ++col) {
    std::size_t pivot = r;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(r, j), m(pivot, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m(i, col) == 0) continue;
      Rational f = m(i, col) / m(r, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace torustame
