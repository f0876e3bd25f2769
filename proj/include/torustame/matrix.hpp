#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "torustame/error.hpp"

namespace torustame {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Dense square matrix over an exact scalar type, stored row-major.
template <typename Scalar>
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw Error(ErrorCode::Dimension, "matrix dimension must be positive");
  }

  SquareMatrix(std::initializer_list<std::initializer_list<long>> rows)
      : SquareMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) throw Error(ErrorCode::Dimension, "matrix must be square");
      std::size_t j = 0;
      for (long v : row) (*this)(i, j++) = Scalar(v);
      ++i;
    }
  }

  static SquareMatrix identity(std::size_t dim) {
    SquareMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  static SquareMatrix zero(std::size_t dim) { return SquareMatrix(dim); }

  std::size_t dim() const noexcept { return dim_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  std::span<const Scalar> row(std::size_t i) const {
    return std::span<const Scalar>(entries_).subspan(i * dim_, dim_);
  }
  std::span<const Scalar> entries() const noexcept { return entries_; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  SquareMatrix transpose() const {
    SquareMatrix t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  friend std::ostream& operator<<(std::ostream& os, const SquareMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.dim_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.dim_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t dim_;
  std::vector<Scalar> entries_;
};

using IntMatrix = SquareMatrix<Integer>;
using RatMatrix = SquareMatrix<Rational>;

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
IntMatrix mat_add(const IntMatrix& a, const IntMatrix& b);

/// Exact power by repeated squaring; mat_pow(a, 0) is the identity, also for singular a.
IntMatrix mat_pow(const IntMatrix& a, unsigned long n);

IntVector mat_vec(const IntMatrix& a, std::span<const Integer> v);

RatMatrix to_rational(const IntMatrix& a);

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Rank over Q by Gauss-Jordan elimination (first nonzero pivot, row order).
std::size_t rank(const RatMatrix& a);

}  // namespace torustame
