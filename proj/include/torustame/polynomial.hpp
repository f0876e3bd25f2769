#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torustame/matrix.hpp"

namespace torustame {

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// Always stored without leading zeros; the zero polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  RatPoly(std::initializer_list<long> coeffs);

  static RatPoly constant(Rational c);
  static RatPoly monomial(std::size_t degree, Rational c = 1);
  /// x - root
  static RatPoly linear(Rational root);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Empty for the zero polynomial.
  std::optional<std::size_t> degree() const noexcept;
  const Rational& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }
  bool has_integer_coefficients() const;

  /// Coefficient of x^i; zero past the degree.
  Rational coeff(std::size_t i) const;
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  RatPoly monic() const;
  RatPoly derivative() const;
  Rational evaluate(const Rational& x) const;

  friend RatPoly operator+(const RatPoly& f, const RatPoly& g);
  friend RatPoly operator-(const RatPoly& f, const RatPoly& g);
  friend RatPoly operator*(const RatPoly& f, const RatPoly& g);
  friend bool operator==(const RatPoly& f, const RatPoly& g) = default;

  /// Readable form such as "x^2 - 3*x + 1".
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const RatPoly& f) { return os << f.to_string(); }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// f = q*g + r with deg r < deg g.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& f, const RatPoly& g);

/// Monic greatest common divisor.
RatPoly poly_gcd(const RatPoly& f, const RatPoly& g);

/// Monic least common multiple of two nonzero polynomials.
RatPoly poly_lcm(const RatPoly& f, const RatPoly& g);

/// f = x^k * g with g(0) != 0 and k maximal.
std::pair<std::size_t, RatPoly> strip_x_factor(const RatPoly& f);

/// f(a) by Horner's rule.
RatMatrix evaluate_at(const RatPoly& f, const IntMatrix& a);

}  // namespace torustame
