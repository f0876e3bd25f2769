#include "torustame/polynomial.hpp"

#include <sstream>

namespace torustame {

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

RatPoly RatPoly::constant(Rational c) { return RatPoly(std::vector<Rational>{std::move(c)}); }

RatPoly RatPoly::monomial(std::size_t degree, Rational c) {
  std::vector<Rational> v(degree + 1);
  v[degree] = std::move(c);
  return RatPoly(std::move(v));
}

RatPoly RatPoly::linear(Rational root) {
  return RatPoly(std::vector<Rational>{-root, Rational(1)});
}

void RatPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> RatPoly::degree() const noexcept {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

const Rational& RatPoly::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading coefficient");
  return coeffs_.back();
}

bool RatPoly::has_integer_coefficients() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

Rational RatPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

RatPoly RatPoly::monic() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
  std::vector<Rational> v = coeffs_;
  const Rational lead = leading();
  for (auto& c : v) c /= lead;
  return RatPoly(std::move(v));
}

RatPoly RatPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return RatPoly(std::move(v));
}

Rational RatPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly operator+(const RatPoly& f, const RatPoly& g) {
  std::vector<Rational> v(std::max(f.coeffs_.size(), g.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.coeff(i) + g.coeff(i);
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& f, const RatPoly& g) {
  std::vector<Rational> v(std::max(f.coeffs_.size(), g.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.coeff(i) - g.coeff(i);
  return RatPoly(std::move(v));
}

RatPoly operator*(const RatPoly& f, const RatPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<Rational> v(f.coeffs_.size() + g.coeffs_.size() - 1);
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j) v[i + j] += f.coeffs_[i] * g.coeffs_[j];
  return RatPoly(std::move(v));
}

std::string RatPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& f, const RatPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "poly_divmod: division by the zero polynomial");
  const std::size_t dg = *g.degree();
  if (f.is_zero() || *f.degree() < dg) return {RatPoly{}, f};

  std::vector<Rational> rem(f.coeffs().begin(), f.coeffs().end());
  std::vector<Rational> quot(rem.size() - dg);
  const Rational& lead = g.leading();
  for (std::size_t i = rem.size(); i-- > dg;) {
    if (rem[i] == 0) continue;
    Rational t = rem[i] / lead;
    quot[i - dg] = t;
    for (std::size_t j = 0; j <= dg; ++j) rem[i - dg + j] -= t * g.coeffs()[j];
  }
  rem.resize(dg);
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

RatPoly poly_gcd(const RatPoly& f, const RatPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "poly_gcd: both inputs are zero");
  RatPoly a = f, b = g;
  while (!b.is_zero()) {
    RatPoly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatPoly poly_lcm(const RatPoly& f, const RatPoly& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "poly_lcm: zero input");
  auto [q, r] = poly_divmod(f * g, poly_gcd(f, g));
  return q.monic();
}

std::pair<std::size_t, RatPoly> strip_x_factor(const RatPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "strip_x_factor: zero polynomial");
  std::size_t k = 0;
  while (f.coeffs()[k] == 0) ++k;
  return {k, RatPoly(std::vector<Rational>(f.coeffs().begin() + static_cast<std::ptrdiff_t>(k), f.coeffs().end()))};
}

RatMatrix evaluate_at(const RatPoly& f, const IntMatrix& a) {
  const RatMatrix ar = to_rational(a);
  RatMatrix acc = RatMatrix::zero(a.dim());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = mat_mul(acc, ar);
    for (std::size_t i = 0; i < a.dim(); ++i) acc(i, i) += *it;
  }
  return acc;
}

}  // namespace torustame
