#pragma once

// Exact linear and polynomial algebra over Z and Q.

#include "torustame/matrix.hpp"
#include "torustame/polynomial.hpp"

namespace torustame {

/// Monic characteristic polynomial det(xI - a), computed with the integer
/// Faddeev-LeVerrier recurrence. Each division by k is exact.
RatPoly char_poly(const IntMatrix& a);

/// Monic minimal polynomial of a over Q: the lcm of the minimal polynomials
/// of the standard basis vectors, each found from the first linear
/// dependency in its Krylov sequence e, a e, a^2 e, ...
RatPoly min_poly(const IntMatrix& a);

/// Minimal polynomial of the vector v with respect to a.
RatPoly vector_min_poly(const IntMatrix& a, std::span<const Integer> v);

}  // namespace torustame
