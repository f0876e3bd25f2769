#include "torustame/tameness.hpp"

#include <numeric>
#include <sstream>
#include <vector>

namespace torustame {

std::string_view to_string(Verdict v) { return v == Verdict::Tame ? "TAME" : "UNTAME"; }

std::string_view to_string(SystemKind k) {
  return k == SystemKind::Semicascade ? "SEMICASCADE" : "CASCADE";
}

std::string_view to_string(UntameReason r) {
  switch (r) {
    case UntameReason::NotSquarefree: return "NOT_SQUAREFREE";
    case UntameReason::OrderBoundExhausted: return "ORDER_BOUND_EXHAUSTED";
    case UntameReason::ZeroEigenvalue: return "ZERO_EIGENVALUE";
    case UntameReason::PositiveIndex: return "POSITIVE_INDEX";
  }
  return "UNKNOWN";
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::set<std::uint64_t> inverse_phi(std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "inverse_phi: m must be positive");
  // phi(n) >= sqrt(n/2) for every n >= 1, so phi(n) = m forces n <= 2 m^2.
  const std::uint64_t limit = 2 * m * m;
  std::set<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (euler_phi(n) == m) out.insert(n);
  return out;
}

namespace {

struct SubsetSearch {
  std::vector<std::uint64_t> orders;
  std::vector<std::uint64_t> costs;
  std::uint64_t best = 1;

  void run(std::size_t i, std::uint64_t budget, std::uint64_t lcm) {
    if (lcm > best) best = lcm;
    for (std::size_t j = i; j < orders.size(); ++j) {
      if (costs[j] > budget) continue;
      // An order dividing the running lcm cannot raise it; the subset without it is enumerated anyway.
      if (lcm % orders[j] == 0) continue;
      run(j + 1, budget - costs[j], std::lcm(lcm, orders[j]));
    }
  }
};

}  // namespace

OrderBoundTable order_bound(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "order_bound: d must be positive");
  if (d > kMaxOrderBoundDim) {
    std::ostringstream os;
    os << "order_bound: dimension " << d << " exceeds cap " << kMaxOrderBoundDim;
    throw Error(ErrorCode::CapExceeded, os.str());
  }
  OrderBoundTable table;
  table.d = d;
  for (std::uint64_t m = 1; m <= d; ++m)
    for (std::uint64_t n : inverse_phi(m)) table.admissible_orders.insert(n);

  SubsetSearch search;
  for (auto it = table.admissible_orders.rbegin(); it != table.admissible_orders.rend(); ++it) {
    search.orders.push_back(*it);
    search.costs.push_back(euler_phi(*it));
  }
  search.run(0, d, 1);
  table.s_max = search.best;
  return table;
}

std::optional<std::uint64_t> order_of_x_mod(const RatPoly& g, std::uint64_t s_max) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "order_of_x_mod: zero modulus");
  if (g.coeff(0) == 0) throw Error(ErrorCode::ConstantTermZero, "order_of_x_mod: modulus has zero constant term");
  if (*g.degree() == 0) return 1;
  const RatPoly modulus = g.monic();
  const RatPoly x = RatPoly::monomial(1);
  const RatPoly one = RatPoly::constant(1);
  RatPoly power = poly_divmod(x, modulus).second;
  for (std::uint64_t s = 1; s <= s_max; ++s) {
    if (power == one) return s;
    power = poly_divmod(power * x, modulus).second;
  }
  return std::nullopt;
}

namespace {

struct Analysis {
  std::size_t k;
  RatPoly g;
  bool squarefree;
  std::uint64_t s_max;
  std::optional<std::uint64_t> period;
};

Analysis analyze(const IntMatrix& a) {
  Analysis an;
  auto [k, g] = strip_x_factor(min_poly(a));
  an.k = k;
  an.g = std::move(g);
  an.s_max = order_bound(a.dim()).s_max;
  if (*an.g.degree() == 0) {
    // Nilpotent: A^k = A^(k+1) = 0.
    an.squarefree = true;
    an.period = 1;
    return an;
  }
  an.squarefree = *poly_gcd(an.g, an.g.derivative()).degree() == 0;
  if (an.squarefree) an.period = order_of_x_mod(an.g, an.s_max);
  return an;
}

TamenessCertificate semicascade_from(const Analysis& an) {
  TamenessCertificate c;
  c.kind = SystemKind::Semicascade;
  c.index_k = an.k;
  if (!an.squarefree) {
    c.verdict = Verdict::Untame;
    c.witness = UntameWitness{UntameReason::NotSquarefree, an.g, an.s_max};
    return c;
  }
  if (!an.period) {
    c.verdict = Verdict::Untame;
    c.witness = UntameWitness{UntameReason::OrderBoundExhausted, an.g, an.s_max};
    return c;
  }
  c.verdict = Verdict::Tame;
  c.period_s = *an.period;
  c.minimal_pair = std::make_pair(static_cast<std::uint64_t>(an.k), an.k + *an.period);
  return c;
}

void self_check(const IntMatrix& a, const TamenessCertificate& c) {
  if (c.verdict == Verdict::Tame && !certificate_check(a, c))
    throw Error(ErrorCode::Internal, "decider produced a certificate that fails its own check");
}

}  // namespace

TamenessCertificate decide_semicascade(const IntMatrix& a) {
  TamenessCertificate c = semicascade_from(analyze(a));
  self_check(a, c);
  return c;
}

TamenessCertificate decide_cascade(const IntMatrix& a) {
  const Integer det = determinant(a);
  if (abs(det) != 1) {
    std::ostringstream os;
    os << "cascade requires |det A| = 1, got det A = " << det;
    throw Error(ErrorCode::DeterminantNotUnit, os.str());
  }
  const Analysis an = analyze(a);
  TamenessCertificate c = semicascade_from(an);
  c.kind = SystemKind::Cascade;
  c.minimal_pair.reset();
  if (an.k > 0) {
    c.verdict = Verdict::Untame;
    c.period_s = 0;
    c.witness = UntameWitness{an.period ? UntameReason::PositiveIndex : UntameReason::ZeroEigenvalue,
                              an.g, an.s_max};
  } else if (c.verdict == Verdict::Tame) {
    c.minimal_order_m = c.period_s;
  }
  self_check(a, c);
  return c;
}

OracleResult oracle_semicascade(const IntMatrix& a) {
  // Index <= multiplicity of x in the minimal polynomial <= d. Period = lcm of the
  // orders of distinct cyclotomic factors, whose degrees sum to at most d, so <= s_max.
  const std::uint64_t q_max = a.dim() + order_bound(a.dim()).s_max;
  std::vector<IntMatrix> powers;
  powers.push_back(IntMatrix::identity(a.dim()));
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    IntMatrix next = mat_mul(powers.back(), a);
    for (std::uint64_t p = 0; p < q; ++p)
      if (powers[p] == next) return {Verdict::Tame, std::make_pair(p, q)};
    powers.push_back(std::move(next));
  }
  return {Verdict::Untame, std::nullopt};
}

namespace {

bool check_untame(const IntMatrix& a, const TamenessCertificate& c) {
  if (!c.witness || c.minimal_pair || c.minimal_order_m) return false;
  const Analysis an = analyze(a);
  const UntameWitness& w = *c.witness;
  if (w.stripped_min_poly != an.g || w.order_bound != an.s_max) return false;
  switch (w.reason) {
    case UntameReason::NotSquarefree:
      return !an.squarefree;
    case UntameReason::OrderBoundExhausted:
      return *an.g.degree() > 0 && !order_of_x_mod(an.g, an.s_max).has_value();
    case UntameReason::ZeroEigenvalue:
      return c.kind == SystemKind::Cascade && an.k > 0;
    case UntameReason::PositiveIndex:
      return c.kind == SystemKind::Cascade && an.k > 0 && an.period.has_value();
  }
  return false;
}

bool check_tame_semicascade(const IntMatrix& a, const TamenessCertificate& c) {
  if (!c.minimal_pair || c.witness || c.minimal_order_m) return false;
  const auto [p, q] = *c.minimal_pair;
  if (p >= q || p != c.index_k || q != c.index_k + c.period_s) return false;
  if (q > a.dim() + order_bound(a.dim()).s_max) return false;
  std::vector<IntMatrix> powers{IntMatrix::identity(a.dim())};
  for (std::uint64_t j = 1; j <= q; ++j) powers.push_back(mat_mul(powers.back(), a));
  if (powers[p] != powers[q]) return false;
  // Minimality: A^0..A^(q-1) pairwise distinct, and A^q differs from A^p' for p' < p.
  for (std::uint64_t j = 1; j < q; ++j)
    for (std::uint64_t i = 0; i < j; ++i)
      if (powers[i] == powers[j]) return false;
  for (std::uint64_t i = 0; i < p; ++i)
    if (powers[i] == powers[q]) return false;
  return true;
}

bool check_tame_cascade(const IntMatrix& a, const TamenessCertificate& c) {
  if (!c.minimal_order_m || c.witness || c.minimal_pair) return false;
  const std::uint64_t m = *c.minimal_order_m;
  if (m == 0 || c.index_k != 0 || c.period_s != m) return false;
  if (abs(determinant(a)) != 1) return false;
  if (m > order_bound(a.dim()).s_max) return false;
  const IntMatrix id = IntMatrix::identity(a.dim());
  IntMatrix power = id;
  for (std::uint64_t j = 1; j < m; ++j) {
    power = mat_mul(power, a);
    if (power == id) return false;
  }
  return mat_mul(power, a) == id;
}

}  // namespace

bool certificate_check(const IntMatrix& a, const TamenessCertificate& c) {
  if (c.verdict == Verdict::Untame) return check_untame(a, c);
  return c.kind == SystemKind::Semicascade ? check_tame_semicascade(a, c) : check_tame_cascade(a, c);
}

}  // namespace torustame
