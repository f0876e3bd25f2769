#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "torustame/tameness.hpp"

using namespace torustame;

namespace {

std::uint64_t phi_by_counting(std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

// s_max by enumerating every subset of the admissible orders as a bitmask.
std::uint64_t s_max_by_bitmask(std::size_t d) {
  std::vector<std::uint64_t> orders;
  for (std::uint64_t n = 1; n <= 2 * d * d + 2; ++n)
    if (phi_by_counting(n) <= d) orders.push_back(n);
  std::uint64_t best = 1;
  for (std::uint64_t mask = 0; mask < (1ULL << orders.size()); ++mask) {
    std::uint64_t cost = 0, l = 1;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (mask >> i & 1) {
        cost += phi_by_counting(orders[i]);
        l = std::lcm(l, orders[i]);
      }
    if (cost <= d) best = std::max(best, l);
  }
  return best;
}

std::vector<IntMatrix> all_2x2(int lo, int hi) {
  std::vector<IntMatrix> out;
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b)
      for (int c = lo; c <= hi; ++c)
        for (int d = lo; d <= hi; ++d) out.push_back(IntMatrix{{a, b}, {c, d}});
  return out;
}

// Random unimodular U together with its inverse, as products of elementary matrices.
std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<std::size_t> pick(0, d - 1);
  std::uniform_int_distribution<int> mult(-2, 2), kind(0, 2);
  IntMatrix u = IntMatrix::identity(d), inv = IntMatrix::identity(d);
  for (int step = 0; step < 6; ++step) {
    IntMatrix e = IntMatrix::identity(d), e_inv = IntMatrix::identity(d);
    const std::size_t i = pick(rng), j = pick(rng);
    switch (kind(rng)) {
      case 0:
        if (i == j) continue;
        e(i, j) = mult(rng);
        e_inv(i, j) = -e(i, j);
        break;
      case 1:
        e(i, i) = -1;
        e_inv(i, i) = -1;
        break;
      default:
        if (i == j) continue;
        e(i, i) = e(j, j) = 0;
        e(i, j) = e(j, i) = 1;
        e_inv = e;
    }
    u = mat_mul(u, e);
    inv = mat_mul(e_inv, inv);
  }
  return {u, inv};
}

IntMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  IntMatrix p(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1;
  return p;
}

}  // namespace

TEST_CASE("euler_phi agrees with counting") {
  for (std::uint64_t n = 1; n <= 300; ++n) CHECK(euler_phi(n) == phi_by_counting(n));
}

TEST_CASE("inverse_phi examples") {
  CHECK(inverse_phi(1) == std::set<std::uint64_t>{1, 2});
  CHECK(inverse_phi(2) == std::set<std::uint64_t>{3, 4, 6});
  CHECK(inverse_phi(3).empty());
  CHECK(inverse_phi(4) == std::set<std::uint64_t>{5, 8, 10, 12});
  // The search bound 2 m^2 loses nothing: compare against a much wider scan.
  for (std::uint64_t m = 1; m <= 12; ++m) {
    std::set<std::uint64_t> wide;
    for (std::uint64_t n = 1; n <= 2000; ++n)
      if (phi_by_counting(n) == m) wide.insert(n);
    CHECK(inverse_phi(m) == wide);
  }
}

TEST_CASE("order_bound examples") {
  CHECK(order_bound(1).s_max == 2);
  CHECK(order_bound(1).admissible_orders == std::set<std::uint64_t>{1, 2});
  CHECK(order_bound(2).s_max == 6);
  CHECK(order_bound(2).admissible_orders == std::set<std::uint64_t>{1, 2, 3, 4, 6});
  CHECK(order_bound(3).s_max == 6);
  CHECK(order_bound(4).s_max == 12);
  CHECK_THROWS_AS(order_bound(kMaxOrderBoundDim + 1), Error);
}

TEST_CASE("order_bound matches bitmask enumeration and is monotone") {
  for (std::size_t d = 1; d <= 6; ++d) CHECK(order_bound(d).s_max == s_max_by_bitmask(d));
  std::uint64_t prev = 1;
  for (std::size_t d = 1; d <= 24; ++d) {
    const auto t = order_bound(d);
    CHECK(t.admissible_orders.count(1) == 1);
    CHECK(t.s_max >= prev);
    prev = t.s_max;
  }
}

TEST_CASE("order_of_x_mod examples") {
  CHECK(order_of_x_mod(RatPoly{-1, 1}, 6) == 1);
  CHECK(order_of_x_mod(RatPoly{1, 0, 1}, 6) == 4);
  CHECK(order_of_x_mod(RatPoly{1, -3, 1}, 6) == std::nullopt);
  CHECK(order_of_x_mod(RatPoly{1, 1, 1}, 6) == 3);
  CHECK(order_of_x_mod(RatPoly{1, -1, 1}, 6) == 6);
  CHECK(order_of_x_mod(RatPoly{1, -1, 1}, 5) == std::nullopt);
  CHECK(order_of_x_mod(RatPoly{3}, 6) == 1);
  CHECK_THROWS_AS(order_of_x_mod(RatPoly{0, 1}, 6), Error);
}

TEST_CASE("decide_semicascade examples") {
  SUBCASE("identity") {
    auto c = decide_semicascade(IntMatrix::identity(2));
    CHECK(c.verdict == Verdict::Tame);
    CHECK(c.minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(0, 1));
  }
  SUBCASE("shear") {
    auto c = decide_semicascade(IntMatrix{{1, 1}, {0, 1}});
    CHECK(c.verdict == Verdict::Untame);
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->reason == UntameReason::NotSquarefree);
    CHECK(c.witness->stripped_min_poly == RatPoly{1, -2, 1});
  }
  SUBCASE("nilpotent") {
    auto c = decide_semicascade(IntMatrix{{0, 1}, {0, 0}});
    CHECK(c.verdict == Verdict::Tame);
    CHECK(c.index_k == 2);
    CHECK(c.period_s == 1);
    CHECK(c.minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(2, 3));
  }
  SUBCASE("cat map") {
    auto c = decide_semicascade(IntMatrix{{2, 1}, {1, 1}});
    CHECK(c.verdict == Verdict::Untame);
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->reason == UntameReason::OrderBoundExhausted);
    CHECK(c.witness->order_bound == 6);
    CHECK(c.witness->stripped_min_poly == RatPoly{1, -3, 1});
  }
  SUBCASE("idempotent") {
    auto c = decide_semicascade(IntMatrix{{1, 0}, {0, 0}});
    CHECK(c.verdict == Verdict::Tame);
    CHECK(c.minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(1, 2));
  }
  SUBCASE("zero matrix and scalars") {
    CHECK(decide_semicascade(IntMatrix::zero(2)).minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(1, 2));
    CHECK(decide_semicascade(IntMatrix{{-1}}).minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(0, 2));
    CHECK(decide_semicascade(IntMatrix{{0}}).minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(1, 2));
    CHECK(decide_semicascade(IntMatrix{{2}}).verdict == Verdict::Untame);
  }
}

TEST_CASE("decide_cascade examples") {
  auto rot = decide_cascade(IntMatrix{{0, -1}, {1, 0}});
  CHECK(rot.verdict == Verdict::Tame);
  CHECK(rot.minimal_order_m == 4);
  auto hex = decide_cascade(IntMatrix{{0, -1}, {1, 1}});
  CHECK(hex.verdict == Verdict::Tame);
  CHECK(hex.minimal_order_m == 6);
  CHECK(mat_pow(IntMatrix{{0, -1}, {1, 1}}, 6) == IntMatrix::identity(2));
  auto shear = decide_cascade(IntMatrix{{1, 1}, {0, 1}});
  CHECK(shear.verdict == Verdict::Untame);
  CHECK(shear.witness->reason == UntameReason::NotSquarefree);
  try {
    decide_cascade(IntMatrix{{1, 0}, {0, 0}});
    FAIL("expected DETERMINANT_NOT_UNIT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DeterminantNotUnit);
  }
  CHECK_THROWS_AS(decide_cascade(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("oracle_semicascade examples") {
  auto id = oracle_semicascade(IntMatrix::identity(2));
  CHECK(id.verdict == Verdict::Tame);
  CHECK(id.minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(0, 1));
  auto rot = oracle_semicascade(IntMatrix{{0, -1}, {1, 0}});
  CHECK(rot.minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(0, 4));
  auto cat = oracle_semicascade(IntMatrix{{2, 1}, {1, 1}});
  CHECK(cat.verdict == Verdict::Untame);
  CHECK_FALSE(cat.minimal_pair.has_value());
}

TEST_CASE("certificate_check examples") {
  const IntMatrix rot{{0, -1}, {1, 0}};
  CHECK(certificate_check(IntMatrix::identity(2), decide_semicascade(IntMatrix::identity(2))));
  auto c = decide_cascade(rot);
  CHECK(certificate_check(rot, c));
  auto forged = c;
  forged.minimal_order_m = 2;
  forged.period_s = 2;
  CHECK_FALSE(certificate_check(rot, forged));
  forged = c;
  forged.minimal_order_m = 8;  // A^8 = I, but not minimal
  forged.period_s = 8;
  CHECK_FALSE(certificate_check(rot, forged));

  auto s = decide_semicascade(IntMatrix{{0, 1}, {0, 0}});
  auto wrong_pair = s;
  wrong_pair.minimal_pair = std::make_pair<std::uint64_t, std::uint64_t>(2, 4);
  wrong_pair.period_s = 2;
  CHECK_FALSE(certificate_check(IntMatrix{{0, 1}, {0, 0}}, wrong_pair));

  // An untame claim against a tame matrix fails.
  auto untame = decide_semicascade(IntMatrix{{1, 1}, {0, 1}});
  CHECK(certificate_check(IntMatrix{{1, 1}, {0, 1}}, untame));
  CHECK_FALSE(certificate_check(IntMatrix::identity(2), untame));
}

TEST_CASE("decider and oracle agree on every 2x2 matrix with entries in -2..2") {
  const auto matrices = all_2x2(-2, 2);
  REQUIRE(matrices.size() == 625);
  for (const auto& a : matrices) {
    const auto c = decide_semicascade(a);
    const auto o = oracle_semicascade(a);
    CHECK(c.verdict == o.verdict);
    CHECK(c.minimal_pair == o.minimal_pair);
    if (c.verdict == Verdict::Tame) CHECK(certificate_check(a, c));
    // transpose invariance
    const auto t = decide_semicascade(a.transpose());
    CHECK(t.verdict == c.verdict);
    CHECK(t.minimal_pair == c.minimal_pair);
  }
}

TEST_CASE("decider and oracle agree on random and structured higher-dimensional matrices") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> entry(-1, 1);
  std::vector<IntMatrix> cases;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = 3 + static_cast<std::size_t>(trial % 2);
    IntMatrix a(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (rng() % 3 == 0) a(i, j) = entry(rng);
    cases.push_back(a);
  }
  cases.push_back(permutation_matrix({1, 2, 3, 4, 0}));  // 5-cycle
  cases.push_back(permutation_matrix({1, 0, 3, 4, 2}));  // (2)(3): order 6
  // block diag(rotation of order 4, rotation of order 3) -> order 12 in d = 4
  cases.push_back(IntMatrix{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, -1}});
  // nilpotent Jordan block of size 4 next to nothing: index 4
  cases.push_back(IntMatrix{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  // idempotent-times-rotation: index 1, period 4
  cases.push_back(IntMatrix{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}});

  for (const auto& a : cases) {
    const auto c = decide_semicascade(a);
    const auto o = oracle_semicascade(a);
    CHECK(c.verdict == o.verdict);
    CHECK(c.minimal_pair == o.minimal_pair);
  }
  CHECK(decide_cascade(cases[cases.size() - 3]).minimal_order_m == 12);
  CHECK(decide_semicascade(cases[cases.size() - 2]).minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(4, 5));
  CHECK(decide_semicascade(cases.back()).minimal_pair == std::make_pair<std::uint64_t, std::uint64_t>(1, 5));
}

TEST_CASE("cascade verdicts are consistent with semicascade verdicts") {
  for (const auto& a : all_2x2(-2, 2)) {
    if (abs(determinant(a)) != 1) continue;
    const auto cas = decide_cascade(a);
    const auto semi = decide_semicascade(a);
    CHECK(cas.verdict == semi.verdict);
    if (cas.verdict == Verdict::Tame) {
      CHECK(certificate_check(a, cas));
      CHECK(semi.index_k == 0);
      CHECK(semi.period_s == *cas.minimal_order_m);
    }
  }
}

TEST_CASE("verdicts and minimal pairs are invariant under unimodular conjugation") {
  std::mt19937 rng(29);
  const std::vector<IntMatrix> base{
      IntMatrix::identity(2),        IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{0, -1}, {1, 1}},
      IntMatrix{{0, 1}, {0, 0}},     IntMatrix{{1, 1}, {0, 1}},  IntMatrix{{2, 1}, {1, 1}},
      IntMatrix{{1, 0}, {0, 0}},     IntMatrix{{-1, 0}, {0, 1}}, IntMatrix{{0, 0}, {0, 0}},
  };
  for (const auto& a : base) {
    const auto ref = decide_semicascade(a);
    for (int trial = 0; trial < 10; ++trial) {
      auto [u, u_inv] = random_unimodular(rng, 2);
      REQUIRE(mat_mul(u, u_inv) == IntMatrix::identity(2));
      const auto c = decide_semicascade(mat_mul(mat_mul(u, a), u_inv));
      CHECK(c.verdict == ref.verdict);
      CHECK(c.minimal_pair == ref.minimal_pair);
    }
  }
}

TEST_CASE("finite orders of unimodular 2x2 matrices with entries in -1..1") {
  std::set<std::uint64_t> orders;
  for (const auto& a : all_2x2(-1, 1)) {
    if (abs(determinant(a)) != 1) continue;
    const auto c = decide_cascade(a);
    if (c.verdict == Verdict::Tame) orders.insert(*c.minimal_order_m);
  }
  CHECK(orders == std::set<std::uint64_t>{1, 2, 3, 4, 6});
}
