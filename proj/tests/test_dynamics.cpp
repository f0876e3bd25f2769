#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "torustame/dynamics.hpp"
#include "torustame/tameness.hpp"

using namespace torustame;

namespace {

constexpr double kPi = std::numbers::pi;

TorusPoint point(std::initializer_list<double> c) { return TorusPoint{std::vector<double>(c)}; }

IntVector ivec(std::initializer_list<long> c) {
  IntVector v;
  for (long x : c) v.emplace_back(x);
  return v;
}

std::vector<std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// Fractional part of a rational, in [0, 1).
Rational frac(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - fl;
}

// Rademacher-style family: f_k(j) = +1 if bit k of j is set, else -1.
IndependenceQuery rademacher(std::size_t n, std::size_t points) {
  IndependenceQuery q;
  q.a = -0.5;
  q.b = 0.5;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> f(points);
    for (std::size_t j = 0; j < points; ++j) f[j] = (j >> k & 1) ? 1.0 : -1.0;
    q.functions.push_back(std::move(f));
  }
  return q;
}

}  // namespace

TEST_CASE("apply examples") {
  const AffineMap id(IntMatrix::identity(2));
  const auto x = point({1.25, 4.5});
  CHECK(apply(id, x).coords == x.coords);

  const AffineMap half_turn(IntMatrix::identity(2), {kPi, 0.0});
  const auto y = apply(half_turn, point({kPi, 0.0}));
  CHECK(y.coords[0] == 0.0);
  CHECK(y.coords[1] == 0.0);

  const AffineMap shear(IntMatrix{{1, 1}, {0, 1}});
  const auto z = apply(shear, point({1.0, 2.0}));
  CHECK(z.coords[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(z.coords[1] == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(apply(shear, point({1.0})), Error);
}

TEST_CASE("apply agrees with exact rational evaluation on rational angles") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> entry(-3, 3), num(0, 95);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    IntMatrix a(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = entry(rng);
    // Angles 2 pi * k / 96, exact in turns.
    std::vector<Rational> x_turns(d), b_turns(d);
    std::vector<double> x(d), b(d);
    for (std::size_t i = 0; i < d; ++i) {
      x_turns[i] = Rational(num(rng), 96);
      b_turns[i] = Rational(num(rng), 96);
      x[i] = kTwoPi * x_turns[i].get_d();
      b[i] = kTwoPi * b_turns[i].get_d();
    }
    const auto y = apply(AffineMap(a, b), TorusPoint{x});
    for (std::size_t i = 0; i < d; ++i) {
      Rational exact = b_turns[i];
      for (std::size_t j = 0; j < d; ++j) exact += a(i, j) * x_turns[j];
      const double expected = kTwoPi * frac(exact).get_d();
      CHECK(circle_distance(y.coords[i], expected) < 1e-12);
    }
  }
}

TEST_CASE("orbit examples") {
  const auto id_orbit = orbit(AffineMap(IntMatrix::identity(2)), point({0.5, 0.25}), 5);
  REQUIRE(id_orbit.size() == 6);
  for (const auto& p : id_orbit) CHECK(p.coords == std::vector<double>{0.5, 0.25});

  const auto neg = orbit(AffineMap(IntMatrix{{-1}}), point({1.0}), 2);
  REQUIRE(neg.size() == 3);
  CHECK(neg[0].coords[0] == 1.0);
  CHECK(neg[1].coords[0] == doctest::Approx(kTwoPi - 1.0).epsilon(1e-15));
  CHECK(neg[2].coords[0] == doctest::Approx(1.0).epsilon(1e-14));

  const auto rot = orbit(AffineMap(IntMatrix{{0, -1}, {1, 0}}), point({1.0, 0.0}), 8);
  for (std::size_t n = 1; n < 4; ++n) CHECK(torus_distance(rot[n], rot[0]) > 0.5);
  CHECK(torus_distance(rot[4], rot[0]) < 1e-12);
  CHECK(torus_distance(rot[8], rot[0]) < 1e-12);
}

TEST_CASE("wrap_angle stays in [0, 2 pi)") {
  for (double t : {-1e-300, -kTwoPi, kTwoPi, 3 * kTwoPi - 1e-16, -7.5, 1e6, std::nextafter(kTwoPi, 0.0)}) {
    const double w = wrap_angle(t);
    CHECK(w >= 0.0);
    CHECK(w < kTwoPi);
  }
}

TEST_CASE("frequency_orbit examples") {
  const auto constant = frequency_orbit(IntMatrix::identity(2), ivec({3, -4}), 5);
  for (const auto& t : constant.terms) CHECK(t == ivec({3, -4}));

  const auto shear = frequency_orbit(IntMatrix{{1, 1}, {0, 1}}, ivec({1, 0}), 3);
  REQUIRE(shear.terms.size() == 4);
  CHECK(shear.terms[0] == ivec({1, 0}));
  CHECK(shear.terms[1] == ivec({1, 1}));
  CHECK(shear.terms[2] == ivec({1, 2}));
  CHECK(shear.terms[3] == ivec({1, 3}));

  const auto rot = frequency_orbit(IntMatrix{{0, -1}, {1, 0}}, ivec({1, 0}), 8);
  for (std::size_t n = 1; n < 4; ++n) CHECK(rot.terms[n] != rot.terms[0]);
  CHECK(rot.terms[4] == rot.terms[0]);
  CHECK(rot.terms[8] == rot.terms[0]);
}

TEST_CASE("frequency_orbit term n equals (A^T)^n u") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 4);
    IntMatrix a(d);
    IntVector u(d);
    for (std::size_t i = 0; i < d; ++i) {
      u[i] = entry(rng);
      for (std::size_t j = 0; j < d; ++j) a(i, j) = entry(rng);
    }
    const auto fo = frequency_orbit(a, u, 15);
    for (unsigned long n = 0; n <= 15; ++n) CHECK(fo.terms[n] == mat_vec(mat_pow(a.transpose(), n), u));
  }
}

TEST_CASE("escape_probe examples") {
  const auto constant = frequency_orbit(IntMatrix::identity(2), ivec({2, -1}), 50);
  const auto r0 = escape_probe(constant, Integer(2));
  CHECK_FALSE(r0.escaped);
  CHECK_FALSE(r0.first_n.has_value());

  const auto shear = frequency_orbit(IntMatrix{{1, 1}, {0, 1}}, ivec({1, 0}), 20);
  const auto r1 = escape_probe(shear, Integer(10));
  CHECK(r1.escaped);
  CHECK(r1.first_n == 11);

  // Cat map terms are (F(2n+1), F(2n)); find the first F(2n+1) > 1000 independently.
  std::int64_t f_prev = 0, f = 1;
  std::size_t expected = 0;
  for (std::size_t n = 0;; ++n) {
    if (f > 1000) {
      expected = n;
      break;
    }
    for (int step = 0; step < 2; ++step) {
      const std::int64_t next = f + f_prev;
      f_prev = f;
      f = next;
    }
  }
  const auto cat = frequency_orbit(IntMatrix{{2, 1}, {1, 1}}, ivec({1, 0}), 30);
  const auto r2 = escape_probe(cat, Integer(1000));
  CHECK(r2.escaped);
  CHECK(r2.first_n == expected);
  CHECK(expected == 8);
}

TEST_CASE("tame generators have finitely many powers and eventually periodic frequency orbits") {
  for (int a0 = -2; a0 <= 2; ++a0)
    for (int a1 = -2; a1 <= 2; ++a1)
      for (int a2 = -2; a2 <= 2; ++a2)
        for (int a3 = -2; a3 <= 2; ++a3) {
          const IntMatrix a{{a0, a1}, {a2, a3}};
          const auto c = decide_semicascade(a);
          if (c.verdict == Verdict::Untame) {
            // Some basis frequency escapes.
            bool any = false;
            for (std::size_t j = 0; j < 2 && !any; ++j) {
              IntVector e(2);
              e[j] = 1;
              any = escape_probe(frequency_orbit(a, e, 200), Integer(150)).escaped;
            }
            CHECK(any);
            continue;
          }
          const auto [p, q] = *c.minimal_pair;
          std::vector<IntMatrix> seen;
          IntMatrix power = IntMatrix::identity(2);
          for (int n = 0; n < 40; ++n) {
            bool known = false;
            for (const auto& s : seen) known = known || s == power;
            if (!known) seen.push_back(power);
            power = mat_mul(power, a);
          }
          CHECK(seen.size() <= q);
          for (const auto& u : {ivec({1, 0}), ivec({0, 1}), ivec({2, -3})}) {
            const auto fo = frequency_orbit(a, u, 40);
            for (std::size_t n = p; n + (q - p) <= 40; ++n) CHECK(fo.terms[n] == fo.terms[n + (q - p)]);
          }
        }
}

TEST_CASE("untame examples have a basis frequency escaping 10^6 within 200 steps") {
  for (const auto& a : {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{3, 1}, {1, 0}}, IntMatrix{{2, 0}, {0, 1}}}) {
    bool any = false;
    for (std::size_t j = 0; j < 2 && !any; ++j) {
      IntVector e(2);
      e[j] = 1;
      any = escape_probe(frequency_orbit(a, e, 200), Integer(1'000'000)).escaped;
    }
    CHECK(any);
  }
}

TEST_CASE("grid average of exponentials is the discrete orthogonality relation") {
  for (std::size_t n : {1UL, 4UL, 7UL, 32UL}) {
    for (long l0 = -70; l0 <= 70; l0 += 3)
      for (long l1 = -9; l1 <= 9; ++l1) {
        const auto avg = grid_average_exponential(ivec({l0, l1}), n);
        const bool aliased = l0 % static_cast<long>(n) == 0 && l1 % static_cast<long>(n) == 0;
        CHECK(std::abs(avg - std::complex<double>(aliased ? 1.0 : 0.0)) < 1e-12);
      }
  }
  const auto big = grid_average_exponential(ivec({64, -96, 32}), 32);
  CHECK(std::abs(big - 1.0) < 1e-12);
  const IntVector huge{Integer("123456789012345678901234567890"), Integer(0)};
  CHECK(std::abs(grid_average_exponential(huge, 32)) < 1e-12);  // ends in ...890, not divisible by 32
}

TEST_CASE("uniform grid and default grid size") {
  const auto g = uniform_grid(2, 4);
  REQUIRE(g.size() == 16);
  CHECK(g[1].coords == std::vector<double>{0.0, kTwoPi / 4});
  CHECK(g[4].coords == std::vector<double>{kTwoPi / 4, 0.0});
  CHECK(default_grid_per_axis(1) == 32);
  CHECK(default_grid_per_axis(3) == 32);
  CHECK(default_grid_per_axis(4) == 13);
  CHECK(default_grid_per_axis(5) == 8);
  CHECK(default_grid_per_axis(15) == 2);
  CHECK(default_grid_per_axis(40) == 2);
}

TEST_CASE("convergence_probe examples") {
  const auto grid = uniform_grid(2, 8);
  const auto all = range(0, 8);

  const auto id = convergence_probe(AffineMap(IntMatrix::identity(2)), all, grid, 1e-9);
  CHECK(id.subsequence == all);
  CHECK(id.max_deviation == 0.0);

  const auto rot = convergence_probe(AffineMap(IntMatrix{{0, -1}, {1, 0}}), all, grid, 1e-9);
  CHECK(rot.subsequence == std::vector<std::uint64_t>{0, 4, 8});
  CHECK(rot.max_deviation == 0.0);

  const auto shear = convergence_probe(AffineMap(IntMatrix{{1, 1}, {0, 1}}), all, grid, 1e-9);
  CHECK(shear.subsequence.size() == 1);

  // An irrational rotation never repeats within tolerance, but does approximately.
  const AffineMap drift(IntMatrix::identity(1), {1.0});
  const auto tight = convergence_probe(drift, range(0, 30), uniform_grid(1, 4), 1e-9);
  CHECK(tight.subsequence.size() == 1);
  const auto loose = convergence_probe(drift, range(0, 30), uniform_grid(1, 4), 0.5);
  CHECK(loose.subsequence.size() >= 2);
  CHECK(loose.max_deviation < 0.5);

  CHECK_THROWS_AS(convergence_probe(drift, std::vector<std::uint64_t>{}, grid, 1e-9), Error);
  CHECK_THROWS_AS(convergence_probe(drift, all, uniform_grid(1, 4), 0.0), Error);
}

TEST_CASE("convergence_probe finds exact repeats for finite-order maps with rational translation") {
  const AffineMap rot_shift(IntMatrix{{0, -1}, {1, 1}}, {kTwoPi / 3, kTwoPi / 4});
  const auto r = convergence_probe(rot_shift, range(0, 50), uniform_grid(2, 32), 1e-9);
  CHECK(r.subsequence.size() >= 8);
  CHECK(r.max_deviation <= 1e-9);
}

TEST_CASE("independence_check examples") {
  IndependenceQuery constant;
  constant.functions = {std::vector<double>(16, 0.0)};
  constant.a = -1.0;
  constant.b = 1.0;
  CHECK_FALSE(independence_check(constant));

  IndependenceQuery empty;
  empty.a = 0.0;
  empty.b = 1.0;
  CHECK(independence_check(empty));

  CHECK(independence_check(rademacher(8, 256)));
  // Too few points to realize every pattern.
  CHECK_FALSE(independence_check(rademacher(8, 128)));

  CHECK_THROWS_AS(independence_check(rademacher(13, 16)), Error);
  IndependenceQuery bad = rademacher(2, 4);
  bad.a = 1.0;
  bad.b = 0.0;
  CHECK_THROWS_AS(independence_check(bad), Error);
}

TEST_CASE("independence_check is monotone under removing functions") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    IndependenceQuery q = trial % 2 ? rademacher(5, 32) : IndependenceQuery{};
    q.a = -0.5;
    q.b = 0.5;
    if (q.functions.empty()) {
      for (int k = 0; k < 5; ++k) {
        std::vector<double> f(40);
        for (auto& x : f) x = val(rng);
        q.functions.push_back(std::move(f));
      }
    }
    if (!independence_check(q)) continue;
    for (std::size_t drop = 0; drop < q.functions.size(); ++drop) {
      IndependenceQuery smaller = q;
      smaller.functions.erase(smaller.functions.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK(independence_check(smaller));
    }
  }
}
