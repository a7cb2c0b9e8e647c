#include <random>

#include "doctest.h"
#include "renormkit/numbers.hpp"

using namespace renormkit;

TEST_CASE("squarefree decomposition") {
  auto check = [](long long n, long long k, long long d) {
    auto [kk, dd] = squarefree_decompose(BigInt(n));
    CHECK(kk == k);
    CHECK(dd == d);
  };
  check(1, 1, 1);
  check(5, 1, 5);
  check(12, 2, 3);
  check(20, 2, 5);
  check(49, 7, 1);
  check(72, 6, 2);
  check(10007, 1, 10007);
  // Remainder above the cube root: a prime square and a product of two primes.
  check(1000003LL * 1000003LL, 1000003, 1);
  check(4LL * 1000003LL * 999983LL, 2, 1000003LL * 999983LL);
  CHECK_THROWS_AS(squarefree_decompose(BigInt(0)), DomainError);
}

TEST_CASE("surd normal form and arithmetic") {
  QuadSurd g = QuadSurd::from_pqr(3, -1, 2, 5);
  QuadSurd h = QuadSurd::from_pqr(3, 1, 2, 5);
  CHECK(g * h == QuadSurd(1));
  CHECK(g + h == QuadSurd(3));
  CHECK(g.to_string() == "(3 - sqrt(5))/2");
  CHECK(g.to_spec() == "surd:3,-1,2,5");
  // sqrt(20) reduces to 2 sqrt(5).
  QuadSurd r = QuadSurd::from_pqr(1, 1, 2, 20);
  CHECK(r.pqr().q == 2);
  CHECK(r.radicand() == 5);
  // A perfect-square radicand collapses to a rational.
  CHECK(QuadSurd::from_pqr(1, 1, 2, 9) == QuadSurd(Rational(2)));
  CHECK(pow(h, -2) * pow(h, 2) == QuadSurd(1));
  CHECK(pow(h, 2) == QuadSurd(3) * h - QuadSurd(1));
  CHECK_THROWS_AS(QuadSurd::from_pqr(1, 1, 0, 5), DomainError);
  CHECK_THROWS_AS(g + QuadSurd::from_pqr(0, 1, 1, 3), DomainError);
  CHECK_THROWS_AS(g / QuadSurd(0), DomainError);
}

TEST_CASE("surd order agrees with floating comparison on random samples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-50, 50);
  for (int k = 0; k < 2000; ++k) {
    QuadSurd x = QuadSurd::from_pqr(coef(rng), coef(rng), 1 + (coef(rng) + 50) % 7, 5);
    QuadSurd y = QuadSurd::from_pqr(coef(rng), coef(rng), 1 + (coef(rng) + 50) % 7, 5);
    double dx = x.to_double(), dy = y.to_double();
    if (std::abs(dx - dy) < 1e-9) continue;
    CHECK((x < y) == (dx < dy));
    CHECK(x.floor() == BigInt(static_cast<long long>(std::floor(dx))));
  }
}

TEST_CASE("conversion avoids cancellation") {
  // F_40 - F_39 phi is about 1e-8; the 128-bit value must match a 512-bit one.
  QuadSurd phi = QuadSurd::from_pqr(1, 1, 2, 5);
  QuadSurd x = QuadSurd(Rational(102334155)) - QuadSurd(Rational(63245986)) * phi;
  Float128 lo = x.to_float<Float128>();
  BinFloat<512> hi = x.to_float<BinFloat<512>>();
  Float128 rel = abs((Float128(hi) - lo) / lo);
  CHECK(rel < ldexp(Float128(1), -120));
  CHECK(abs(lo) < 1e-7);
}

TEST_CASE("format_sig") {
  CHECK(format_sig(0.1, 17) == "0.10000000000000001");
  CHECK(format_sig(2.5, 17) == "2.5");
  CHECK(format_sig(Float128(1) / 3, 5) == "0.33333");
}
