#include <doctest.h>

#include <cmath>
#include <numeric>

#include "x0n/numtheory.hpp"

using namespace x0n;

namespace {

// independent Moebius oracle via a smallest-prime-factor sieve
std::vector<int> moebius_sieve(long n) {
  std::vector<long> spf(n + 1, 0);
  std::vector<long> primes;
  for (long i = 2; i <= n; ++i) {
    if (!spf[i]) {
      spf[i] = i;
      primes.push_back(i);
    }
    for (long p : primes) {
      if (p > spf[i] || i * p > n) break;
      spf[i * p] = p;
    }
  }
  std::vector<int> mu(n + 1, 0);
  mu[1] = 1;
  for (long i = 2; i <= n; ++i) {
    long j = i / spf[i];
    mu[i] = (j % spf[i] == 0) ? 0 : -mu[j];
  }
  return mu;
}

// brute-force exponential sum  sum_{(a,N)=1} cos(2 pi a n / N)
long ramanujan_brute(long N, long n) {
  double s = 0;
  for (long a = 1; a <= N; ++a)
    if (std::gcd(a, N) == 1)
      s += std::cos(2 * M_PI * static_cast<double>(a) * static_cast<double>(n) /
                    static_cast<double>(N));
  return std::lround(s);
}

}  // namespace

TEST_CASE("moebius basics and sieve oracle") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  auto mu = moebius_sieve(2000);
  for (long n = 1; n <= 2000; ++n) CHECK(moebius(n) == mu[n]);
}

TEST_CASE("ramanujan sums: special values and exponential-sum oracle") {
  CHECK(ramanujan_sum(6, 1) == 1);   // C_N(1) = mu(N)
  CHECK(ramanujan_sum(6, 2) == -1);
  CHECK(ramanujan_sum(6, 6) == 2);   // C_N(0) = phi(N)
  for (long N = 1; N <= 100; ++N)
    for (long n = -200; n <= 200; ++n)
      CHECK(ramanujan_sum(N, n) == ramanujan_brute(N, n));
}

TEST_CASE("delta exponents a_N(t)") {
  Level l6(6);
  CHECK(delta_exponent(l6, 1) == 1);
  CHECK(delta_exponent(l6, 2) == -2);
  CHECK(delta_exponent(l6, 3) == -3);
  CHECK(delta_exponent(l6, 6) == 6);
  CHECK(delta_exponent(Level(1), 1) == 1);
  CHECK(delta_exponent(Level(2), 2) == 2);
  CHECK_THROWS_AS(delta_exponent(l6, 4), std::invalid_argument);
}

TEST_CASE("a_N(t) solves the triangular divisor system") {
  // sum_{t|r} a_N(t) = (phi(N)/phi(N/r)) mu(N/r) for all r | N
  for (long N = 1; N <= 210; ++N) {
    if (!is_squarefree(N)) continue;
    Level lv(N);
    for (long rr : lv.divisors()) {
      long lhs = 0;
      for (long t : divisors(rr)) lhs += delta_exponent(lv, t);
      long rhs = moebius(N / rr) * (euler_phi(N) / euler_phi(N / rr));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("a_N is multiplicative across exact divisors") {
  Level l30(30);
  for (long Q : {2L, 3L, 5L, 6L, 10L, 15L}) {
    Level lq(Q), lnq(30 / Q);
    for (long t : l30.divisors()) {
      long t1 = std::gcd(t, Q), t2 = t / t1;
      CHECK(delta_exponent(l30, t) == delta_exponent(lq, t1) * delta_exponent(lnq, t2));
    }
  }
}

TEST_CASE("exponent identities at sample levels") {
  auto id6 = exponent_identities(Level(6));
  CHECK(id6.sum_a == 2);
  CHECK(id6.sum_ta == 24);
  CHECK(id6.sum_a_over_t == 0);
  CHECK(id6.ok);
  auto id1 = exponent_identities(Level(1));
  CHECK(id1.sum_a == 1);
  CHECK(id1.sum_ta == 1);
  CHECK(id1.sum_a_over_t == 1);
  CHECK(id1.ok);
  // N phi(N) prod(1+1/p) = 30 * 8 * (3/2)(4/3)(6/5) = 576
  auto id30 = exponent_identities(Level(30));
  CHECK(id30.sum_a == 8);
  CHECK(id30.sum_ta == 576);
  CHECK(id30.sum_a_over_t == 0);
  CHECK(id30.ok);
}

TEST_CASE("level invariants and cusp data") {
  Level l6(6);
  CHECK(l6.psl2_index() == 12);
  CHECK(l6.weight() == 24);
  CHECK(l6.lead_exponent() == 24);
  CHECK_THROWS_AS(Level(12), std::invalid_argument);  // not square free
  for (long M : l6.divisors()) {
    auto c = cusp_data(l6, M);
    CHECK(c.width == Rat(6, M));
    CHECK(c.beta == Rat(1, M));
    CHECK(c.funke == 6);  // kappa/beta = N at every cusp
  }
}
