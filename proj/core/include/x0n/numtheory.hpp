#pragma once

#include <vector>

#include "x0n/rational.hpp"

namespace x0n {

std::vector<long> prime_factors(long n);  // distinct primes, sorted
bool is_squarefree(long n);
int moebius(long n);
long euler_phi(long n);
std::vector<long> divisors(long n);  // sorted

// Ramanujan sum C_N(n) = sum over a in (Z/N)^* of e(an/N), by Kluver's formula
// sum_{d | gcd(N,n)} mu(N/d) d.  C_N(0) = phi(N), C_N(1) = mu(N).
long ramanujan_sum(long N, long n);

// A level N with its cached factorization.  Arithmetic-model levels must be
// square free; set require_squarefree accordingly.
struct Level {
  long N = 1;
  std::vector<long> primes;

  explicit Level(long N_, bool require_squarefree = true);

  long phi() const;                // Euler phi(N)
  long psl2_index() const;         // r = [SL2(Z):Gamma0(N)] = N prod (1+1/p)
  long weight() const;             // k = 12 phi(N)
  long lead_exponent() const;      // N phi(N) prod (1+1/p) = phi(N) * r
  std::vector<long> divisors() const;
};

// a_N(t) = sum_{r|t} mu(t/r) mu(N/r) phi(N)/phi(N/r), for t | N
long delta_exponent(const Level& lv, long t);

struct ExponentIdentities {
  long sum_a;        // = phi(N)
  long sum_ta;       // = N phi(N) prod (1+1/p)
  Rat sum_a_over_t;  // = 0 for N > 1, = 1 for N = 1
  bool ok;           // all three match the closed forms
};
ExponentIdentities exponent_identities(const Level& lv);

// Per-cusp data for P_{1/M}, M | N: width N/M, primitive isotropic scale 1/M,
// Funke constant kappa/beta = N.
struct CuspData {
  long M;
  Rat width;
  Rat beta;
  Rat funke;
};
CuspData cusp_data(const Level& lv, long M);

}  // namespace x0n
