#include "x0n/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace x0n {

std::vector<long> prime_factors(long n) {
  if (n < 1) throw std::invalid_argument("prime_factors: n must be positive");
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

int moebius(long n) {
  if (n < 1) throw std::invalid_argument("moebius: n must be positive");
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

long euler_phi(long n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  long result = n;
  for (long p : prime_factors(n)) result -= result / p;
  return result;
}

std::vector<long> divisors(long n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<long> ds;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

long ramanujan_sum(long N, long n) {
  if (N < 1) throw std::invalid_argument("ramanujan_sum: N must be positive");
  long m = n % N;
  if (m < 0) m += N;
  long t = (m == 0) ? N : std::gcd(N, m);
  long s = 0;
  for (long d : divisors(t)) s += moebius(N / d) * d;
  return s;
}

Level::Level(long N_, bool require_squarefree) : N(N_) {
  if (N < 1) throw std::invalid_argument("Level: N must be positive");
  if (require_squarefree && !is_squarefree(N))
    throw std::invalid_argument("Level: N must be square free");
  primes = prime_factors(N);
}

long Level::phi() const { return euler_phi(N); }

long Level::psl2_index() const {
  long r = N;
  for (long p : primes) r += r / p;  // multiply by (1 + 1/p)
  return r;
}

long Level::weight() const { return 12 * phi(); }

long Level::lead_exponent() const { return phi() * psl2_index(); }

std::vector<long> Level::divisors() const { return x0n::divisors(N); }

long delta_exponent(const Level& lv, long t) {
  if (t < 1 || lv.N % t != 0)
    throw std::invalid_argument("delta_exponent: t must divide N");
  long phiN = lv.phi();
  long a = 0;
  for (long r : divisors(t)) {
    long phiNr = euler_phi(lv.N / r);
    if (phiN % phiNr != 0)
      throw std::logic_error("delta_exponent: phi(N)/phi(N/r) not integral");
    a += moebius(t / r) * moebius(lv.N / r) * (phiN / phiNr);
  }
  return a;
}

ExponentIdentities exponent_identities(const Level& lv) {
  ExponentIdentities out{0, 0, Rat(0), false};
  for (long t : lv.divisors()) {
    long a = delta_exponent(lv, t);
    out.sum_a += a;
    out.sum_ta += t * a;
    out.sum_a_over_t += Rat(a, t);
  }
  Rat expect_third = (lv.N == 1) ? Rat(1) : Rat(0);
  out.ok = out.sum_a == lv.phi() && out.sum_ta == lv.lead_exponent() &&
           out.sum_a_over_t == expect_third;
  return out;
}

CuspData cusp_data(const Level& lv, long M) {
  if (M < 1 || lv.N % M != 0) throw std::invalid_argument("cusp_data: M must divide N");
  CuspData c;
  c.M = M;
  c.width = Rat(lv.N, M);
  c.beta = Rat(1, M);
  c.funke = c.width / c.beta;
  return c;
}

}  // namespace x0n
