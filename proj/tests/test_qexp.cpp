#include <doctest.h>

#include <cmath>
#include <random>

#include "x0n/analytic.hpp"
#include "x0n/qexp.hpp"

using namespace x0n;

namespace {

// brute-force polynomial oracle: prod_{n=1}^{order-1} (1-q^n)^{e(n)} computed
// by repeated naive multiplication of the expanded binomials
std::vector<Rat> brute_product(const std::function<long(long)>& e, long order) {
  std::vector<Rat> c(static_cast<size_t>(order), Rat(0));
  c[0] = 1;
  for (long n = 1; n < order; ++n) {
    long E = e(n);
    for (long rep = 0; rep < std::labs(E); ++rep) {
      std::vector<Rat> out(static_cast<size_t>(order), Rat(0));
      if (E > 0) {
        // multiply by (1 - q^n)
        for (long k = 0; k < order; ++k) {
          out[k] += c[k];
          if (k + n < order) out[k + n] -= c[k];
        }
      } else {
        // multiply by 1/(1 - q^n) = sum q^{nj}
        for (long k = 0; k < order; ++k)
          for (long j = 0; k + n * j < order; ++j) out[k + n * j] += c[k];
      }
      c.swap(out);
    }
  }
  return c;
}

PowerSeries random_series(std::mt19937& rng, long order) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  std::vector<Rat> c(static_cast<size_t>(order));
  for (auto& x : c) x = Rat(num(rng), den(rng));
  if (c[0] == 0) c[0] = 1;
  return PowerSeries(Rat(num(rng)), Rat(1), std::move(c));
}

}  // namespace

TEST_CASE("product engine matches a brute-force polynomial oracle") {
  auto e24 = [](long) { return 24L; };
  auto d = product_with_exponents(e24, 10, Rat(1));
  auto brute = brute_product(e24, 10);
  for (long j = 0; j < 10; ++j) CHECK(d.coeffs()[j] == brute[j]);
  CHECK(d.coeffs()[0] == 1);
  CHECK(d.coeffs()[1] == -24);
  CHECK(d.coeffs()[2] == 252);
  CHECK(d.coeffs()[3] == -1472);
  CHECK(d.coeffs()[4] == 4830);

  auto mixed = [](long n) { return n % 2 ? -3L : 5L; };
  auto f = product_with_exponents(mixed, 12);
  auto fb = brute_product(mixed, 12);
  for (long j = 0; j < 12; ++j) CHECK(f.coeffs()[j] == fb[j]);

  auto one = product_with_exponents([](long) { return 0L; }, 5);
  CHECK(one.order() == 5);
  CHECK(one.coeffs()[0] == 1);
  for (long j = 1; j < 5; ++j) CHECK(one.coeffs()[j] == 0);
}

TEST_CASE("series ring laws") {
  std::mt19937 rng(1234);
  for (int iter = 0; iter < 20; ++iter) {
    auto f = random_series(rng, 12), g = random_series(rng, 12), h = random_series(rng, 12);
    auto fg = f * g;
    auto gf = g * f;
    CHECK(fg.lead() == gf.lead());
    CHECK(fg.coeffs() == gf.coeffs());
    auto a = (f * g) * h, b = f * (g * h);
    CHECK(a.lead() == b.lead());
    CHECK(a.coeffs() == b.coeffs());
    // f * f^{-1} = 1 to the truncation order
    auto inv = f.inverse();
    auto unit = f * inv;
    CHECK(unit.lead() == 0);
    CHECK(unit.coeffs()[0] == 1);
    for (long j = 1; j < unit.order(); ++j) CHECK(unit.coeffs()[j] == 0);
  }
}

TEST_CASE("delta_N: dual construction, leads and integrality") {
  auto d1 = delta_n(Level(1), 60);
  CHECK(d1.series.lead() == 1);
  CHECK(d1.weight == 12);
  auto d2 = delta_n(Level(2), 120);
  CHECK(d2.series.lead() == 3);  // 2 * 1 * (3/2)
  CHECK(d2.series.integral());
  auto d6 = delta_n(Level(6), 120);
  CHECK(d6.series.lead() == 24);
  CHECK(d6.series.integral());
  // Delta_2 = Delta(z)^{-1} Delta(2z)^2 by hand at low order
  auto single = delta_n_single_product(Level(2), 40);
  auto del = delta_series(44);
  auto del2 = product_with_exponents([](long n) { return n % 2 ? 0L : 24L; }, 44, Rat(2));
  auto byhand = del2 * del2 * del.inverse();
  for (long j = 0; j < 35; ++j) CHECK(single.coeffs()[j] == byhand.coeffs()[j]);
}

TEST_CASE("delta_N^0 and its constant") {
  auto [c1, s1] = delta_n_zero(Level(1), 30);
  CHECK(c1 == 1);
  CHECK(s1.lead() == 1);
  auto dd = delta_series(30);
  for (long j = 0; j < 29; ++j) CHECK(s1.coeffs()[j] == dd.coeffs()[j]);
  auto [c2, s2] = delta_n_zero(Level(2), 30);
  CHECK(c2 == Rat(1, 262144));  // 2^{-18}
  CHECK(s2.lead() == 0);        // nonvanishing away from P_0
  // vanishing order at P_0, read through w_N, is the lead of Delta_N
  CHECK(delta_n(Level(2), 10).series.lead() == 3);
}

TEST_CASE("Atkin-Lehner transforms") {
  Level l6(6);
  auto [cq1, s_q1] = atkin_lehner(l6, 1, 60);
  CHECK(cq1 == 1);
  CHECK(s_q1.lead() == 24);
  auto dn6 = delta_n(l6, 60);
  for (long j = 0; j < 30; ++j) CHECK(s_q1.coeffs()[j] == dn6.series.coeffs()[j]);

  auto [c2, s2] = atkin_lehner(Level(2), 2, 40);
  CHECK(s2.lead() == 0);
  CHECK(c2 == Rat(1, 262144));
  CHECK(ord_p(c2, 2) == -18);
  // Delta_2 | W_2 = 2^{-18} Delta(z)^2 Delta(2z)^{-1}: check a few coefficients
  auto del = delta_series(44);
  auto del2 = product_with_exponents([](long n) { return n % 2 ? 0L : 24L; }, 44, Rat(2));
  auto byhand = del * del * del2.inverse();
  for (long j = 0; j < 30; ++j) CHECK(s2.coeffs()[j] == byhand.coeffs()[j]);

  // vanishing concentrated at P_infty: only Q = 1 has a positive lead
  long total_lead = 0;
  for (long Q : l6.divisors()) {
    auto [cq, sq] = atkin_lehner(l6, Q, 30);
    for (long p : l6.primes)
      if (Q % p != 0) CHECK(ord_p(cq, p) == 0);
    CHECK(sq.lead() == (Q == 1 ? 24 : 0));
    total_lead += rat_num(sq.lead()).convert_to<long>();
  }
  CHECK(total_lead == 24);
  CHECK_THROWS_AS(atkin_lehner(l6, 4, 10), std::invalid_argument);
}

TEST_CASE("evaluation and the renormalized Petersson norm") {
  auto one = PowerSeries::constant(Rat(1), 8);
  auto v = eval_at(one, cplx(0.3, 2.0));
  CHECK(std::abs(v.value - cplx(1.0)) < 1e-15);

  // C = (log 4pi + gamma)/2 = 1.5541200 (to 7 digits)
  CHECK(SpecialValues::C_pet() ==
        doctest::Approx(0.5 * (std::log(4 * M_PI) + 0.57721566490153286)).epsilon(1e-15));
  CHECK(SpecialValues::C_pet() == doctest::Approx(1.55412).epsilon(1e-6));

  // log|Delta(i)| against the eta special value  eta(i) = Gamma(1/4)/(2 pi^{3/4})
  auto del = delta_series(80);
  double log_delta_i = 24.0 * (std::lgamma(0.25) - std::log(2.0) - 0.75 * std::log(M_PI));
  CHECK(log_abs_at(del, cplx(0.0, 1.0)) == doctest::Approx(log_delta_i).epsilon(1e-12));
  double pet = petersson_log_norm(del, 12, cplx(0.0, 1.0));
  double expected =
      log_delta_i + 6.0 * std::log(4 * M_PI * std::exp(-SpecialValues::C_pet()));
  CHECK(pet == doctest::Approx(expected).epsilon(1e-12));

  // too close to the real axis for the available order
  CHECK_THROWS_AS(eval_at(del, cplx(0.0, 0.02)), PrecisionError);
}

TEST_CASE("series dump round trip") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 8; ++iter) {
    auto f = random_series(rng, 9).shifted(Rat(3, 7));
    auto g = PowerSeries::from_json(f.to_json());
    CHECK(f.lead() == g.lead());
    CHECK(f.step() == g.step());
    CHECK(f.coeffs() == g.coeffs());
  }
  auto csv = delta_series(4).to_csv();
  CHECK(csv.find("exponent,numerator,denominator") == 0);
  CHECK(csv.find("2,-24,1") != std::string::npos);
}
