#include <doctest.h>

#include <cmath>
#include <random>

#include "x0n/analytic.hpp"
#include "x0n/qexp.hpp"

using namespace x0n;

TEST_CASE("beta_s special values and limits") {
  // beta_{3/2}(0+) -> 2
  CHECK(beta_s(1e-9, 1.5) == doctest::Approx(2.0).epsilon(1e-4));
  // beta_1(1) = E_1(1)
  CHECK(beta_s(1.0, 1.0) == doctest::Approx(0.21938393439552).epsilon(1e-10));
  // closed forms against the quadrature route
  for (double r : {0.3, 1.0, 4.0}) {
    CHECK(beta_s(r, 1.0) == doctest::Approx(beta_s_quadrature(r, 1.0)).epsilon(1e-10));
    CHECK(beta_s(r, 1.5) == doctest::Approx(beta_s_quadrature(r, 1.5)).epsilon(1e-10));
  }
  // beta_1(t) + log t -> -gamma, i.e. gamma_1(0) = -gamma
  double t = 1e-7;
  CHECK(beta_s(t, 1.0) + std::log(t) ==
        doctest::Approx(-SpecialValues::euler_gamma).epsilon(1e-6));
  CHECK_THROWS_AS(beta_s(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta_s(0.0, 1.0), std::domain_error);
}

TEST_CASE("d/dr beta_s = -beta_{s-1}") {
  double h = 1e-5;
  for (auto [r, s] : {std::pair{0.8, 1.7}, std::pair{2.0, 2.5}}) {
    double der = (beta_s(r + h, s) - beta_s(r - h, s)) / (2 * h);
    CHECK(der == doctest::Approx(-beta_s(r, s - 1.0)).epsilon(1e-5));
  }
}

TEST_CASE("Whittaker values") {
  CHECK(whittaker_w(3.7, 1.0, 1.0) == doctest::Approx(1.0 / 3.7).epsilon(1e-10));
  // t_0(Y, s, s) against the closed Beta-integral sqrt(pi) Gamma(s-1/2)/Gamma(s) Y^{1-2s}
  double s = 1.3, Y = 0.9;
  double closed = std::sqrt(M_PI) * std::tgamma(s - 0.5) / std::tgamma(s) *
                  std::pow(Y, 1 - 2 * s);
  CHECK(whittaker_t(0, Y, s, s).real() == doctest::Approx(closed).epsilon(1e-10));
  // Poisson-sum oracle: sum_j ((x0+j)^2 + Y^2)^{-s} = sum_n t_n(Y,s,s) e(n x0)
  double x0 = 0.23;
  double lhs = 0;
  long J = 40000;
  for (long j = -J; j <= J; ++j) lhs += std::pow((x0 + j) * (x0 + j) + Y * Y, -s);
  // integral tail correction for |j| > J
  lhs += std::pow(static_cast<double>(J), 1 - 2 * s) / (s - 0.5);
  cplx rhs = 0;
  for (long n = -25; n <= 25; ++n)
    rhs += whittaker_t(n, Y, s, s) * std::exp(cplx(0, 2 * M_PI * n * x0));
  CHECK(std::abs(rhs.imag()) < 1e-10);
  CHECK(rhs.real() == doctest::Approx(lhs).epsilon(1e-7));
  // t_{-n} = t_n at alpha = beta
  CHECK(std::abs(whittaker_t(-3, 1.1, s, s) - whittaker_t(3, 1.1, s, s)) < 1e-14);
}

TEST_CASE("zeta machinery") {
  CHECK(zeta(2.0) == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-14));
  CHECK(zeta(4.0) == doctest::Approx(std::pow(M_PI, 4) / 90).epsilon(1e-14));
  CHECK(zeta(3.0) == doctest::Approx(1.2020569031595942854).epsilon(1e-13));
  // zeta^{(6)}(2) = zeta(2)(1-1/4)(1-1/9) = pi^2 (1/6)(3/4)(8/9)
  CHECK(zeta_N(Level(6), 2.0) ==
        doctest::Approx(M_PI * M_PI * (1.0 / 6) * 0.75 * (8.0 / 9)).epsilon(1e-13));
  CHECK(zeta_star(2.0) == doctest::Approx(M_PI / 6).epsilon(1e-13));
  // Lanczos gamma
  CHECK(std::abs(gamma_cplx(cplx(0.5, 0)) - cplx(std::sqrt(M_PI))) < 1e-13);
  CHECK(std::abs(gamma_cplx(cplx(5.0, 0)) - cplx(24.0)) < 1e-11);
}

TEST_CASE("Eisenstein series: leading coset and two independent routes") {
  Level l1(1);
  // high in the cusp the trivial coset dominates: E = y^s + Phi(s) y^{1-s} + O(e^{-y})
  auto big = eisenstein_direct(l1, cplx(0.0, 40.0), cplx(2.0, 0.0), 1e-10);
  double y = 40.0;
  double expect = y * y + phi_scattering(l1, 2.0) / y;
  CHECK(std::abs(big.E - expect) / std::abs(big.E) < 1e-10);

  // direct lattice sum vs Fourier expansion, 20 random points, rel 1e-7
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.8, 2.2);
  int idx = 0;
  for (double s : {1.5, 2.0, 3.0}) {
    for (int k = 0; k < 7; ++k) {
      if (++idx > 20) break;
      long N = (idx % 2) ? 1 : 6;
      Level lv(N);
      cplx z(ux(rng), uy(rng));
      auto d = eisenstein_direct(lv, z, cplx(s, 0.0), 1e-10);
      cplx f = eisenstein_fourier(lv, z, s);
      CHECK(std::abs(d.curly - f) / std::abs(f) < 1e-7);
    }
  }
  // the hard-cutoff route agrees where its tail converges quickly
  auto tr = eisenstein_direct_truncated(l1, cplx(0.1, 1.3), cplx(3.0, 0.0), 1e-9);
  auto ac = eisenstein_direct(l1, cplx(0.1, 1.3), cplx(3.0, 0.0), 1e-11);
  CHECK(std::abs(tr.curly - ac.curly) < 10 * tr.tail + 1e-9);
  CHECK_THROWS_AS(eisenstein_direct(l1, cplx(0, 1), cplx(0.9, 0.0), 1e-8),
                  std::invalid_argument);
}

TEST_CASE("Kronecker limit pair") {
  Level l1(1);
  auto d1 = delta_n(l1, 120);
  auto p = kronecker_limit_pair(l1, cplx(0.0, 1.0), d1.series);
  CHECK(p.diff < 1e-8);
  Level l6(6);
  auto d6 = delta_n(l6, 200);
  auto p6 = kronecker_limit_pair(l6, cplx(0.3, 1.1), d6.series);
  CHECK(p6.diff < 1e-6);
  // both sides are invariant under z -> z + 1
  auto pa = kronecker_limit_pair(l6, cplx(0.3, 1.1), d6.series);
  auto pb = kronecker_limit_pair(l6, cplx(1.3, 1.1), d6.series);
  CHECK(pa.lhs == doctest::Approx(pb.lhs).epsilon(1e-12));
  CHECK(pa.rhs == doctest::Approx(pb.rhs).epsilon(1e-12));
}

TEST_CASE("scattering Laurent coefficients") {
  auto sc1 = scattering_laurent(Level(1));
  CHECK(sc1.c_minus1 == doctest::Approx(3.0 / M_PI).epsilon(1e-12));
  CHECK(sc1.c_minus1 == doctest::Approx(0.95493).epsilon(1e-4));
  CHECK(sc1.c_0 == doctest::Approx(0.8671).epsilon(1e-3));
  // residue cross-check by two-point Richardson extrapolation of Phi(s)
  for (long N : {1L, 6L}) {
    Level lv(N);
    auto sc = scattering_laurent(lv);
    double h = 2e-4;
    double r1 = h * phi_scattering(lv, 1.0 + h);
    double r2 = (h / 2) * phi_scattering(lv, 1.0 + h / 2);
    double res = 2 * r2 - r1;
    CHECK(std::abs(res - sc.c_minus1) / sc.c_minus1 < 1e-6);
  }
}
