#include <doctest.h>

#include <cmath>

#include "x0n/analytic.hpp"
#include "x0n/arithgeom.hpp"
#include "x0n/lattice.hpp"

using namespace x0n;

namespace {
ArithDivisor single(long N, const Comp& c, const Rat& coef = Rat(1)) {
  ArithDivisor d;
  d.N = N;
  d.add_term(c, SymValue::rational(coef));
  return d;
}
}  // namespace

TEST_CASE("divisors of Delta_N and Delta_N^0") {
  Level l1(1);
  auto d1 = divisor_of_delta_n(l1);
  REQUIRE(d1.coef.size() == 1);
  CHECK(d1.coef.at(Comp::cusp(1)) == SymValue::rational(Rat(1)));  // rk/12 = 1
  Level l2(2);
  auto d2 = divisor_of_delta_n(l2);
  CHECK(d2.coef.at(Comp::cusp(2)) == SymValue::rational(Rat(3)));
  CHECK(d2.coef.at(Comp::vert_zero(2)) == SymValue::rational(Rat(-24)));
  auto z2 = divisor_of_delta_n_zero(l2);
  CHECK(z2.coef.at(Comp::cusp(1)) == SymValue::rational(Rat(3)));
  CHECK(z2.coef.at(Comp::vert_inf(2)) == SymValue::rational(Rat(-18)));
  CHECK(z2.coef.at(Comp::vert_zero(2)) == SymValue::rational(Rat(-6)));
  // vertical part empty iff N = 1
  CHECK(d1.coef.count(Comp::vert_zero(2)) == 0);
}

TEST_CASE("pairing table: encoded entries") {
  Level l5(5);
  auto v = pair(l5, single(5, Comp::vert_inf(5)), single(5, Comp::vert_zero(5)));
  CHECK(v == SymValue::log_p(5, Rat(1, 3)));  // r(p-1)/(12(p+1)) = 6*4/72

  // <X_p^inf, X_p^inf> = -<X_p^inf, X_p^0>
  auto vii = pair(l5, single(5, Comp::vert_inf(5)), single(5, Comp::vert_inf(5)));
  CHECK((vii + v).is_zero());

  // <omega, omega> at N = 1
  Level l1(1);
  auto ww = pair(l1, single(1, Comp::hodge()), single(1, Comp::hodge()));
  CHECK(ww == SymValue::rational(Rat(-1, 24)) + SymValue::zeta_prime(Rat(1)) +
                  SymValue::c_pet(Rat(1, 12)));
  CHECK(ww.numeric(l1) == doctest::Approx(-0.0775781).epsilon(1e-5));

  // distinct cusps never meet
  Level l6(6);
  CHECK(pair(l6, single(6, Comp::cusp(1)), single(6, Comp::cusp(6))).is_zero());

  // undefined pairs error loudly instead of guessing
  CHECK_THROWS_AS(pair(l6, single(6, Comp::cusp(6)), single(6, Comp::cusp(6))),
                  PairingUndefined);
  CHECK_THROWS_AS(pair(l6, single(6, Comp::hodge()), single(6, Comp::cusp(1))),
                  PairingUndefined);
  CHECK_THROWS_AS(
      pair(l1, single(1, Comp::horizontal(Rat(1), 0)), single(1, Comp::hodge())),
      PairingUndefined);
}

TEST_CASE("pairing is symmetric and bilinear on encoded pairs") {
  Level l6(6);
  std::vector<Comp> basis = {Comp::cusp(1), Comp::cusp(6), Comp::vert_inf(2),
                             Comp::vert_zero(3), Comp::hodge(), Comp::const_one(),
                             Comp::log_vn(Rat(2))};
  for (auto& a : basis)
    for (auto& b : basis) {
      SymValue ab, ba;
      bool ok_ab = true, ok_ba = true;
      try {
        ab = pair(l6, single(6, a), single(6, b));
      } catch (const PairingUndefined&) {
        ok_ab = false;
      }
      try {
        ba = pair(l6, single(6, b), single(6, a));
      } catch (const PairingUndefined&) {
        ok_ba = false;
      }
      CHECK(ok_ab == ok_ba);
      if (ok_ab) CHECK(ab == ba);
    }
  // bilinearity: <2a + 3b, c> = 2<a,c> + 3<b,c>
  auto a2 = single(6, Comp::vert_inf(2), Rat(2)) + single(6, Comp::cusp(1), Rat(3));
  auto c = single(6, Comp::vert_zero(2));
  auto lhs = pair(l6, a2, c);
  auto rhs = pair(l6, single(6, Comp::vert_inf(2)), c) * Rat(2) +
             pair(l6, single(6, Comp::cusp(1)), c) * Rat(3);
  CHECK(lhs == rhs);
}

TEST_CASE("principality: <A, X_p^inf + X_p^0> = deg(A) log p") {
  Level l6(6);
  std::vector<Comp> basis = {Comp::cusp(1),      Comp::cusp(2),     Comp::cusp(3),
                             Comp::cusp(6),      Comp::vert_inf(2), Comp::vert_zero(2),
                             Comp::vert_inf(3),  Comp::vert_zero(3), Comp::hodge(),
                             Comp::const_one(),  Comp::log_vn(Rat(1)),
                             Comp::horizontal(Rat(23, 24), 1)};
  for (long p : {2L, 3L}) {
    auto fiber = single(6, Comp::vert_inf(p)) + single(6, Comp::vert_zero(p));
    for (auto& b : basis) {
      auto A = single(6, b);
      CHECK(pair(l6, A, fiber) == deg(l6, A) * SymValue::log_p(p));
    }
  }
}

TEST_CASE("Delta-hat self-intersection identity") {
  // <D_N, D_N> - k^2 <omega, omega> = (k^2 r / 12) sum p^2/(p^2-1) log p
  for (long N : {2L, 6L, 30L}) {
    Level lv(N);
    auto dh = delta_hat(lv);
    auto lhs = pair(lv, dh, dh) -
               pair(lv, single(N, Comp::hodge()), single(N, Comp::hodge())) *
                   Rat(lv.weight() * lv.weight());
    SymValue rhs;
    for (long p : lv.primes)
      rhs = rhs + SymValue::log_p(p, Rat(lv.weight() * lv.weight() * lv.psl2_index(), 12) *
                                         Rat(p * p, p * p - 1));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("assembled arithmetic divisors") {
  Level l1(1);
  // n = 0, mu = 0: naive - 2 omega - sum X_p^0 - a(log v/N)
  auto z0 = assemble_z_hat(l1, 0, Rat(0), Rat(1));
  CHECK(z0.coef.count(Comp::cusp(1)) == 1);
  CHECK(z0.coef.at(Comp::hodge()) == SymValue::rational(Rat(-2)));
  CHECK(z0.coef.count(Comp::log_vn(Rat(1))) == 1);
  // n > 0 branch
  auto zp = assemble_z_hat(l1, 0, Rat(1), Rat(1));
  REQUIRE(zp.coef.size() == 1);
  CHECK(zp.coef.count(Comp::horizontal(Rat(1), 0)) == 1);
  // congruence rejection: D = 1 at N = 2 needs r odd
  CHECK_THROWS_AS(assemble_z_hat(Level(2), 0, Rat(-1, 8), Rat(1)), std::invalid_argument);
  // nonsquare D: zero geometric part
  CHECK(assemble_z_hat(l1, 1, Rat(-5, 4), Rat(1)).coef.empty());
  // n = 0 with mu != 0 never satisfies n == Q(mu) mod 1 for square-free N
  CHECK_THROWS_AS(assemble_z_hat(Level(3), 2, Rat(0), Rat(1)), std::invalid_argument);
}

TEST_CASE("degree series") {
  Level l1(1);
  auto rows = degree_series(l1, Rat(1), Rat(2));
  bool saw_34 = false, saw_0 = false;
  for (auto& row : rows) {
    if (row.n == Rat(3, 4) && row.r == 1) {
      CHECK(row.degree == SymValue::rational(Rat(2, 3)));
      saw_34 = true;
    }
    if (row.n == 0 && row.r == 0) {
      // g(0,0,v) sigma_0(1) - 2 deg omega = g - 1/6
      GTag g{true, Rat(0), 0, Rat(1)};
      CHECK(row.degree == SymValue::g_factor(g) + SymValue::rational(Rat(-1, 6)));
      saw_0 = true;
      CHECK(row.degree.numeric(l1) ==
            doctest::Approx(1.0 / (2 * M_PI) - 1.0 / 6).epsilon(1e-12));
    }
    // v-dependence appears only in square-D rows: negative nonsquare rows are zero
    if (row.n < 0) {
      double D = -4.0 * to_double(row.n);
      double sD = std::floor(std::sqrt(D) + 0.5);
      if (sD * sD != D) CHECK(row.degree.is_zero());
    }
  }
  CHECK(saw_34);
  CHECK(saw_0);
}

TEST_CASE("vertical pairing identity rows") {
  for (long N : {2L, 6L}) {
    Level lv(N);
    for (long p : lv.primes) {
      auto rows = vertical_pairing_identity(lv, p, Rat(1), Rat(2));
      CHECK(!rows.empty());
      for (auto& row : rows) CHECK(row.ok);
    }
  }
  CHECK_THROWS_AS(vertical_pairing_identity(Level(2), 3, Rat(1), Rat(1)),
                  std::invalid_argument);
}
