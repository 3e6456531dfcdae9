#pragma once

#include <complex>

#include "x0n/numtheory.hpp"
#include "x0n/qexp.hpp"

namespace x0n {

using cplx = std::complex<double>;

// Fixed high-accuracy constants used across the toolkit.
struct SpecialValues {
  static constexpr double euler_gamma = 0.57721566490153286060651209008240243104;
  static constexpr double zeta_prime_minus1 = -0.16542114370045092921391966024278;
  static double log_4pi() { return std::log(4.0 * M_PI); }
  static double C_pet() { return 0.5 * (log_4pi() + euler_gamma); }   // Petersson shift
  static double f0() { return euler_gamma - log_4pi(); }              // f(0)
  static double gamma1_0() { return -euler_gamma; }                   // gamma_1(0)
};

// Riemann zeta by Euler-Maclaurin; valid away from s = 1 for Re s > -3 or so.
double zeta(double s);
cplx zeta(cplx s);
double zeta_star(double s);  // pi^{-s/2} Gamma(s/2) zeta(s)

// zeta^{(N)}(s) = zeta(s) prod_{p|N} (1 - p^{-s})
double zeta_N(const Level& lv, double s);
cplx zeta_N(const Level& lv, cplx s);

cplx gamma_cplx(cplx z);  // Lanczos

// beta_s(r) = int_1^inf e^{-rt} t^{-s} dt, r > 0.  Closed forms at s = 1, 3/2;
// adaptive quadrature otherwise.  Relative accuracy ~1e-11.
double beta_s(double r, double s);
double beta_s_quadrature(double r, double s);  // always the quadrature route

// Whittaker-type integral W(y, a, b) = Gamma(b)^{-1} int_0^inf (1+h)^{a-1} h^{b-1} e^{-yh} dh
double whittaker_w(double y, double a, double b);

// The Fourier building block t_n(y, alpha, beta) with its three cases.
cplx whittaker_t(long n, double y, double alpha, double beta);

// Upper incomplete gamma Gamma(a, x) for complex a and x > 0
cplx gamma_upper(cplx a, double x);

struct EisensteinValue {
  cplx E;        // E(N, z, s)
  cplx curly;    // normalized  N^{2s} pi^{-s} Gamma(s) zeta^{(N)}(2s) E(N,z,s)
  double tail;   // absolute truncation bound for curly
};

// Lattice-sum evaluation, Re s > 1 required.  The Mobius-sieved Epstein sums
// are evaluated through their incomplete-gamma representation (exponentially
// convergent), so `tol` is reached at every s in the half plane.
EisensteinValue eisenstein_direct(const Level& lv, cplx z, cplx s, double tol = 1e-9);

// Plain hard-cutoff version of the same sum (tail ~ R^{2-2 Re s}); useful as an
// independent cross-check when Re s is comfortably above 1.
EisensteinValue eisenstein_direct_truncated(const Level& lv, cplx z, cplx s,
                                            double tol = 1e-9);

// Fourier-expansion evaluation for real s > 1 (closed forms at s = 2).
cplx eisenstein_fourier(const Level& lv, cplx z, double s, double tol = 1e-12);

struct KlfPair {
  double lhs;   // lim_{s->1} (curly E - phi(N) zeta*(2s-1)) from the Fourier side
  double rhs;   // -(1/12) log(y^{6 phi(N)} |Delta_N(z)|)
  double diff;
};
KlfPair kronecker_limit_pair(const Level& lv, cplx z, const PowerSeries& delta_n_series);

struct ScatteringLaurent {
  double c_minus1;  // 3 / (pi r)
  double c_0;       // scattering constant
};
ScatteringLaurent scattering_laurent(const Level& lv);

// Constant-term function Phi(s) = phi(N) sqrt(pi) zeta(2s-1) Gamma(s-1/2) / (N^{2s} zeta^{(N)}(2s))
double phi_scattering(const Level& lv, double s);

}  // namespace x0n
