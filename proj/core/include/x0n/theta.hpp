#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "x0n/lattice.hpp"
#include "x0n/numtheory.hpp"

namespace x0n {

using cplx = std::complex<double>;

// (w, w(z)) = -(sqrt N / y)(w3 z zbar - w1 (z + zbar) - w2)
double pairing_w_wz(const LatticeVector& w, cplx z);
// R(w,z) = (w,w(z))^2 / 2 - (w,w),  (w,w) = 2 Q(w)
double r_invariant(const LatticeVector& w, cplx z);
// positive definite majorant (w,w)_z = (w,w(z))^2 - (w,w)
double majorant(const LatticeVector& w, cplx z);
// scalar part of the Kudla-Millson kernel: ((w,w(z))^2 - 1/2pi) e^{-2 pi R(w,z)}
double km_phi0(const LatticeVector& w, cplx z);

// theta_mu(tau, z) for every mu in Z/2N at once (coefficient of mu(z)),
// including the w = 0 term -1/(2 pi) in the mu = 0 slot.
std::vector<cplx> theta_components(const Level& lv, cplx tau, cplx z, double eps = 1e-12);

struct GreenEval {
  double value;
  double tail_bound;
};

// Kudla Green function Xi(n, mu_r, v)(z), truncated lattice sum with a tail
// bound from beta_1(T) <= e^{-T}/T.  Throws std::domain_error if z sits on the
// divisor (R < 1e-12 for some w).
GreenEval kudla_green(const Level& lv, long r, const Rat& n, double v, cplx z,
                      double tol = 1e-8);

struct GreenConstant {
  double value;
  bool square_case;  // false when D < 0 or D not a square (value 0 by convention)
};
// g(n, mu, v): sqrt(N)/(4 pi sqrt v) beta_{3/2}(-4 pi n v) (doubled when 2mu in L);
// sqrt(N)/(2 pi sqrt v) at n = 0, mu = 0; zero at n = 0, mu != 0.
GreenConstant green_cusp_constant(const Level& lv, long r, const Rat& n, double v);

struct CuspResidualRow {
  double y;
  double xi;
  double residual;
};
struct CuspAsymptotics {
  std::vector<CuspResidualRow> rows;
  double limit;          // expected limit of the residual sequence
  bool monotone_trend;   // |residual - limit| nonincreasing along the grid
};
// Residuals at the cusp P_infty (width 1, q = e(z)):
//   D > 0 square:  Xi + g log|q|^2                          -> 0
//   D = 0, mu = 0: Xi + g log|q|^2 + 2 log(-log|q|^2)       -> -2(log(sqrt N/4 pi sqrt v) - f(0)/2)
//   D not a square: Xi itself                               -> 0 exponentially
CuspAsymptotics cusp_asymptotic_residual(const Level& lv, long r, const Rat& n, double v,
                                         const std::vector<double>& ygrid,
                                         double tol = 1e-9);

struct VVEisenstein {
  std::vector<cplx> EL;     // E_L(tau, s): sum over all coprime (c,d) lifts
  std::vector<cplx> curly;  // -(s/4) pi^{-s-1} Gamma(s) zeta^{(N)}(2s) N^{(1+3s)/2} E_L
  double tail_estimate;
};
// Re s > 1. `bound` truncates at c^2 + d^2 <= bound^2 (classes taken mod +-1
// and doubled, which is exact).
VVEisenstein vv_eisenstein(const Level& lv, cplx tau, double s, double bound,
                           int threads = 0);

struct QuadratureStage {
  int nx, ny;       // panel counts of the tensor rule
  double max_diff;  // sup-norm change from the previous stage
};

struct ThetaLiftResult {
  std::vector<cplx> I;  // I_mu(tau, f) over mu in Z/2N
  double err_estimate;
  std::vector<QuadratureStage> trace;
};

std::string quadrature_trace_csv(const ThetaLiftResult& r);
// I(tau, f) = int_{Gamma_0(N)\H} f(z) Theta_L(tau, z), computed as a sum of
// integrals over coset translates of the standard fundamental domain,
// truncated at Im z = ytop (Gaussian decay of the kernel).
ThetaLiftResult theta_lift(const Level& lv, const std::function<cplx(cplx)>& f, cplx tau,
                           double tol = 1e-5, double ytop = 5.0, int threads = 0);

// Number of worker threads: explicit argument, else X0N_THREADS, else 1.
int resolve_threads(int requested);

}  // namespace x0n
