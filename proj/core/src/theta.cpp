#include "x0n/theta.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "x0n/analytic.hpp"

namespace x0n {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double disc_of(const Level& lv, long r, const Rat& n) {
  Rat Dr = Rat(-4 * lv.N) * n;
  if (!is_integer(Dr)) throw std::invalid_argument("4Nn must be an integer");
  long D = rat_num(Dr).convert_to<long>();
  long m = (D - r * r) % (4 * lv.N);
  if (m < 0) m += 4 * lv.N;
  if (m != 0) throw std::invalid_argument("D = -4Nn must be congruent to r^2 mod 4N");
  return static_cast<double>(D);
}

}  // namespace

double pairing_w_wz(const LatticeVector& w, cplx z) {
  double y = z.imag(), x = z.real();
  double w1 = (2.0 * w.N * w.b + w.r) / (2.0 * w.N);
  double w2 = -static_cast<double>(w.a) / w.N;
  double w3 = static_cast<double>(w.c);
  return -(std::sqrt(static_cast<double>(w.N)) / y) *
         (w3 * (x * x + y * y) - w1 * 2.0 * x - w2);
}

double r_invariant(const LatticeVector& w, cplx z) {
  double p = pairing_w_wz(w, z);
  return 0.5 * p * p - 2.0 * to_double(w.norm());
}

double majorant(const LatticeVector& w, cplx z) {
  double p = pairing_w_wz(w, z);
  return p * p - 2.0 * to_double(w.norm());
}

double km_phi0(const LatticeVector& w, cplx z) {
  double p = pairing_w_wz(w, z);
  return (p * p - 1.0 / kTwoPi) * std::exp(-kTwoPi * r_invariant(w, z));
}

namespace {

// Enumerate lattice vectors with majorant (w,w)_z <= M2, all cosets at once.
// The majorant diagonalizes as
//   (N/y^2)(u - y^2 c)^2 + 2N(w1 - x c)^2 + N y^2 c^2,   u = c|z|^2 - 2 x w1 + a/N.
// The callback receives (w, pairing (w,w(z)), majorant) in plain doubles.
template <typename F>
void for_each_majorant(const Level& lv, cplx z, double M2, const F& fn) {
  if (M2 <= 0) return;
  long N = lv.N;
  double Nd = static_cast<double>(N);
  double x = z.real(), y = z.imag(), z2 = x * x + y * y;
  double sqN_over_y = std::sqrt(Nd) / y;
  double M = std::sqrt(M2);
  long cmax = static_cast<long>(std::floor(M / (std::sqrt(Nd) * y))) + 1;
  for (long c = -cmax; c <= cmax; ++c) {
    double part_c = Nd * y * y * c * c;
    if (part_c > M2 + 1e-12) continue;
    double w1rad = std::sqrt(std::max(0.0, (M2 - part_c) / (2 * Nd)));
    double w1c = x * static_cast<double>(c);
    long Tlo = static_cast<long>(std::ceil(2 * Nd * (w1c - w1rad) - 1e-9));
    long Thi = static_cast<long>(std::floor(2 * Nd * (w1c + w1rad) + 1e-9));
    for (long T = Tlo; T <= Thi; ++T) {  // T = 2N w1 = 2Nb + r
      double w1 = static_cast<double>(T) / (2 * Nd);
      double part_b = part_c + 2 * Nd * (w1 - w1c) * (w1 - w1c);
      if (part_b > M2 + 1e-12) continue;
      double urad = y * std::sqrt(std::max(0.0, (M2 - part_b) / Nd));
      double ucen = y * y * static_cast<double>(c);
      // u = c|z|^2 - 2 x w1 + a/N  =>  a = N(u - c|z|^2 + 2 x w1)
      double abase = -Nd * z2 * c + 2 * Nd * x * w1;
      long alo = static_cast<long>(std::ceil(Nd * (ucen - urad) + abase - 1e-9));
      long ahi = static_cast<long>(std::floor(Nd * (ucen + urad) + abase + 1e-9));
      for (long a = alo; a <= ahi; ++a) {
        long rr = T % (2 * N);
        if (rr < 0) rr += 2 * N;
        LatticeVector w{N, rr, a, (T - rr) / (2 * N), c};
        double pw = -sqN_over_y *
                    (c * z2 - 2.0 * x * w1 + static_cast<double>(a) / Nd);
        double qw = -static_cast<double>(w.disc()) / (4.0 * Nd);  // Q(w)
        double maj = pw * pw - 2.0 * qw;
        if (maj <= M2) fn(w, pw, maj);
      }
    }
  }
}

}  // namespace

std::vector<cplx> theta_components(const Level& lv, cplx tau, cplx z, double eps) {
  double v = tau.imag(), u = tau.real();
  if (v <= 0 || z.imag() <= 0)
    throw std::invalid_argument("theta_components: Im tau, Im z must be positive");
  double M2 = (std::log(1.0 / std::max(eps, 1e-300)) + 12.0) / (M_PI * v);
  std::vector<cplx> comp(static_cast<size_t>(2 * lv.N), 0.0);
  double Nd4 = 4.0 * static_cast<double>(lv.N);
  for_each_majorant(lv, z, M2, [&](const LatticeVector& w, double pw, double maj) {
    double q = -static_cast<double>(w.disc()) / Nd4;
    double amp = (v * pw * pw - 1.0 / kTwoPi) * std::exp(-M_PI * v * maj);
    cplx phase = std::exp(cplx(0, kTwoPi * q * u));
    comp[static_cast<size_t>(w.r)] += amp * phase;
  });
  return comp;
}

GreenEval kudla_green(const Level& lv, long r, const Rat& n, double v, cplx z,
                      double tol) {
  if (v <= 0) throw std::invalid_argument("kudla_green: v must be positive");
  double D = disc_of(lv, r, n);
  double nd = to_double(n);
  long N = lv.N;
  long rr = r % (2 * N);
  if (rr < 0) rr += 2 * N;
  // include everything with 2 pi v R <= Tcut
  double Tcut = std::log(1e4 / std::max(tol, 1e-300));
  double Rmax = Tcut / (kTwoPi * v);
  double M2 = 2 * Rmax + 2 * nd;
  double value = 0;
  long outer = 0;
  for_each_majorant(lv, z, M2, [&](const LatticeVector& w, double /*pw*/, double maj) {
    if (w.r != rr) return;
    if (w.disc() != static_cast<long>(D)) return;
    if (w.a == 0 && w.c == 0 && w.Bval() == 0) return;  // w = 0
    double R = 0.5 * (maj - 2 * nd);
    if (R < 1e-12)
      throw std::domain_error("kudla_green: z lies on the divisor Z(n, mu) at w = (a,b,c) = (" +
                              std::to_string(w.a) + "," + std::to_string(w.b) + "," +
                              std::to_string(w.c) + ")");
    value += beta_s(kTwoPi * v * R, 1.0);
    if (maj > 0.8 * M2) ++outer;
  });
  double tail = (static_cast<double>(outer) * 4.0 + 8.0) * std::exp(-Tcut) / Tcut;
  return {value, tail};
}

GreenConstant green_cusp_constant(const Level& lv, long r, const Rat& n, double v) {
  if (v <= 0) throw std::invalid_argument("green_cusp_constant: v must be positive");
  double D = disc_of(lv, r, n);
  double sqN = std::sqrt(static_cast<double>(lv.N));
  if (D < 0) return {0.0, false};
  double sD = std::floor(std::sqrt(D) + 0.5);
  if (sD * sD != D) return {0.0, false};
  long rr = r % (2 * lv.N);
  if (rr < 0) rr += 2 * lv.N;
  if (n == 0) {
    if (rr != 0) return {0.0, true};
    return {sqN / (kTwoPi * std::sqrt(v)), true};
  }
  bool two_mu_in_L = (rr % lv.N) == 0;
  double g = sqN / (4 * M_PI * std::sqrt(v)) * beta_s(-4 * M_PI * to_double(n) * v, 1.5);
  return {two_mu_in_L ? 2 * g : g, true};
}

CuspAsymptotics cusp_asymptotic_residual(const Level& lv, long r, const Rat& n, double v,
                                         const std::vector<double>& ygrid, double tol) {
  if (ygrid.empty() || ygrid.front() < 2.0)
    throw std::invalid_argument("cusp_asymptotic_residual: y grid must start at >= 2");
  for (size_t i = 1; i < ygrid.size(); ++i)
    if (ygrid[i] <= ygrid[i - 1])
      throw std::invalid_argument("cusp_asymptotic_residual: y grid must increase");
  double D = disc_of(lv, r, n);
  auto g = green_cusp_constant(lv, r, n, v);
  CuspAsymptotics out;
  bool logcase = (D == 0 && (r % (2 * lv.N)) == 0);
  if (logcase) {
    out.limit = -2.0 * (std::log(std::sqrt(static_cast<double>(lv.N)) /
                                 (4 * M_PI * std::sqrt(v))) -
                        0.5 * SpecialValues::f0());
  } else {
    out.limit = 0.0;
  }
  for (double y : ygrid) {
    auto xi = kudla_green(lv, r, n, v, cplx(0.0, y), tol);
    double logq2 = -2.0 * kTwoPi * y;  // log|q|^2 at the width-1 cusp P_infty
    double res = xi.value;
    if (g.square_case && D >= 0) res += g.value * logq2;
    if (logcase) res += 2.0 * std::log(-logq2);
    out.rows.push_back({y, xi.value, res});
  }
  out.monotone_trend = true;
  for (size_t i = 1; i < out.rows.size(); ++i)
    if (std::abs(out.rows[i].residual - out.limit) >
        std::abs(out.rows[i - 1].residual - out.limit) + 10 * tol)
      out.monotone_trend = false;
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("X0N_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

namespace {

// deterministic chunked parallel map-reduce over [0, n): chunk results are
// combined in index order regardless of the thread count
template <typename Chunk>
void run_chunks(long nchunks, int threads, const Chunk& work) {
  if (threads <= 1) {
    for (long i = 0; i < nchunks; ++i) work(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        long i = next.fetch_add(1);
        if (i >= nchunks) return;
        work(i);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

VVEisenstein vv_eisenstein(const Level& lv, cplx tau, double s, double bound,
                           int threads) {
  if (s <= 1.0) throw std::invalid_argument("vv_eisenstein: Re s must exceed 1");
  double v = tau.imag(), x = tau.real();
  if (v <= 0) throw std::invalid_argument("vv_eisenstein: Im tau must be positive");
  long dim = 2 * lv.N;
  WeilRep rho(lv.N);
  double B2 = bound * bound;
  double Bin2 = B2 / 2.0;  // inner radius for the empirical tail estimate
  long cmax = static_cast<long>(std::floor(bound / v));

  std::vector<cplx> e0(static_cast<size_t>(dim), 0.0);
  e0[0] = 1.0;
  double vs = std::pow(v, 0.5 * (s - 1.0));

  const long chunk = 8;
  long nchunks = cmax / chunk + 1;
  std::vector<std::vector<cplx>> acc(static_cast<size_t>(nchunks)),
      acc_in(static_cast<size_t>(nchunks));
  int nt = resolve_threads(threads);

  run_chunks(nchunks, nt, [&](long ci) {
    std::vector<cplx> local(static_cast<size_t>(dim), 0.0),
        local_in(static_cast<size_t>(dim), 0.0);
    for (long c = ci * chunk + 1; c <= std::min((ci + 1) * chunk, cmax); ++c) {
      double cv = static_cast<double>(c) * v;
      if (cv * cv > B2) continue;
      double half = std::sqrt(B2 - cv * cv);
      double cx = static_cast<double>(c) * x;
      long dlo = static_cast<long>(std::ceil(-cx - half));
      long dhi = static_cast<long>(std::floor(-cx + half));
      for (long d = dlo; d <= dhi; ++d) {
        if (std::gcd(c, std::labs(d)) != 1) continue;
        double re = cx + static_cast<double>(d);
        double q2 = re * re + cv * cv;
        if (q2 > B2) continue;
        // complete (c,d) to [[aa,bb],[c,d]] in SL2(Z): aa*d - bb*c = 1
        long old_r = d, rr2 = c, old_s = 1, ss = 0, old_t = 0, tt = 1;
        while (rr2 != 0) {
          long qq = old_r / rr2;
          long tmp = old_r - qq * rr2;
          old_r = rr2;
          rr2 = tmp;
          tmp = old_s - qq * ss;
          old_s = ss;
          ss = tmp;
          tmp = old_t - qq * tt;
          old_t = tt;
          tt = tmp;
        }
        if (old_r == -1) {
          old_s = -old_s;
          old_t = -old_t;
        }
        Mat2 gamma{old_s, -old_t, c, d};
        MetaWord word = gamma_to_word(gamma);
        cplx phi = word_phi(word, tau);
        std::vector<cplx> col = rho.apply_inverse(word, e0);
        cplx pref = std::pow(phi, -3.0) * std::pow(v / q2, 0.5 * (s - 1.0));
        for (long j = 0; j < dim; ++j) {
          cplx t = pref * col[static_cast<size_t>(j)];
          local[static_cast<size_t>(j)] += t;
          if (q2 <= Bin2) local_in[static_cast<size_t>(j)] += t;
        }
      }
    }
    acc[static_cast<size_t>(ci)] = std::move(local);
    acc_in[static_cast<size_t>(ci)] = std::move(local_in);
  });

  std::vector<cplx> EL(static_cast<size_t>(dim), 0.0), ELin(static_cast<size_t>(dim), 0.0);
  EL[0] = vs;
  ELin[0] = vs;
  for (long ci = 0; ci < nchunks; ++ci) {
    if (acc[static_cast<size_t>(ci)].empty()) continue;
    for (long j = 0; j < dim; ++j) {
      EL[static_cast<size_t>(j)] += acc[static_cast<size_t>(ci)][static_cast<size_t>(j)];
      ELin[static_cast<size_t>(j)] += acc_in[static_cast<size_t>(ci)][static_cast<size_t>(j)];
    }
  }
  // classes were taken mod +-1; opposite lifts contribute equally on e_0
  double tail = 0;
  for (long j = 0; j < dim; ++j) {
    EL[static_cast<size_t>(j)] *= 2.0;
    ELin[static_cast<size_t>(j)] *= 2.0;
    tail = std::max(tail, std::abs(EL[static_cast<size_t>(j)] - ELin[static_cast<size_t>(j)]));
  }

  VVEisenstein out;
  out.EL = EL;
  out.tail_estimate = tail;
  double norm = -(s / 4.0) * std::pow(M_PI, -s - 1.0) * std::tgamma(s) * zeta_N(lv, 2 * s) *
                std::pow(static_cast<double>(lv.N), 0.5 * (1.0 + 3.0 * s));
  out.curly.resize(static_cast<size_t>(dim));
  for (long j = 0; j < dim; ++j) out.curly[static_cast<size_t>(j)] = norm * EL[static_cast<size_t>(j)];
  return out;
}

ThetaLiftResult theta_lift(const Level& lv, const std::function<cplx(cplx)>& f, cplx tau,
                           double tol, double ytop, int threads) {
  long dim = 2 * lv.N;
  auto cosets = gamma0_coset_reps(lv);
  // 15-point Gauss-Legendre nodes on [-1,1]
  static const double gx[15] = {
      -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
      -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
      -0.2011940939974345, 0.0,                 0.2011940939974345,
      0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
      0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
  static const double gw[15] = {
      0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
      0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
      0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
      0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
      0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

  auto integrand = [&](double X, double Y, std::vector<cplx>& out) {
    cplx z(X, Y);
    std::fill(out.begin(), out.end(), cplx(0));
    for (const Mat2& g : cosets) {
      cplx gz = (cplx(static_cast<double>(g.a)) * z + static_cast<double>(g.b)) /
                (cplx(static_cast<double>(g.c)) * z + static_cast<double>(g.d));
      auto th = theta_components(lv, tau, gz, 1e-13);
      cplx fv = f(gz);
      for (long j = 0; j < dim; ++j) out[static_cast<size_t>(j)] += fv * th[static_cast<size_t>(j)];
    }
    double y2 = Y * Y;
    for (auto& c : out) c /= y2;
  };

  auto integrate = [&](int nx, int ny) {
    std::vector<std::vector<cplx>> per_panel(static_cast<size_t>(nx));
    int nt = resolve_threads(threads);
    run_chunks(nx, nt, [&](long px) {
      std::vector<cplx> acc(static_cast<size_t>(dim), 0.0), val(static_cast<size_t>(dim));
      double xa = -0.5 + static_cast<double>(px) / nx;
      double xb = xa + 1.0 / nx;
      for (int i = 0; i < 15; ++i) {
        double X = 0.5 * (xa + xb) + 0.5 * (xb - xa) * gx[i];
        double wX = 0.5 * (xb - xa) * gw[i];
        double ymin = std::sqrt(std::max(1e-12, 1.0 - X * X));
        // geometric y panels from the arc to ytop
        double ratio = std::pow(ytop / ymin, 1.0 / ny);
        double ya = ymin;
        for (int p = 0; p < ny; ++p) {
          double yb = ya * ratio;
          for (int k = 0; k < 15; ++k) {
            double Y = 0.5 * (ya + yb) + 0.5 * (yb - ya) * gx[k];
            double wY = 0.5 * (yb - ya) * gw[k];
            integrand(X, Y, val);
            for (long j = 0; j < dim; ++j)
              acc[static_cast<size_t>(j)] += wX * wY * val[static_cast<size_t>(j)];
          }
          ya = yb;
        }
      }
      per_panel[static_cast<size_t>(px)] = std::move(acc);
    });
    std::vector<cplx> total(static_cast<size_t>(dim), 0.0);
    for (auto& pp : per_panel)
      for (long j = 0; j < dim; ++j) total[static_cast<size_t>(j)] += pp[static_cast<size_t>(j)];
    return total;
  };

  ThetaLiftResult out;
  auto lo = integrate(4, 5);
  out.trace.push_back({4, 5, 0.0});
  auto hi = integrate(6, 8);
  double err = 0;
  for (long j = 0; j < dim; ++j)
    err = std::max(err, std::abs(hi[static_cast<size_t>(j)] - lo[static_cast<size_t>(j)]));
  out.trace.push_back({6, 8, err});
  if (err > tol) {
    auto hi2 = integrate(9, 12);
    err = 0;
    for (long j = 0; j < dim; ++j)
      err = std::max(err, std::abs(hi2[static_cast<size_t>(j)] - hi[static_cast<size_t>(j)]));
    hi = std::move(hi2);
    out.trace.push_back({9, 12, err});
    if (err > tol) {
      std::string msg = "theta_lift: quadrature did not reach tolerance; refinement trace:";
      for (const auto& st : out.trace)
        msg += " (" + std::to_string(st.nx) + "x" + std::to_string(st.ny) + " panels -> " +
               std::to_string(st.max_diff) + ")";
      throw PrecisionError(msg);
    }
  }
  out.I = std::move(hi);
  out.err_estimate = err;
  return out;
}

std::string quadrature_trace_csv(const ThetaLiftResult& r) {
  std::string out = "stage,nx_panels,ny_panels,max_diff\n";
  for (size_t i = 0; i < r.trace.size(); ++i)
    out += std::to_string(i) + "," + std::to_string(r.trace[i].nx) + "," +
           std::to_string(r.trace[i].ny) + "," + std::to_string(r.trace[i].max_diff) +
           "\n";
  return out;
}

}  // namespace x0n
