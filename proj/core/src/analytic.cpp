#include "x0n/analytic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace x0n {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Euler-Maclaurin tail coefficients B_{2j}/(2j)!
const double kB2jOver2jFact[] = {
    0,
    1.0 / 12,            // B2/2!
    -1.0 / 720,          // B4/4!
    1.0 / 30240,         // B6/6!
    -1.0 / 1209600,      // B8/8!
    1.0 / 47900160,      // B10/10!
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
};

template <typename T>
T zeta_em(T s) {
  const int M = 32;
  T sum = 0;
  for (int n = 1; n < M; ++n) sum += std::pow(T(n), -s);
  T Md = T(M);
  sum += std::pow(Md, T(1) - s) / (s - T(1));
  sum += std::pow(Md, -s) / T(2);
  // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * M^{-s-2j+1}
  T poch = s;  // rising factorial s (s+1) ... (s + 2j - 2)
  for (int j = 1; j <= 7; ++j) {
    sum += T(kB2jOver2jFact[j]) * poch * std::pow(Md, -s - T(2 * j - 1));
    poch *= (s + T(2 * j - 1)) * (s + T(2 * j));
  }
  return sum;
}

// 15-point Gauss-Legendre nodes/weights on [-1,1]
const double kGLx[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
const double kGLw[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <typename F>
double gl15(const F& f, double a, double b) {
  double m = 0.5 * (a + b), h = 0.5 * (b - a), s = 0;
  for (int i = 0; i < 15; ++i) s += kGLw[i] * f(m + h * kGLx[i]);
  return s * h;
}

template <typename F>
double adaptive_gl(const F& f, double a, double b, double tol, int depth = 0) {
  double whole = gl15(f, a, b);
  double m = 0.5 * (a + b);
  double split = gl15(f, a, m) + gl15(f, m, b);
  if (std::abs(whole - split) <= tol * std::max(1.0, std::abs(split)) || depth > 24)
    return split;
  return adaptive_gl(f, a, m, tol, depth + 1) + adaptive_gl(f, m, b, tol, depth + 1);
}

}  // namespace

double zeta(double s) {
  if (s == 1.0) throw std::domain_error("zeta: pole at s=1");
  return zeta_em<double>(s);
}

cplx zeta(cplx s) {
  if (s == cplx(1.0)) throw std::domain_error("zeta: pole at s=1");
  return zeta_em<cplx>(s);
}

double zeta_star(double s) {
  return std::pow(M_PI, -0.5 * s) * std::tgamma(0.5 * s) * zeta(s);
}

double zeta_N(const Level& lv, double s) {
  double z = zeta(s);
  for (long p : lv.primes) z *= 1.0 - std::pow(static_cast<double>(p), -s);
  return z;
}

cplx zeta_N(const Level& lv, cplx s) {
  cplx z = zeta(s);
  for (long p : lv.primes) z *= cplx(1.0) - std::pow(cplx(static_cast<double>(p)), -s);
  return z;
}

cplx gamma_cplx(cplx z) {
  static const double g[9] = {0.99999999999980993,     676.5203681218851,
                              -1259.1392167224028,     771.32342877765313,
                              -176.61502916214059,     12.507343278686905,
                              -0.13857109526572012,    9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5)
    return M_PI / (std::sin(M_PI * z) * gamma_cplx(cplx(1.0) - z));
  z -= 1.0;
  cplx x = g[0];
  for (int i = 1; i < 9; ++i) x += g[i] / (z + cplx(static_cast<double>(i)));
  cplx t = z + 7.5;
  return std::sqrt(2 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double beta_s_quadrature(double r, double s) {
  if (r <= 0) throw std::domain_error("beta_s: r must be positive");
  // int_1^inf e^{-rt} t^{-s} dt = e^{-r} int_0^inf e^{-ru} (1+u)^{-s} du
  double U = (50.0 + std::abs(s) * 10.0) / r;
  auto f = [r, s](double u) { return std::exp(-r * u) * std::pow(1.0 + u, -s); };
  double v = adaptive_gl(f, 0.0, U, 1e-12);
  return std::exp(-r) * v;
}

double beta_s(double r, double s) {
  if (r <= 0) throw std::domain_error("beta_s: r must be positive");
  if (s == 1.0) return -std::expint(-r);  // E_1(r)
  if (s == 1.5) {
    double sr = std::sqrt(r);
    return 2.0 * std::exp(-r) - 2.0 * std::sqrt(M_PI) * sr * std::erfc(sr);
  }
  return beta_s_quadrature(r, s);
}

double whittaker_w(double y, double a, double b) {
  if (y <= 0 || b <= 0) throw std::domain_error("whittaker_w: need y > 0, b > 0");
  // substitute h = u^{1/b}: Gamma(b)^{-1}(1/b) int_0^inf (1+u^{1/b})^{a-1} e^{-y u^{1/b}} du
  double U = std::pow((50.0 + 10.0 * std::abs(a)) / y, b);
  auto f = [y, a, b](double u) {
    double h = std::pow(u, 1.0 / b);
    return std::pow(1.0 + h, a - 1.0) * std::exp(-y * h);
  };
  double v = adaptive_gl(f, 0.0, U, 1e-12) / b;
  return v / std::tgamma(b);
}

cplx whittaker_t(long n, double y, double alpha, double beta) {
  if (y <= 0) throw std::domain_error("whittaker_t: y must be positive");
  cplx phase = std::exp(cplx(0, M_PI_2 * (beta - alpha)));  // i^{beta-alpha}
  double p = std::pow(2 * M_PI, alpha + beta);
  if (n > 0) {
    double nn = static_cast<double>(n);
    return phase * p * std::pow(nn, alpha + beta - 1) * std::exp(-kTwoPi * nn * y) *
           whittaker_w(4 * M_PI * nn * y, alpha, beta) / std::tgamma(alpha);
  }
  if (n < 0) {
    double nn = static_cast<double>(-n);
    return phase * p * std::pow(nn, alpha + beta - 1) * std::exp(-kTwoPi * nn * y) *
           whittaker_w(4 * M_PI * nn * y, beta, alpha) / std::tgamma(beta);
  }
  return phase * p * std::tgamma(alpha + beta - 1) /
         (std::tgamma(alpha) * std::tgamma(beta)) *
         std::pow(4 * M_PI * y, 1 - alpha - beta);
}

cplx gamma_upper(cplx a, double x) {
  if (x <= 0) throw std::domain_error("gamma_upper: x must be positive");
  if (a.real() < 0.5) {
    // climb to Re a >= 0.5 and step back down with
    // Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a
    int k = static_cast<int>(std::ceil(0.5 - a.real()));
    cplx g = gamma_upper(a + static_cast<double>(k), x);
    for (int j = k - 1; j >= 0; --j) {
      cplx aj = a + static_cast<double>(j);
      if (std::abs(aj) < 1e-14) {
        g = -std::expint(-x);  // Gamma(0, x) = E_1(x)
      } else {
        g = (g - std::exp(aj * std::log(x) - x)) / aj;
      }
    }
    return g;
  }
  if (x < a.real() + 1.0) {
    // series for the lower gamma, then subtract
    cplx ap = a, sum = cplx(1.0) / a, del = sum;
    for (int i = 0; i < 400; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    cplx lower = sum * std::exp(-x + a * std::log(x));
    return gamma_cplx(a) - lower;
  }
  // Lentz continued fraction
  const double tiny = 1e-300;
  cplx b = x + 1.0 - a, c = 1.0 / tiny, d = cplx(1.0) / b, h = d;
  for (int i = 1; i < 400; ++i) {
    cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = cplx(1.0) / d;
    cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

namespace {

// Sum'_{lambda in Z w1 + Z w2} |lambda|^{-2s} for w1 in H, w2 > 0 real, via the
// incomplete-gamma representation (exponentially convergent in the cutoff X):
//   pi^{-s} Gamma(s) Z(s) = sum' (pi|l|^2)^{-s} G(s, pi|l|^2)
//                         + V^{-1} sum'_{dual} (pi|m|^2)^{s-1} G(1-s, pi|m|^2)
//                         - 1/s + 1/(V(s-1))
cplx epstein_lattice(cplx w1, double w2, cplx s, double X) {
  double V = w2 * w1.imag();
  cplx acc = -cplx(1.0) / s + cplx(1.0) / (V * (s - cplx(1.0)));
  // primal sum
  long mmax = static_cast<long>(std::sqrt(X) / w1.imag()) + 1;
  for (long m = -mmax; m <= mmax; ++m) {
    double re0 = m * w1.real(), im = m * w1.imag();
    double rad2 = X - im * im;
    if (rad2 < 0) continue;
    double rad = std::sqrt(rad2);
    long nlo = static_cast<long>(std::ceil((-re0 - rad) / w2));
    long nhi = static_cast<long>(std::floor((-re0 + rad) / w2));
    for (long n = nlo; n <= nhi; ++n) {
      if (m == 0 && n == 0) continue;
      double q = (re0 + n * w2) * (re0 + n * w2) + im * im;
      if (q > X) continue;
      double piq = M_PI * q;
      acc += std::exp(-s * std::log(piq)) * gamma_upper(s, piq);
    }
  }
  // dual lattice basis: columns of B^{-T} for B = [[x1, w2],[y1, 0]];
  // mu = m d1 + n d2 = (n/w2, (m - n x1/w2)/y1)
  double x1 = w1.real(), y1 = w1.imag();
  double d1x = 0.0, d1y = 1.0 / y1;
  double d2x = 1.0 / w2, d2y = -x1 / (w2 * y1);
  cplx one_minus_s = cplx(1.0) - s;
  double sX = std::sqrt(X);
  long nmax2 = static_cast<long>(sX * w2) + 2;
  long mmax2 = static_cast<long>(sX * (y1 + std::abs(x1))) + 2;
  for (long m = -mmax2; m <= mmax2; ++m) {
    for (long n = -nmax2; n <= nmax2; ++n) {
      if (m == 0 && n == 0) continue;
      double px = m * d1x + n * d2x, py = m * d1y + n * d2y;
      double q = px * px + py * py;
      if (q > X) continue;
      double piq = M_PI * q;
      acc += std::exp((s - cplx(1.0)) * std::log(piq)) * gamma_upper(one_minus_s, piq) / V;
    }
  }
  return acc * std::exp(s * std::log(M_PI)) / gamma_cplx(s);
}

}  // namespace

EisensteinValue eisenstein_direct(const Level& lv, cplx z, cplx s, double tol) {
  double y = z.imag();
  if (y <= 0) throw std::invalid_argument("eisenstein_direct: Im z must be positive");
  if (s.real() <= 1.0)
    throw std::invalid_argument("eisenstein_direct: Re s must exceed 1 on this path");
  long N = lv.N;
  double Nd = static_cast<double>(N);
  double X = std::log(1.0 / std::max(tol * 1e-3, 1e-300)) / M_PI + 2.0 * std::abs(s);
  cplx sum = 0;
  for (long e : lv.divisors()) {
    int mu = moebius(e);
    if (mu == 0) continue;
    sum += static_cast<double>(mu) *
           epstein_lattice(Nd * z, static_cast<double>(e), s, X);
  }
  EisensteinValue out;
  cplx zn2s = zeta_N(lv, 2.0 * s);
  out.E = std::pow(y, s) * sum / (2.0 * zn2s);
  out.curly = std::pow(Nd, 2.0 * s) * std::pow(M_PI, -s) * gamma_cplx(s) *
              std::pow(y, s) * 0.5 * sum;
  out.tail = tol * 0.1;
  return out;
}

EisensteinValue eisenstein_direct_truncated(const Level& lv, cplx z, cplx s, double tol) {
  double y = z.imag(), x = z.real();
  if (y <= 0) throw std::invalid_argument("eisenstein_direct: Im z must be positive");
  double sigma = s.real();
  if (sigma <= 1.0)
    throw std::invalid_argument("eisenstein_direct: Re s must exceed 1 on this path");
  long N = lv.N;
  double Nd = static_cast<double>(N);
  // |N^{2s} pi^{-s} Gamma(s)| y^sigma / 2 * (2 pi / (N y)) R^{2-2sigma} / (2 sigma - 2) <= tol
  double pref = std::abs(std::pow(Nd, 2.0 * s) * std::pow(M_PI, -s) * gamma_cplx(s)) *
                std::pow(y, sigma) * 0.5;
  double Rtail = pref * kTwoPi / (Nd * y) / (2 * sigma - 2);
  double R = std::pow(std::max(tol, 1e-300) / std::max(Rtail, 1e-300), 1.0 / (2.0 - 2.0 * sigma));
  R = std::max(R, 4.0 * Nd * (std::abs(z) + 1.0));
  R = std::min(R, 4000.0);  // honest tail is reported either way
  cplx sum = 0;
  long mmax = static_cast<long>(R / (Nd * y)) + 1;
  for (long m = -mmax; m <= mmax; ++m) {
    double my2 = static_cast<double>(m) * Nd * y;
    if (my2 * my2 > R * R) continue;
    double half = std::sqrt(R * R - my2 * my2);
    double cx = static_cast<double>(m) * Nd * x;
    long nlo = static_cast<long>(std::floor(-cx - half));
    long nhi = static_cast<long>(std::ceil(-cx + half));
    for (long n = nlo; n <= nhi; ++n) {
      if (m == 0 && n == 0) continue;
      if (std::gcd(std::labs(n), N) != 1) continue;
      double re = cx + static_cast<double>(n);
      double q2 = re * re + my2 * my2;
      if (q2 > R * R) continue;
      sum += std::exp(-s * std::log(q2));
    }
  }
  EisensteinValue out;
  cplx zn2s = zeta_N(lv, 2.0 * s);
  out.E = std::pow(y, s) * sum / (2.0 * zn2s);
  out.curly = std::pow(Nd, 2.0 * s) * std::pow(M_PI, -s) * gamma_cplx(s) *
              std::pow(y, s) * 0.5 * sum;
  out.tail = Rtail * std::pow(R, 2.0 - 2.0 * sigma);
  return out;
}

namespace {

// a_k(z, s) = y^s pi^{-s} Gamma(s) sum_{n m = |k|} t_{sgn(k) n}(m y, s, s) C_N(n)
cplx fourier_ak(const Level& lv, double y, long k, double s) {
  long ak = std::labs(k);
  cplx acc = 0;
  for (long n : divisors(ak)) {
    long m = ak / n;
    long cn = ramanujan_sum(lv.N, n);
    if (cn == 0) continue;
    cplx t;
    if (s == 2.0) {
      double Y = static_cast<double>(m) * y;
      double nd = static_cast<double>(n);
      t = std::exp(-kTwoPi * nd * Y) * (M_PI * M_PI * nd / (Y * Y) + M_PI / (2 * Y * Y * Y));
    } else {
      t = whittaker_t(k > 0 ? n : -n, static_cast<double>(m) * y, s, s);
    }
    acc += t * static_cast<double>(cn);
  }
  return std::pow(y, s) * std::pow(M_PI, -s) * std::tgamma(s) * acc;
}

}  // namespace

cplx eisenstein_fourier(const Level& lv, cplx z, double s, double tol) {
  double y = z.imag(), x = z.real();
  if (y <= 0) throw std::invalid_argument("eisenstein_fourier: Im z must be positive");
  if (s <= 1.0) throw std::invalid_argument("eisenstein_fourier: need s > 1");
  double Nd = static_cast<double>(lv.N);
  double phiN = static_cast<double>(lv.phi());
  // constant term
  double a0 = std::pow(Nd, 2 * s) * std::pow(M_PI, -s) * std::tgamma(s) * zeta_N(lv, 2 * s) *
                  std::pow(y, s) +
              phiN * std::pow(y, s) * std::pow(M_PI, -s) * std::pow(2 * M_PI, 2 * s) *
                  std::tgamma(2 * s - 1) * std::pow(4 * M_PI * y, 1 - 2 * s) *
                  zeta(2 * s - 1) / std::tgamma(s);
  cplx total = a0;
  long kmax = static_cast<long>(std::ceil(std::max(8.0, 40.0 / (kTwoPi * y))));
  for (long k = 1; k <= 4 * kmax; ++k) {
    cplx ak = fourier_ak(lv, y, k, s);
    cplx e = std::exp(cplx(0, kTwoPi * static_cast<double>(k) * x));
    cplx inc = ak * e + ak * std::conj(e);  // a_{-k} = a_k for real s
    total += inc;
    if (k > kmax && std::abs(inc) < 0.25 * tol * std::max(1.0, std::abs(total))) break;
  }
  return total;
}

KlfPair kronecker_limit_pair(const Level& lv, cplx z, const PowerSeries& dn) {
  double y = z.imag(), x = z.real();
  if (y <= 0) throw std::invalid_argument("kronecker_limit_pair: Im z must be positive");
  double phiN = static_cast<double>(lv.phi());
  double lhs = phiN * (-0.5 * std::log(y) +
                       (M_PI / 6.0) * y * static_cast<double>(lv.psl2_index()));
  for (long k = 1;; ++k) {
    // a_k(z,1) = e^{-2 pi k y} / k * sum_{n|k} n C_N(n)
    long sn = 0;
    for (long n : divisors(k)) sn += n * ramanujan_sum(lv.N, n);
    double ak = std::exp(-kTwoPi * static_cast<double>(k) * y) / static_cast<double>(k) *
                static_cast<double>(sn);
    double inc = ak * 2.0 * std::cos(kTwoPi * static_cast<double>(k) * x);
    lhs += inc;
    if (std::exp(-kTwoPi * static_cast<double>(k) * y) * static_cast<double>(k + 2) *
            static_cast<double>(lv.N) <
        1e-17)
      break;
    if (k > 4000) break;
  }
  double rhs = -0.5 * phiN * std::log(y) - log_abs_at(dn, z) / 12.0;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

ScatteringLaurent scattering_laurent(const Level& lv) {
  double r = static_cast<double>(lv.psl2_index());
  double c1 = 3.0 / (M_PI * r);
  double acc = SpecialValues::log_4pi() - 1.0 + 12.0 * SpecialValues::zeta_prime_minus1;
  for (long p : lv.primes) {
    double pd = static_cast<double>(p);
    acc += pd * pd / (pd * pd - 1.0) * std::log(pd);
  }
  return {c1, -6.0 / (M_PI * r) * acc};
}

double phi_scattering(const Level& lv, double s) {
  double phiN = static_cast<double>(lv.phi());
  return phiN * std::sqrt(M_PI) * zeta(2 * s - 1) * std::tgamma(s - 0.5) /
         (std::pow(static_cast<double>(lv.N), 2 * s) * zeta_N(lv, 2 * s));
}

}  // namespace x0n
