#include "x0n/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace x0n {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::array<long, 4> conj_mat(const std::array<long, 4>& M, const Mat2& g) {
  // g M g^{-1} for det g = 1
  Mat2 gi = g.inv_unimodular();
  long m0 = g.a * M[0] + g.b * M[2], m1 = g.a * M[1] + g.b * M[3];
  long m2 = g.c * M[0] + g.d * M[2], m3 = g.c * M[1] + g.d * M[3];
  return {m0 * gi.a + m1 * gi.c, m0 * gi.b + m1 * gi.d, m2 * gi.a + m3 * gi.c,
          m2 * gi.b + m3 * gi.d};
}

long egcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::labs(a);
  }
  long x1, y1;
  long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long mod2N(long v, long N) {
  long m = v % (2 * N);
  return m < 0 ? m + 2 * N : m;
}

}  // namespace

LatticeVector conjugate(const LatticeVector& w, const Mat2& g) {
  if (g.det() != 1) throw std::invalid_argument("conjugate: det must be 1");
  auto M = conj_mat(w.mat2N(), g);
  LatticeVector out;
  out.N = w.N;
  out.r = w.r;
  long B = M[0];
  if ((B - w.r) % (2 * w.N) != 0 || M[1] % 2 != 0 || M[2] % (2 * w.N) != 0)
    throw std::logic_error("conjugate: image left the lattice coset");
  out.b = (B - w.r) / (2 * w.N);
  out.a = -M[1] / 2;
  out.c = M[2] / (2 * w.N);
  return out;
}

std::vector<LatticeVector> enumerate_vectors(const Level& lv, long r, const Rat& n,
                                             long bound) {
  if (bound <= 0) throw std::invalid_argument("enumerate_vectors: bound must be positive");
  Rat Dr = Rat(-4 * lv.N) * n;
  if (!is_integer(Dr))
    throw std::invalid_argument("enumerate_vectors: 4Nn must be an integer");
  long D = rat_num(Dr).convert_to<long>();
  if (mod2N(D - r * r, 2 * lv.N) % (4 * lv.N) != 0)
    throw std::invalid_argument(
        "enumerate_vectors: D = -4Nn must be congruent to r^2 mod 4N");
  std::vector<LatticeVector> out;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b)
      for (long c = -bound; c <= bound; ++c) {
        LatticeVector w{lv.N, r, a, b, c};
        if (w.disc() == D) out.push_back(w);
      }
  return out;
}

long cusp_class(long p, long q, long N) {
  if (p == 0 && q == 0) throw std::invalid_argument("cusp_class: 0/0");
  long g = std::gcd(std::labs(p), std::labs(q));
  if (g == 0) g = std::max(std::labs(p), std::labs(q));
  q = std::labs(q) / g;
  return q == 0 ? N : std::gcd(q, N);
}

namespace {

// --- positive definite reduction on M = 2Nw (disc D < 0, A = M[2]/2 > 0) ----

struct Reduced {
  std::array<long, 4> M;
  Mat2 g;  // M_reduced = g M g^{-1}
};

long form_A(const std::array<long, 4>& M) { return M[2] / 2; }
long form_B(const std::array<long, 4>& M) { return M[0]; }
long form_C(const std::array<long, 4>& M) { return -M[1] / 2; }

Reduced reduce_posdef(std::array<long, 4> M) {
  const Mat2 S{0, -1, 1, 0};
  Mat2 g{1, 0, 0, 1};
  if (form_A(M) <= 0) throw std::logic_error("reduce_posdef: needs A > 0");
  for (int guard = 0; guard < 256; ++guard) {
    long A = form_A(M), B = form_B(M);
    // translate so -A < B <= A
    long k = -static_cast<long>(std::floor((static_cast<double>(B) / (2.0 * A)) + 0.5));
    while (B + 2 * A * k > A) --k;
    while (B + 2 * A * k <= -A) ++k;
    if (k != 0) {
      Mat2 Tk{1, k, 0, 1};
      M = conj_mat(M, Tk);
      g = Tk * g;
    }
    long C = form_C(M);
    A = form_A(M);
    B = form_B(M);
    if (A > C || (A == C && B < 0)) {
      M = conj_mat(M, S);
      g = S * g;
      continue;
    }
    if (B < 0 && B == -A) {  // normalize boundary B = -A -> B = A
      Mat2 T1{1, 1, 0, 1};
      M = conj_mat(M, T1);
      g = T1 * g;
    }
    return {M, g};
  }
  throw std::logic_error("reduce_posdef: did not terminate");
}

// units u with u M u^{-1} = M: with M1 = M/content the primitive part and D1
// its discriminant, u = (xI + y M1)/2 over x^2 + |D1| y^2 = 4.  (Units of an
// imprimitive form are those of its primitive part.)
std::vector<Mat2> automorphs(const std::array<long, 4>& M) {
  long g = std::gcd(std::gcd(std::labs(M[0]), std::labs(M[1]) / 2), std::labs(M[2]) / 2);
  if (g == 0) g = 1;
  std::array<long, 4> M1{M[0] / g, M[1] / g, M[2] / g, M[3] / g};
  long D1 = -(M1[0] * M1[3] - M1[1] * M1[2]);  // disc of the primitive part
  long absD = -D1;
  std::vector<Mat2> us;
  for (long y = -1; y <= 1; ++y) {
    long rem = 4 - absD * y * y;
    if (rem < 0) continue;
    long x = static_cast<long>(std::lround(std::sqrt(static_cast<double>(rem))));
    if (x * x != rem) continue;
    for (long sx : {x, -x}) {
      if ((sx + y * M1[0]) % 2 != 0) continue;
      Mat2 u{(sx + y * M1[0]) / 2, y * M1[1] / 2, y * M1[2] / 2, (sx + y * M1[3]) / 2};
      if (u.det() == 1) {
        bool dup = false;
        for (auto& v : us) dup |= (v == u);
        if (!dup) us.push_back(u);
      }
      if (x == 0) break;
    }
  }
  return us;
}

bool in_gamma0(const Mat2& g, long N) { return g.c % N == 0 && g.det() == 1; }

}  // namespace

ReducedForm reduce_positive_definite(const LatticeVector& w) {
  if (w.disc() >= 0 || w.N * w.c <= 0)
    throw std::invalid_argument("reduce_positive_definite: needs disc < 0 and c > 0");
  auto red = reduce_posdef(w.mat2N());
  return {form_A(red.M), form_B(red.M), form_C(red.M), red.g};
}

std::vector<HeegnerClass> heegner_classes(const Level& lv, long r, long D) {
  if (D >= 0) throw std::invalid_argument("heegner_classes: D must be negative");
  long N = lv.N;
  r = mod2N(r, N);
  // every Gamma_0(N)-class meets {g_j M0 g_j^{-1}} for a reduced seed M0 and a
  // right-coset representative g_j
  std::vector<Mat2> gs = gamma0_coset_reps(lv);
  std::vector<HeegnerClass> out;
  long Amax = static_cast<long>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
  for (long A = 1; A <= Amax; ++A) {
    if (4 * A * A > A * A - D) break;  // A^2 > (B^2 - D)/4 >= AC forces C < A
    for (long B = -A + 1; B <= A; ++B) {
      if (((B * B - D) % (4 * A)) != 0) continue;
      long C = (B * B - D) / (4 * A);
      if (C < A) continue;
      if (A == C && B < 0) continue;
      std::array<long, 4> M0{B, -2 * C, 2 * A, -B};
      auto units = automorphs(M0);
      // candidate conjugates meeting the lattice/coset conditions
      std::vector<size_t> valid;
      std::vector<std::array<long, 4>> Ms;
      for (size_t j = 0; j < gs.size(); ++j) {
        auto Mj = conj_mat(M0, gs[j]);
        if (Mj[2] % (2 * N) != 0) continue;
        if (mod2N(Mj[0] - r, N) != 0) continue;
        valid.push_back(j);
        Ms.push_back(Mj);
      }
      // j1 ~ j2 under Gamma_0(N) iff g_{j2} u g_{j1}^{-1} lies in Gamma_0(N)
      std::vector<bool> used(valid.size(), false);
      for (size_t i = 0; i < valid.size(); ++i) {
        if (used[i]) continue;
        const Mat2& g1 = gs[valid[i]];
        long stab = 0;
        for (const Mat2& u : units)
          if (in_gamma0(g1 * u * g1.inv_unimodular(), N)) ++stab;
        stab /= 2;  // modulo +-1
        for (size_t k = i + 1; k < valid.size(); ++k) {
          if (used[k]) continue;
          const Mat2& g2 = gs[valid[k]];
          for (const Mat2& u : units) {
            if (in_gamma0(g2 * u * g1.inv_unimodular(), N)) {
              used[k] = true;
              break;
            }
          }
        }
        LatticeVector rep{N, r, -Ms[i][1] / 2, (Ms[i][0] - r) / (2 * N), Ms[i][2] / (2 * N)};
        out.push_back({rep, stab});
      }
    }
  }
  return out;
}

Rat heegner_count_oriented(const Level& lv, long r, long D) {
  Rat total(0);
  for (const auto& cls : heegner_classes(lv, r, D)) total += Rat(1, cls.stab_order);
  return total;
}

std::string vectors_csv(const std::vector<LatticeVector>& vs) {
  std::string out = "a,b_numerator,c,D\n";
  for (const auto& w : vs)
    out += std::to_string(w.a) + "," + std::to_string(w.Bval()) + "," +
           std::to_string(w.c) + "," + std::to_string(w.disc()) + "\n";
  return out;
}

std::string classes_csv(const std::vector<HeegnerClass>& cs) {
  std::string out = "a,b_numerator,c,D,aut_order,class_representative\n";
  for (const auto& cls : cs) {
    const auto& w = cls.rep;
    out += std::to_string(w.a) + "," + std::to_string(w.Bval()) + "," +
           std::to_string(w.c) + "," + std::to_string(w.disc()) + "," +
           std::to_string(2 * cls.stab_order) + ",\"(" + std::to_string(w.a) + "," +
           std::to_string(w.b) + "," + std::to_string(w.c) + ")\"\n";
  }
  return out;
}

Rat heegner_degree(const Level& lv, long r, const Rat& n) {
  if (n <= 0) throw std::invalid_argument("heegner_degree: n must be positive");
  Rat Dr = Rat(-4 * lv.N) * n;
  if (!is_integer(Dr)) throw std::invalid_argument("heegner_degree: 4Nn must be integral");
  long D = rat_num(Dr).convert_to<long>();
  long rr = mod2N(r, lv.N);
  if (mod2N(D - rr * rr, 2 * lv.N) % (4 * lv.N) != 0)
    throw std::invalid_argument("heegner_degree: D not congruent to r^2 mod 4N");
  long rneg = mod2N(-rr, lv.N);
  return heegner_count_oriented(lv, rr, D) + heegner_count_oriented(lv, rneg, D);
}

long atkin_lehner_coset(const Level& lv, long Q, long r) {
  long N = lv.N;
  if (Q < 1 || N % Q != 0 || std::gcd(Q, N / Q) != 1)
    throw std::invalid_argument("atkin_lehner_coset: Q must exactly divide N");
  long M = N / Q;
  for (long rp = 0; rp < 2 * N; ++rp) {
    if ((rp + r) % (2 * Q) == 0 && (rp - r) % (2 * M) == 0) return rp;
  }
  throw std::logic_error("atkin_lehner_coset: CRT failed");
}

namespace {

// Gamma_0(N)-equivalence of the upper-triangular vectors w(a,b) and w(-a,b'):
// a conjugating matrix must have c0 = N m with a | c0 b, a | c0 b',
// and c0 | (c0 b/a)(c0 b'/a) - 1.  Its c0 divides a, so the search is finite.
bool merge_upper(long N, long a, long b, long b2) {
  long A = std::labs(a);
  for (long m = 1; m * N <= A; ++m) {
    for (long c0 : {m * N, -m * N}) {
      if ((c0 * b) % a != 0 || (c0 * b2) % a != 0) continue;
      long d = c0 * b / a, al = c0 * b2 / a;
      if ((al * d - 1) % c0 == 0) return true;
    }
  }
  return false;
}

}  // namespace

AlphaCount alpha_count(const Level& lv, long r, const Rat& n, long M) {
  long N = lv.N;
  if (M < 1 || N % M != 0) throw std::invalid_argument("alpha_count: M must divide N");
  Rat Dr = Rat(-4 * N) * n;
  if (!is_integer(Dr)) throw std::invalid_argument("alpha_count: 4Nn must be integral");
  long D = rat_num(Dr).convert_to<long>();
  long sD = static_cast<long>(std::lround(std::sqrt(static_cast<double>(D))));
  if (D <= 0 || sD * sD != D)
    throw std::invalid_argument("alpha_count: D = -4Nn must be a positive square");
  long rho = atkin_lehner_coset(lv, N / M, mod2N(r, N));

  std::vector<long> avals;
  for (long s : {sD, -sD})
    if (mod2N(s - rho, N) == 0) avals.push_back(s);

  // classes: (a, b mod |a|), merged across the sign of a when possible
  struct Pair {
    long a, b;
  };
  std::vector<Pair> pairs;
  for (long a : avals)
    for (long b = 0; b < std::labs(a); ++b) pairs.push_back({a, b});
  std::vector<bool> dead(pairs.size(), false);
  long brute = 0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (dead[i]) continue;
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      if (dead[j] || pairs[j].a != -pairs[i].a) continue;
      if (merge_upper(N, pairs[i].a, pairs[i].b, pairs[j].b)) dead[j] = true;
    }
    long delta = 1;  // the line l_infty itself
    if (cusp_class(-pairs[i].b, pairs[i].a, N) == N) delta += 1;
    brute += delta;
  }
  long closed = sD * static_cast<long>(avals.size());
  if (brute != closed)
    throw std::logic_error("alpha_count: brute force disagrees with closed form");
  return {brute, closed, !avals.empty(), rho};
}

// --- Weil representation -----------------------------------------------------

Mat2 word_matrix(const MetaWord& w) {
  Mat2 m{1, 0, 0, 1};
  const Mat2 S{0, -1, 1, 0};
  for (const auto& L : w) {
    if (L.gen == 'S') {
      m = m * S;
    } else {
      m = m * Mat2{1, L.pow, 0, 1};
    }
  }
  return m;
}

MetaWord gamma_to_word(const Mat2& g) {
  if (g.det() != 1) throw std::invalid_argument("gamma_to_word: det must be 1");
  MetaWord w;
  Mat2 m = g;
  for (int guard = 0; guard < 256; ++guard) {
    if (m.c == 0) {
      if (m.a == 1) {
        if (m.b != 0) w.push_back({'T', m.b});
      } else {
        // m = [[-1, b],[0,-1]] = S^2 T^{-b}
        w.push_back({'S', 1});
        w.push_back({'S', 1});
        if (m.b != 0) w.push_back({'T', -m.b});
      }
      if (!(word_matrix(w) == g)) throw std::logic_error("gamma_to_word: decomposition check failed");
      return w;
    }
    long k = static_cast<long>(std::llround(static_cast<double>(m.a) / static_cast<double>(m.c)));
    while (std::labs(m.a - k * m.c) * 2 > std::labs(m.c)) k += (m.a - k * m.c > 0) ? 1 : -1;
    if (k != 0) w.push_back({'T', k});
    w.push_back({'S', 1});
    // m <- S^{-1} T^{-k} m,  S^{-1} = [[0,1],[-1,0]]
    long a = m.a - k * m.c, b = m.b - k * m.d;
    m = Mat2{m.c, m.d, -a, -b};
  }
  throw std::logic_error("gamma_to_word: did not terminate");
}

std::complex<double> word_phi(const MetaWord& w, std::complex<double> tau) {
  std::complex<double> phi = 1.0;
  Mat2 h{1, 0, 0, 1};
  for (size_t i = w.size(); i-- > 0;) {
    std::complex<double> htau =
        (std::complex<double>(static_cast<double>(h.a)) * tau + static_cast<double>(h.b)) /
        (std::complex<double>(static_cast<double>(h.c)) * tau + static_cast<double>(h.d));
    if (w[i].gen == 'S') {
      phi *= std::sqrt(htau);
      h = Mat2{0, -1, 1, 0} * h;
    } else {
      h = Mat2{1, w[i].pow, 0, 1} * h;
    }
  }
  return phi;
}

WeilRep::WeilRep(long N) : N_(N) {
  if (N < 1) throw std::invalid_argument("WeilRep: N must be positive");
  long n = 2 * N_;
  S_.assign(n, std::vector<cplx_t>(n));
  S_inv_.assign(n, std::vector<cplx_t>(n));
  cplx_t pref = std::exp(cplx_t(0, kTwoPi / 8.0)) / std::sqrt(static_cast<double>(n));
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k) {
      // e(-(mu_j, mu_k)) = e(jk/2N)
      cplx_t e = std::exp(cplx_t(0, kTwoPi * static_cast<double>(j * k) / static_cast<double>(n)));
      S_[j][k] = pref * e;
      S_inv_[j][k] = std::conj(pref * e);
    }
}

WeilRep::cplx_t WeilRep::T_diag(long r) const {
  double q = -static_cast<double>(r * r) / (4.0 * static_cast<double>(N_));
  return std::exp(cplx_t(0, kTwoPi * q));
}

WeilRep::cmat WeilRep::element(const MetaWord& w) const {
  long n = dim();
  cmat M(n, std::vector<cplx_t>(n, 0));
  for (long i = 0; i < n; ++i) M[i][i] = 1;
  for (size_t idx = w.size(); idx-- > 0;) {
    const auto& L = w[idx];
    if (L.gen == 'T') {
      for (long r = 0; r < n; ++r) {
        cplx_t f = std::pow(T_diag(r), static_cast<double>(L.pow));
        for (long c = 0; c < n; ++c) M[r][c] *= f;
      }
    } else {
      cmat out(n, std::vector<cplx_t>(n, 0));
      for (long r = 0; r < n; ++r)
        for (long k = 0; k < n; ++k) {
          if (S_[r][k] == cplx_t(0)) continue;
          for (long c = 0; c < n; ++c) out[r][c] += S_[r][k] * M[k][c];
        }
      M.swap(out);
    }
  }
  return M;
}

std::vector<WeilRep::cplx_t> WeilRep::apply_inverse(const MetaWord& w,
                                                    std::vector<cplx_t> v) const {
  long n = dim();
  for (const auto& L : w) {
    if (L.gen == 'T') {
      for (long r = 0; r < n; ++r)
        v[static_cast<size_t>(r)] *= std::pow(std::conj(T_diag(r)), static_cast<double>(L.pow));
    } else {
      std::vector<cplx_t> out(static_cast<size_t>(n), 0);
      for (long r = 0; r < n; ++r) {
        cplx_t acc = 0;
        for (long k = 0; k < n; ++k) acc += S_inv_[r][k] * v[static_cast<size_t>(k)];
        out[static_cast<size_t>(r)] = acc;
      }
      v.swap(out);
    }
  }
  return v;
}

std::vector<Mat2> gamma0_coset_reps(const Level& lv) {
  long N = lv.N;
  if (N == 1) return {Mat2{1, 0, 0, 1}};
  // P^1(Z/N): bottom rows (c:d) up to units
  std::vector<long> units;
  for (long u = 1; u < N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u);
  std::set<std::pair<long, long>> canon;
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      std::pair<long, long> best{N, N};
      for (long u : units)
        best = std::min(best, std::pair<long, long>{(u * c) % N, (u * d) % N});
      canon.insert(best);
    }
  std::vector<Mat2> reps;
  for (auto [c, d] : canon) {
    bool found = false;
    for (long k = 0; k <= 4 * N + 4 && !found; ++k) {
      for (long dd : {d + k * N, d - k * N}) {
        if (c == 0 && dd == 0) continue;
        if (std::gcd(std::labs(c), std::labs(dd)) == 1) {
          long x, y;
          egcd(dd, -c, x, y);  // x*dd + y*(-c) = 1, so det [[x,y],[c,dd]] = 1
          reps.push_back(Mat2{x, y, c, dd});
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("gamma0_coset_reps: lift failed");
  }
  if (static_cast<long>(reps.size()) != lv.psl2_index())
    throw std::logic_error("gamma0_coset_reps: unexpected count");
  return reps;
}

}  // namespace x0n
