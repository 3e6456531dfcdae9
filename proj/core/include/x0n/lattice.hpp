#pragma once

#include <array>
#include <complex>
#include <vector>

#include "x0n/numtheory.hpp"
#include "x0n/rational.hpp"

namespace x0n {

// Integer 2x2 matrices acting on the lattice by conjugation.
struct Mat2 {
  long a, b, c, d;
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  long det() const { return a * d - b * c; }
  Mat2 inv_unimodular() const { return {d, -b, -c, a}; }  // det must be 1
  bool operator==(const Mat2& o) const = default;
};

// w = [[b + r/2N, -a/N], [c, -(b + r/2N)]] in the coset mu_r of L^#/L.
// B = 2Nb + r, disc D = B^2 - 4Nac = -4N Q(w).
struct LatticeVector {
  long N, r;     // level and coset (r mod 2N)
  long a, b, c;  // integer coordinates
  long Bval() const { return 2 * N * b + r; }
  long disc() const { return Bval() * Bval() - 4 * N * a * c; }
  Rat norm() const { return Rat(-disc(), 4 * N); }  // Q(w)
  // the integer matrix 2N w
  std::array<long, 4> mat2N() const { return {Bval(), -2 * a, 2 * N * c, -Bval()}; }
  bool operator==(const LatticeVector& o) const = default;
};

// Conjugate w by gamma in SL2(Z) (exact; result stays in the same coset).
LatticeVector conjugate(const LatticeVector& w, const Mat2& g);

// All w in L_{mu_r}[n] with |a|,|b|,|c| <= bound.  Rejects (n, r) whose
// discriminant congruence D = -4Nn == r^2 (mod 4N) fails.
std::vector<LatticeVector> enumerate_vectors(const Level& lv, long r, const Rat& n,
                                             long bound);

// Cusp class of p/q on X_0(N), N square free: the divisor gcd(q, N).
long cusp_class(long p, long q, long N);

// Gauss reduction of the positive definite form [Nc, B, a] attached to w
// (disc < 0, c > 0) under SL2(Z); g realizes  2N * reduced = g (2N w) g^{-1}.
struct ReducedForm {
  long A, B, C;
  Mat2 g;
};
ReducedForm reduce_positive_definite(const LatticeVector& w);

// deg Z(n, mu_r): Gamma_0(N)-classes of vectors of norm n > 0 in the coset,
// each weighted 2/|Aut| = 1/|stabilizer in PGamma_0(N)|; both orientations
// (B == r and B == -r mod 2N) counted, matching Z = P_{D,r} + P_{D,-r}.
Rat heegner_degree(const Level& lv, long r, const Rat& n);

struct HeegnerClass {
  LatticeVector rep;  // positive definite representative, B == r (mod 2N)
  long stab_order;    // order of its stabilizer in PGamma_0(N)
};
// One orientation: Gamma_0(N)-classes of positive definite vectors of disc D.
std::vector<HeegnerClass> heegner_classes(const Level& lv, long r, long D);

// One-orientation class count (positive definite forms with B == r mod 2N).
Rat heegner_count_oriented(const Level& lv, long r, long D);

// CSV exports: columns a,b_numerator,c,D[,aut_order,class_representative]
std::string vectors_csv(const std::vector<LatticeVector>& vs);
std::string classes_csv(const std::vector<HeegnerClass>& cs);

struct AlphaCount {
  long brute;        // sum of delta_w over classes, counted at the cusp P_{1/M}
  long closed_form;  // sqrt(D) times the number of residues s*sqrt(D) == r_M (2N)
  bool lemma_applies;  // the congruence is solvable, so closed in {sqrt D, 2 sqrt D}
  long r_at_cusp;      // coset transported to the cusp by the Atkin-Lehner move
};
// D = -4Nn > 0 a perfect square required.
AlphaCount alpha_count(const Level& lv, long r, const Rat& n, long M);

// Atkin-Lehner transport of the coset: W_Q mu_r W_Q^{-1} = mu_{r'} with
// r' == -r (mod 2Q), r' == r (mod 2 N/Q).
long atkin_lehner_coset(const Level& lv, long Q, long r);

// ---------------------------------------------------------------------------
// Weil representation of the metaplectic group on C[L^#/L], dim 2N:
//   rho(T) e_mu = e(Q(mu)) e_mu
//   rho(S) e_mu = e(1/8)/sqrt(2N) sum_{mu'} e(-(mu,mu')) e_{mu'}
// Group elements are handled as words in S, T with the lift fixed by the word.

struct MetaLetter {
  char gen;   // 'S' or 'T'
  long pow;   // S power always 1; T power any integer
};
using MetaWord = std::vector<MetaLetter>;

Mat2 word_matrix(const MetaWord& w);
MetaWord gamma_to_word(const Mat2& g);  // product of letters reproduces g exactly

// Automorphy cocycle phi(tau) with phi^2 = c tau + d for the word's lift
std::complex<double> word_phi(const MetaWord& w, std::complex<double> tau);

class WeilRep {
 public:
  using cplx_t = std::complex<double>;
  using cmat = std::vector<std::vector<cplx_t>>;

  explicit WeilRep(long N);
  long dim() const { return 2 * N_; }

  const cmat& S() const { return S_; }
  cplx_t T_diag(long r) const;  // e(Q(mu_r)) = e(-r^2/4N)

  cmat element(const MetaWord& w) const;
  // rho(word)^{-1} applied to a vector (used by Eisenstein sums)
  std::vector<cplx_t> apply_inverse(const MetaWord& w, std::vector<cplx_t> v) const;

 private:
  long N_;
  cmat S_, S_inv_;
};

// Right-coset representatives of Gamma_0(N)\SL2(Z), indexed by the bottom row
// (c : d) in P^1(Z/N); size N prod (1 + 1/p).
std::vector<Mat2> gamma0_coset_reps(const Level& lv);

}  // namespace x0n
