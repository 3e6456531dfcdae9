#pragma once

#include <map>
#include <string>
#include <vector>

#include "x0n/numtheory.hpp"
#include "x0n/rational.hpp"

namespace x0n {

// Symbolic reals: exact rational combinations of 1, log p, zeta'(-1), the
// Petersson constant C, log v, log N, and the archimedean factors g(n,mu,v)
// (carried as opaque positive reals, never multiplied together).

enum class SymBase { One, LogP, ZetaPrime, CPet, LogV, LogN };

struct GTag {  // g(n, mu_r, v) of a specific row; absent when not set
  bool present = false;
  Rat n;
  long r = 0;
  Rat v;
  bool operator==(const GTag& o) const {
    return present == o.present && n == o.n && r == o.r && v == o.v;
  }
  bool operator<(const GTag& o) const {
    if (present != o.present) return present < o.present;
    if (n != o.n) return n < o.n;
    if (r != o.r) return r < o.r;
    return v < o.v;
  }
};

struct SymKey {
  SymBase base = SymBase::One;
  long p = 0;  // prime for LogP, the level for LogN
  Rat payload; // v for LogV
  GTag g;
  bool operator==(const SymKey& o) const {
    return base == o.base && p == o.p && payload == o.payload && g == o.g;
  }
  bool operator<(const SymKey& o) const {
    if (base != o.base) return base < o.base;
    if (p != o.p) return p < o.p;
    if (payload != o.payload) return payload < o.payload;
    return g < o.g;
  }
};

class SymValue {
 public:
  SymValue() = default;
  static SymValue rational(const Rat& c);
  static SymValue log_p(long p, const Rat& c = Rat(1));
  static SymValue zeta_prime(const Rat& c = Rat(1));
  static SymValue c_pet(const Rat& c = Rat(1));
  static SymValue log_v(const Rat& v, const Rat& c = Rat(1));
  static SymValue log_level(long N, const Rat& c = Rat(1));
  static SymValue g_factor(const GTag& g, const Rat& c = Rat(1));

  SymValue operator+(const SymValue& o) const;
  SymValue operator-(const SymValue& o) const;
  SymValue operator*(const SymValue& o) const;  // throws if transcendental degree > 1
  SymValue operator*(const Rat& c) const;
  bool operator==(const SymValue& o) const { return terms_ == o.terms_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<SymKey, Rat>& terms() const { return terms_; }
  double numeric(const Level& lv) const;
  std::string str() const;

 private:
  void add(const SymKey& k, const Rat& c);
  std::map<SymKey, Rat> terms_;
};

// Component basis of the encoded arithmetic Chow classes.
enum class CompKind { Cusp, VertInf, VertZero, Hodge, Horizontal, ConstOne, LogVN };

struct Comp {
  CompKind k = CompKind::ConstOne;
  long m = 0;      // M for Cusp, p for VertInf/VertZero
  Rat n;           // Horizontal row index n, or v for LogVN
  long r = 0;      // Horizontal coset
  bool operator==(const Comp& o) const {
    return k == o.k && m == o.m && n == o.n && r == o.r;
  }
  bool operator<(const Comp& o) const {
    if (k != o.k) return k < o.k;
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return r < o.r;
  }
  std::string name() const;

  static Comp cusp(long M) { return {CompKind::Cusp, M, Rat(0), 0}; }
  static Comp vert_inf(long p) { return {CompKind::VertInf, p, Rat(0), 0}; }
  static Comp vert_zero(long p) { return {CompKind::VertZero, p, Rat(0), 0}; }
  static Comp hodge() { return {CompKind::Hodge, 0, Rat(0), 0}; }
  static Comp horizontal(const Rat& n, long r) { return {CompKind::Horizontal, 0, n, r}; }
  static Comp const_one() { return {CompKind::ConstOne, 0, Rat(0), 0}; }
  static Comp log_vn(const Rat& v) { return {CompKind::LogVN, 0, v, 0}; }
};

struct ArithDivisor {
  long N = 1;
  std::map<Comp, SymValue> coef;
  void add_term(const Comp& c, const SymValue& s);
  ArithDivisor operator+(const ArithDivisor& o) const;
  ArithDivisor scaled(const SymValue& s) const;
};

// Requested pair is outside the encoded table.
struct PairingUndefined : std::runtime_error {
  PairingUndefined(const std::string& a, const std::string& b)
      : std::runtime_error("pairing <" + a + ", " + b + "> is not determined"), lhs(a), rhs(b) {}
  std::string lhs, rhs;
};

// Bilinear extension of the encoded pairing table.
SymValue pair(const Level& lv, const ArithDivisor& A, const ArithDivisor& B);

// Degree map deg(Z, g) = <(Z,g), (0,2)>: cusps count 1, Hodge r/12,
// horizontal rows their Heegner degree, vertical and purely archimedean 0.
SymValue deg(const Level& lv, const ArithDivisor& A);

// Div Delta_N = (rk/12) P_infty - k sum p/(p-1) X_p^0, and
// Div Delta_N^0 = (rk/12) P_0 - (k/2) sum (p+1)/(p-1) X_p^inf - (k/2) sum X_p^0.
ArithDivisor divisor_of_delta_n(const Level& lv);
ArithDivisor divisor_of_delta_n_zero(const Level& lv);

// The class Delta-hat_N = ((rk/12) P_infty, -log||Delta_N||^2)
//                       = k Hodge + k sum p/(p-1) X_p^0  in the encoded basis.
ArithDivisor delta_hat(const Level& lv);

// Z-hat(n, mu_r, v) per the case split; rejects inconsistent (n, r).
ArithDivisor assemble_z_hat(const Level& lv, long r, const Rat& n, const Rat& v);

struct DegreeRow {
  Rat n;
  long r;
  SymValue degree;
};
std::vector<DegreeRow> degree_series(const Level& lv, const Rat& v, const Rat& n_max);

struct VerticalIdentityRow {
  Rat n;
  long r;
  SymValue lhs_zero, lhs_inf, rhs;  // <Z,X_p^0>, <Z,X_p^inf>, (1/2) deg Z log p
  bool ok;
};
std::vector<VerticalIdentityRow> vertical_pairing_identity(const Level& lv, long p,
                                                           const Rat& v, const Rat& n_max);

}  // namespace x0n
