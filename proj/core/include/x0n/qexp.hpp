#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "x0n/numtheory.hpp"
#include "x0n/rational.hpp"

namespace x0n {

// Reported when a requested numerical evaluation cannot reach its tolerance
// (typically: series order too small for the given Im z).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Formal q-expansion  sum_j coeff[j] * q^(lead + j*step),  step > 0 rational,
// with coefficients known to be valid strictly below the exponent
// valid_below = lead + order * step.  Exponents in units of q = e(z); cusp
// expansions in q_M = q^(M/N) use a fractional step.
class PowerSeries {
 public:
  PowerSeries() : lead_(0), step_(1), valid_below_(0) {}  // zero series, nothing known
  PowerSeries(Rat lead, Rat step, std::vector<Rat> coeffs);

  static PowerSeries constant(const Rat& c, long order);
  static PowerSeries zero(Rat valid_below);

  const Rat& lead() const { return lead_; }
  const Rat& step() const { return step_; }
  const Rat& valid_below() const { return valid_below_; }
  long order() const { return static_cast<long>(c_.size()); }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  // coefficient of q^e (zero if on-grid but absent; throws if e >= valid_below)
  Rat coeff_at(const Rat& e) const;

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries inverse() const;  // leading coefficient must be nonzero
  PowerSeries pow(long e) const;
  PowerSeries shifted(const Rat& e) const;  // multiply by q^e
  PowerSeries scaled(const Rat& c) const;
  PowerSeries truncated(long new_order) const;
  PowerSeries truncated_below(const PowerSeries& o) const;  // clamp validity to o's

  bool integral() const;  // all coefficients integers

  std::string to_json() const;  // {lead, step, order, coeffs:[strings]}
  std::string to_csv() const;   // exponent,numerator,denominator
  static PowerSeries from_json(const std::string& text);

 private:
  void normalize();
  Rat lead_, step_, valid_below_;
  std::vector<Rat> c_;
};

// prefix q^lead * prod_{n>=1} (1 - q^n)^{e(n)}, exact to `order` coefficients.
// Negative exponents expand each factor by the binomial series.
PowerSeries product_with_exponents(const std::function<long(long)>& e, long order,
                                   const Rat& lead = Rat(0));

// Discriminant form Delta = q prod (1-q^n)^24
PowerSeries delta_series(long order);

struct DeltaN {
  Level level;
  PowerSeries series;  // integer coefficients, leading exponent phi(N)*r
  long weight;         // 12 phi(N)
};

// Two independent constructions, compared coefficient by coefficient:
//   single product  q^(N phi prod(1+1/p)) prod (1-q^n)^(24 C_N(n))
//   eta-style       prod_{t|N} Delta(tz)^(a_N(t))  (through series inverses)
PowerSeries delta_n_single_product(const Level& lv, long order);
PowerSeries delta_n_factored(const Level& lv, long order);
DeltaN delta_n(const Level& lv, long order);  // asserts the two agree and are integral

// Delta_N^0 = Delta_N | w_N = C_N prod_{t|N} Delta(tz)^(a_N(N/t)).
// Returns the exact constant C_N and the product series.
std::pair<Rat, PowerSeries> delta_n_zero(const Level& lv, long order);

// Delta_N | W_Q for an exact divisor Q || N:
//   C_Q prod_{t|N} Delta((t/t0)(Q/t0) z)^(a_N(t)),   t0 = gcd(t, Q),
//   C_Q = Q^(6 phi(N)) prod_{t0|Q} t0^(-12 phi(N/Q) a_Q(t0)).
std::pair<Rat, PowerSeries> atkin_lehner(const Level& lv, long Q, long order);

struct EvalResult {
  std::complex<double> value;
  double tail_bound;  // estimated truncation error
};

// Evaluate at z in the upper half plane, q^e := e(e z).  Throws PrecisionError
// when the available order cannot resolve the tail at this Im z.
EvalResult eval_at(const PowerSeries& f, std::complex<double> z,
                   double tol = 1e-12);

// log|f(z)| computed without under/overflow (lead exponent handled in logs)
double log_abs_at(const PowerSeries& f, std::complex<double> z, double tol = 1e-12);

// log || f(z) || for the renormalized Petersson norm
// || f(z) || = | f(z) (4 pi e^{-C} y)^{k/2} |,  C = (log 4pi + gamma)/2.
double petersson_log_norm(const PowerSeries& f, long weight, std::complex<double> z,
                          double tol = 1e-12);

}  // namespace x0n
