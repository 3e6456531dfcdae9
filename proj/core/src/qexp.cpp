#include "x0n/qexp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace x0n {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PowerSeries::PowerSeries(Rat lead, Rat step, std::vector<Rat> coeffs)
    : lead_(std::move(lead)), step_(std::move(step)), c_(std::move(coeffs)) {
  if (step_ <= 0) throw std::invalid_argument("PowerSeries: step must be positive");
  valid_below_ = lead_ + Rat(static_cast<long>(c_.size())) * step_;
  normalize();
}

void PowerSeries::normalize() {
  size_t i = 0;
  while (i < c_.size() && c_[i] == 0) ++i;
  if (i > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(i));
    lead_ += Rat(static_cast<long>(i)) * step_;
  }
  if (c_.empty()) lead_ = valid_below_;
}

PowerSeries PowerSeries::constant(const Rat& c, long order) {
  std::vector<Rat> v(static_cast<size_t>(std::max<long>(order, 1)), Rat(0));
  v[0] = c;
  return PowerSeries(Rat(0), Rat(1), std::move(v));
}

PowerSeries PowerSeries::zero(Rat valid_below) {
  PowerSeries z;
  z.lead_ = valid_below;
  z.valid_below_ = valid_below;
  return z;
}

Rat PowerSeries::coeff_at(const Rat& e) const {
  if (e >= valid_below_)
    throw std::out_of_range("PowerSeries::coeff_at: exponent beyond truncation order");
  Rat rel = (e - lead_) / step_;
  if (rel < 0 || !is_integer(rel)) return Rat(0);
  long j = rat_num(rel).convert_to<long>();
  if (j >= static_cast<long>(c_.size())) return Rat(0);
  return c_[static_cast<size_t>(j)];
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  if (is_zero() && o.is_zero()) return zero(std::min(valid_below_, o.valid_below_));
  if (is_zero()) return o.truncated_below(*this);
  if (o.is_zero()) return truncated_below(o);
  Rat s = rat_gcd(step_, o.step_);
  Rat dl = lead_ - o.lead_;
  if (dl != 0) s = rat_gcd(s, dl < 0 ? Rat(-dl) : dl);
  Rat start = std::min(lead_, o.lead_);
  Rat vb = std::min(valid_below_, o.valid_below_);
  Rat cnt = (vb - start) / s;
  if (cnt <= 0) return zero(vb);
  long n = rat_num(cnt).convert_to<long>();
  std::vector<Rat> out(static_cast<size_t>(n), Rat(0));
  auto scatter = [&](const PowerSeries& f, int sign) {
    long stride = rat_num((f.step_ / s)).convert_to<long>();
    long off = rat_num((f.lead_ - start) / s).convert_to<long>();
    for (size_t j = 0; j < f.c_.size(); ++j) {
      long k = off + static_cast<long>(j) * stride;
      if (k >= n) break;
      if (sign > 0)
        out[static_cast<size_t>(k)] += f.c_[j];
      else
        out[static_cast<size_t>(k)] -= f.c_[j];
    }
  };
  scatter(*this, +1);
  scatter(o, +1);
  PowerSeries r(start, s, std::move(out));
  r.valid_below_ = vb;
  return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  return *this + o.scaled(Rat(-1));
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  Rat lead = lead_ + o.lead_;
  Rat vb = std::min(valid_below_ + o.lead_, o.valid_below_ + lead_);
  if (is_zero() || o.is_zero()) return zero(vb);
  Rat s = rat_gcd(step_, o.step_);
  Rat cnt = (vb - lead) / s;
  if (cnt <= 0) return zero(vb);
  long n = rat_num(cnt).convert_to<long>();
  long sa = rat_num(step_ / s).convert_to<long>();
  long sb = rat_num(o.step_ / s).convert_to<long>();
  std::vector<Rat> out(static_cast<size_t>(n), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    long base = static_cast<long>(i) * sa;
    if (base >= n) break;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      long k = base + static_cast<long>(j) * sb;
      if (k >= n) break;
      if (o.c_[j] == 0) continue;
      out[static_cast<size_t>(k)] += c_[i] * o.c_[j];
    }
  }
  PowerSeries r(lead, s, std::move(out));
  r.valid_below_ = vb;
  r.normalize();
  return r;
}

PowerSeries PowerSeries::inverse() const {
  if (is_zero()) throw std::domain_error("PowerSeries::inverse of zero series");
  const Rat& a0 = c_[0];
  size_t n = c_.size();
  std::vector<Rat> b(n, Rat(0));
  b[0] = Rat(1) / a0;
  for (size_t k = 1; k < n; ++k) {
    Rat acc(0);
    for (size_t j = 1; j <= k; ++j) acc += c_[j] * b[k - j];
    b[k] = -acc / a0;
  }
  return PowerSeries(-lead_, step_, std::move(b));
}

PowerSeries PowerSeries::pow(long e) const {
  if (e == 0) return constant(Rat(1), order() > 0 ? order() : 1);
  if (e < 0) return pow(-e).inverse();
  PowerSeries base = *this, acc = constant(Rat(1), order() > 0 ? order() : 1);
  bool first = true;
  long k = e;
  while (k) {
    if (k & 1) {
      acc = first ? base : acc * base;
      first = false;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

PowerSeries PowerSeries::shifted(const Rat& e) const {
  PowerSeries r = *this;
  r.lead_ += e;
  r.valid_below_ += e;
  return r;
}

PowerSeries PowerSeries::scaled(const Rat& c) const {
  PowerSeries r = *this;
  if (c == 0) return zero(valid_below_);
  for (auto& x : r.c_) x *= c;
  return r;
}

PowerSeries PowerSeries::truncated(long new_order) const {
  if (new_order >= order()) return *this;
  if (new_order <= 0) return zero(lead_);
  std::vector<Rat> v(c_.begin(), c_.begin() + new_order);
  return PowerSeries(lead_, step_, std::move(v));
}

PowerSeries PowerSeries::truncated_below(const PowerSeries& o) const {
  // restrict validity to min with o's
  if (o.valid_below_ >= valid_below_) return *this;
  Rat cnt = (o.valid_below_ - lead_) / step_;
  long keep = cnt <= 0 ? 0 : rat_num(cnt).convert_to<long>();
  PowerSeries r = truncated(keep);
  r.valid_below_ = std::min(valid_below_, o.valid_below_);
  if (r.c_.empty()) r.lead_ = r.valid_below_;
  return r;
}

bool PowerSeries::integral() const {
  for (const auto& x : c_)
    if (!is_integer(x)) return false;
  return true;
}

std::string PowerSeries::to_json() const {
  nlohmann::json j;
  j["lead"] = rat_to_string(lead_);
  j["step"] = rat_to_string(step_);
  j["order"] = order();
  std::vector<std::string> cs;
  cs.reserve(c_.size());
  for (const auto& x : c_) cs.push_back(rat_to_string(x));
  j["coeffs"] = cs;
  return j.dump();
}

std::string PowerSeries::to_csv() const {
  std::ostringstream os;
  os << "exponent,numerator,denominator\n";
  for (size_t j = 0; j < c_.size(); ++j) {
    Rat e = lead_ + Rat(static_cast<long>(j)) * step_;
    os << rat_to_string(e) << "," << rat_num(c_[j]).str() << "," << rat_den(c_[j]).str()
       << "\n";
  }
  return os.str();
}

PowerSeries PowerSeries::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Rat lead = parse_rational(j.at("lead").get<std::string>());
  Rat step = parse_rational(j.at("step").get<std::string>());
  std::vector<Rat> cs;
  for (const auto& s : j.at("coeffs")) cs.push_back(parse_rational(s.get<std::string>()));
  return PowerSeries(lead, step, std::move(cs));
}

PowerSeries product_with_exponents(const std::function<long(long)>& e, long order,
                                   const Rat& lead) {
  if (order < 1) throw std::invalid_argument("product_with_exponents: order >= 1");
  std::vector<Int> c(static_cast<size_t>(order), Int(0));
  c[0] = 1;
  std::vector<Int> f, tmp(static_cast<size_t>(order));
  for (long n = 1; n < order; ++n) {
    long E = e(n);
    if (E == 0) continue;
    long jmax = (order - 1) / n;
    f.assign(static_cast<size_t>(jmax) + 1, Int(0));
    f[0] = 1;
    if (E > 0) {
      // (1 - x)^E
      Int binom = 1;
      long top = std::min(jmax, E);
      for (long j = 1; j <= top; ++j) {
        binom = binom * (E - j + 1) / j;
        f[static_cast<size_t>(j)] = (j & 1) ? -binom : binom;
      }
    } else {
      // (1 - x)^E = sum_j C(-E-1+j, j) x^j
      long m = -E;
      Int binom = 1;
      for (long j = 1; j <= jmax; ++j) {
        binom = binom * (m - 1 + j) / j;
        f[static_cast<size_t>(j)] = binom;
      }
    }
    std::fill(tmp.begin(), tmp.end(), Int(0));
    for (long k = 0; k < order; ++k) {
      if (c[static_cast<size_t>(k)] == 0) continue;
      for (long j = 0; j <= jmax && k + j * n < order; ++j) {
        if (f[static_cast<size_t>(j)] == 0) continue;
        tmp[static_cast<size_t>(k + j * n)] += c[static_cast<size_t>(k)] * f[static_cast<size_t>(j)];
      }
    }
    c.swap(tmp);
  }
  std::vector<Rat> rc(c.size());
  for (size_t i = 0; i < c.size(); ++i) rc[i] = Rat(c[i]);
  return PowerSeries(lead, Rat(1), std::move(rc));
}

PowerSeries delta_series(long order) {
  return product_with_exponents([](long) { return 24L; }, order, Rat(1));
}

PowerSeries delta_n_single_product(const Level& lv, long order) {
  long N = lv.N;
  return product_with_exponents([N](long n) { return 24 * ramanujan_sum(N, n); }, order,
                                Rat(lv.lead_exponent()));
}

namespace {

// prod over t|N of Delta(tz)^{m(t)} with all m(t) of one sign, as one product
PowerSeries eta_power_product(const Level& lv, const std::function<long(long)>& m,
                              long order) {
  auto ds = lv.divisors();
  long lead = 0;
  for (long t : ds) lead += t * m(t);
  auto exps = [&lv, m](long n) {
    long E = 0;
    for (long t : x0n::divisors(lv.N))
      if (n % t == 0) E += 24 * m(t);
    return E;
  };
  return product_with_exponents(exps, order, Rat(lead));
}

}  // namespace

PowerSeries delta_n_factored(const Level& lv, long order) {
  // positive and negative exponent parts, then a genuine series inversion
  auto pos = eta_power_product(
      lv, [&lv](long t) { long a = delta_exponent(lv, t); return a > 0 ? a : 0; }, order);
  bool has_neg = false;
  for (long t : lv.divisors())
    if (delta_exponent(lv, t) < 0) has_neg = true;
  if (!has_neg) return pos;
  auto neg = eta_power_product(
      lv, [&lv](long t) { long a = delta_exponent(lv, t); return a < 0 ? -a : 0; }, order);
  return pos * neg.inverse();
}

DeltaN delta_n(const Level& lv, long order) {
  PowerSeries a = delta_n_single_product(lv, order);
  PowerSeries b = delta_n_factored(lv, order);
  if (a.lead() != b.lead() || a.step() != b.step())
    throw std::logic_error("delta_n: construction mismatch (lead/step)");
  long n = std::min(a.order(), b.order());
  for (long j = 0; j < n; ++j)
    if (a.coeffs()[static_cast<size_t>(j)] != b.coeffs()[static_cast<size_t>(j)])
      throw std::logic_error("delta_n: construction mismatch at coefficient " +
                             std::to_string(j));
  if (!a.integral() || !b.integral())
    throw std::logic_error("delta_n: integrality violation");
  return DeltaN{lv, a.truncated(n), lv.weight()};
}

std::pair<Rat, PowerSeries> delta_n_zero(const Level& lv, long order) {
  long N = lv.N;
  Rat C = rat_pow(Rat(N), 6 * lv.phi());
  for (long t : lv.divisors()) C *= rat_pow(Rat(t), -12 * delta_exponent(lv, t));
  PowerSeries s = eta_power_product(
      lv, [&lv, N](long t) { return delta_exponent(lv, N / t); }, order);
  return {C, s};
}

std::pair<Rat, PowerSeries> atkin_lehner(const Level& lv, long Q, long order) {
  if (Q < 1 || lv.N % Q != 0 || std::gcd(Q, lv.N / Q) != 1)
    throw std::invalid_argument("atkin_lehner: Q must exactly divide N");
  Level lq(Q);
  Rat C = rat_pow(Rat(Q), 6 * lv.phi());
  long phiNQ = euler_phi(lv.N / Q);
  for (long t0 : lq.divisors()) C *= rat_pow(Rat(t0), -12 * phiNQ * delta_exponent(lq, t0));
  // scale map t -> (t/t0)(Q/t0), t0 = gcd(t,Q); combine factors sharing a scale
  std::map<long, long> scale_exp;
  for (long t : lv.divisors()) {
    long t0 = std::gcd(t, Q);
    scale_exp[(t / t0) * (Q / t0)] += delta_exponent(lv, t);
  }
  long lead = 0;
  for (auto& [m, a] : scale_exp) lead += m * a;
  auto exps = [scale_exp](long n) {
    long E = 0;
    for (auto& [m, a] : scale_exp)
      if (n % m == 0) E += 24 * a;
    return E;
  };
  PowerSeries s = product_with_exponents(exps, order, Rat(lead));
  for (long p : lv.primes)
    if (Q % p != 0 && ord_p(C, p) != 0)
      throw std::logic_error("atkin_lehner: ord_p(C_Q) != 0 for p not dividing Q");
  return {C, s};
}

namespace {

struct SeriesEval {
  std::complex<double> series_part;  // sum c_j w^j
  double tail;                       // bound on the dropped tail, same scale
};

SeriesEval eval_series_part(const PowerSeries& f, std::complex<double> z, double tol) {
  double y = z.imag();
  if (y <= 0) throw std::invalid_argument("eval_at: Im z must be positive");
  double sd = to_double(f.step());
  std::complex<double> w = std::exp(std::complex<double>(0, kTwoPi) * sd * z);
  double aw = std::abs(w);
  const auto& c = f.coeffs();
  size_t n = c.size();
  std::complex<double> S = 0;
  for (size_t j = n; j-- > 0;) {
    S = S * w + to_double(c[j]);
  }
  if (!std::isfinite(S.real()) || !std::isfinite(S.imag()))
    throw PrecisionError("eval_at: coefficient overflow in double conversion");
  // eta-quotient coefficients satisfy |c_j| <= e^{K sqrt j}; fit K on the
  // trailing half (robust against sign-change cancellations)
  double K = 0.0;
  size_t k0 = n / 2;
  for (size_t j = std::max<size_t>(k0, 1); j < n; ++j) {
    double a = std::abs(to_double(c[j]));
    if (a > 1.0) K = std::max(K, std::log(a) / std::sqrt(static_cast<double>(j)));
  }
  double nn = static_cast<double>(n);
  double step_ratio = aw * std::exp(K / (2.0 * std::sqrt(nn)));
  if (step_ratio >= 0.95)
    throw PrecisionError("eval_at: series order insufficient for this Im z");
  double tail =
      std::exp(K * std::sqrt(nn)) * std::pow(aw, nn) / (1.0 - step_ratio);
  if (tail > tol * std::max(1.0, std::abs(S)))
    throw PrecisionError("eval_at: tail bound exceeds requested tolerance");
  return {S, tail};
}

}  // namespace

EvalResult eval_at(const PowerSeries& f, std::complex<double> z, double tol) {
  if (f.is_zero()) return {0.0, 0.0};
  auto se = eval_series_part(f, z, tol);
  std::complex<double> qlead =
      std::exp(std::complex<double>(0, kTwoPi) * to_double(f.lead()) * z);
  return {qlead * se.series_part, std::abs(qlead) * se.tail};
}

double log_abs_at(const PowerSeries& f, std::complex<double> z, double tol) {
  if (f.is_zero()) return -std::numeric_limits<double>::infinity();
  auto se = eval_series_part(f, z, tol);
  double a = std::abs(se.series_part);
  if (a == 0) return -std::numeric_limits<double>::infinity();
  return -kTwoPi * z.imag() * to_double(f.lead()) + std::log(a);
}

double petersson_log_norm(const PowerSeries& f, long weight, std::complex<double> z,
                          double tol) {
  constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;
  double C = 0.5 * (std::log(4 * M_PI) + kEulerGamma);
  double la = log_abs_at(f, z, tol);
  return la + 0.5 * static_cast<double>(weight) * std::log(4 * M_PI * std::exp(-C) * z.imag());
}

}  // namespace x0n
