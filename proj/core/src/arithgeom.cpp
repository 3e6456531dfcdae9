#include "x0n/arithgeom.hpp"

#include <cmath>
#include <sstream>

#include "x0n/analytic.hpp"
#include "x0n/lattice.hpp"
#include "x0n/theta.hpp"

namespace x0n {

void SymValue::add(const SymKey& k, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymValue SymValue::rational(const Rat& c) {
  SymValue s;
  s.add(SymKey{}, c);
  return s;
}
SymValue SymValue::log_p(long p, const Rat& c) {
  SymValue s;
  s.add(SymKey{SymBase::LogP, p, Rat(0), {}}, c);
  return s;
}
SymValue SymValue::zeta_prime(const Rat& c) {
  SymValue s;
  s.add(SymKey{SymBase::ZetaPrime, 0, Rat(0), {}}, c);
  return s;
}
SymValue SymValue::c_pet(const Rat& c) {
  SymValue s;
  s.add(SymKey{SymBase::CPet, 0, Rat(0), {}}, c);
  return s;
}
SymValue SymValue::log_v(const Rat& v, const Rat& c) {
  SymValue s;
  s.add(SymKey{SymBase::LogV, 0, v, {}}, c);
  return s;
}
SymValue SymValue::log_level(long N, const Rat& c) {
  SymValue s;
  s.add(SymKey{SymBase::LogN, N, Rat(0), {}}, c);
  return s;
}
SymValue SymValue::g_factor(const GTag& g, const Rat& c) {
  SymValue s;
  SymKey k;
  k.g = g;
  k.g.present = true;
  s.add(k, c);
  return s;
}

SymValue SymValue::operator+(const SymValue& o) const {
  SymValue s = *this;
  for (const auto& [k, c] : o.terms_) s.add(k, c);
  return s;
}
SymValue SymValue::operator-(const SymValue& o) const {
  SymValue s = *this;
  for (const auto& [k, c] : o.terms_) s.add(k, -c);
  return s;
}
SymValue SymValue::operator*(const Rat& c) const {
  SymValue s;
  if (c == 0) return s;
  for (const auto& [k, v] : terms_) s.add(k, v * c);
  return s;
}

SymValue SymValue::operator*(const SymValue& o) const {
  SymValue s;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      SymKey k;
      if (k1.base != SymBase::One && k2.base != SymBase::One)
        throw std::logic_error("SymValue: product of two transcendental symbols");
      k = (k1.base != SymBase::One) ? k1 : k2;
      if (k1.g.present && k2.g.present)
        throw std::logic_error("SymValue: product of two archimedean g factors");
      const GTag& g = k1.g.present ? k1.g : k2.g;
      k.g = g;
      s.add(k, c1 * c2);
    }
  return s;
}

double SymValue::numeric(const Level& lv) const {
  double total = 0;
  for (const auto& [k, c] : terms_) {
    double factor = 1;
    switch (k.base) {
      case SymBase::One: factor = 1; break;
      case SymBase::LogP: factor = std::log(static_cast<double>(k.p)); break;
      case SymBase::ZetaPrime: factor = SpecialValues::zeta_prime_minus1; break;
      case SymBase::CPet: factor = SpecialValues::C_pet(); break;
      case SymBase::LogV: factor = std::log(to_double(k.payload)); break;
      case SymBase::LogN: factor = std::log(static_cast<double>(k.p)); break;
    }
    if (k.g.present) {
      auto g = green_cusp_constant(lv, k.g.r, k.g.n, to_double(k.g.v));
      factor *= g.value;
    }
    total += to_double(c) * factor;
  }
  return total;
}

std::string SymValue::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c);
    switch (k.base) {
      case SymBase::One: break;
      case SymBase::LogP: os << "*log(" << k.p << ")"; break;
      case SymBase::ZetaPrime: os << "*zeta'(-1)"; break;
      case SymBase::CPet: os << "*C"; break;
      case SymBase::LogV: os << "*log(v=" << rat_to_string(k.payload) << ")"; break;
      case SymBase::LogN: os << "*log(N=" << k.p << ")"; break;
    }
    if (k.g.present)
      os << "*g(n=" << rat_to_string(k.g.n) << ",r=" << k.g.r << ",v=" << rat_to_string(k.g.v)
         << ")";
  }
  return os.str();
}

std::string Comp::name() const {
  std::ostringstream os;
  switch (k) {
    case CompKind::Cusp: os << "P(1/" << m << ")"; break;
    case CompKind::VertInf: os << "X_" << m << "^inf"; break;
    case CompKind::VertZero: os << "X_" << m << "^0"; break;
    case CompKind::Hodge: os << "omega"; break;
    case CompKind::Horizontal: os << "Z(" << rat_to_string(n) << "," << r << ")"; break;
    case CompKind::ConstOne: os << "a(1)"; break;
    case CompKind::LogVN: os << "a(log(v/N)),v=" << rat_to_string(n); break;
  }
  return os.str();
}

void ArithDivisor::add_term(const Comp& c, const SymValue& s) {
  if (s.is_zero()) return;
  auto it = coef.find(c);
  if (it == coef.end()) {
    coef.emplace(c, s);
  } else {
    it->second = it->second + s;
    if (it->second.is_zero()) coef.erase(it);
  }
}

ArithDivisor ArithDivisor::operator+(const ArithDivisor& o) const {
  ArithDivisor out = *this;
  for (const auto& [c, s] : o.coef) out.add_term(c, s);
  return out;
}

ArithDivisor ArithDivisor::scaled(const SymValue& s) const {
  ArithDivisor out;
  out.N = N;
  for (const auto& [c, v] : coef) out.add_term(c, v * s);
  return out;
}

namespace {

Rat r_over(const Level& lv) { return Rat(lv.psl2_index()); }

// table value for a single pair of basis components
SymValue pair_table(const Level& lv, const Comp& A, const Comp& B) {
  const Comp *a = &A, *b = &B;
  // order kinds for the symmetric lookup
  if (static_cast<int>(a->k) > static_cast<int>(b->k)) std::swap(a, b);
  Rat r = r_over(lv);
  auto half_deg_pair = [&](const Comp& h) -> SymValue {
    // <h, a(f)>-type pairings via (1/2) deg(h) * f for constant f
    switch (h.k) {
      case CompKind::Cusp: return SymValue::rational(Rat(1, 2));
      case CompKind::Hodge: return SymValue::rational(r / 24);
      case CompKind::Horizontal:
        return SymValue::rational(heegner_degree(lv, h.r, h.n) / 2);
      default: return SymValue();  // vertical and archimedean classes have degree 0
    }
  };
  switch (a->k) {
    case CompKind::Cusp:
      switch (b->k) {
        case CompKind::Cusp:
          if (a->m != b->m) return SymValue();
          throw PairingUndefined(a->name(), b->name());
        case CompKind::VertInf:
          return (a->m % b->m == 0) ? SymValue::log_p(b->m) : SymValue();
        case CompKind::VertZero:
          return (a->m % b->m != 0) ? SymValue::log_p(b->m) : SymValue();
        case CompKind::ConstOne: return half_deg_pair(*a);
        case CompKind::LogVN:
          return half_deg_pair(*a) * (SymValue::log_v(b->n) - SymValue::log_level(lv.N));
        default: throw PairingUndefined(a->name(), b->name());
      }
    case CompKind::VertInf:
      switch (b->k) {
        case CompKind::VertInf:
          if (a->m != b->m) return SymValue();
          return SymValue::log_p(a->m, -r * (a->m - 1) / (12 * (a->m + 1)));
        case CompKind::VertZero:
          if (a->m != b->m) return SymValue();
          return SymValue::log_p(a->m, r * (a->m - 1) / (12 * (a->m + 1)));
        case CompKind::Hodge:
          return SymValue::log_p(a->m, r / (12 * (a->m + 1)));
        case CompKind::Horizontal:
          return SymValue::log_p(a->m) * half_deg_pair(*b);
        case CompKind::ConstOne:
        case CompKind::LogVN: return SymValue();
        default: throw PairingUndefined(a->name(), b->name());
      }
    case CompKind::VertZero:
      switch (b->k) {
        case CompKind::VertZero:
          if (a->m != b->m) return SymValue();
          return SymValue::log_p(a->m, -r * (a->m - 1) / (12 * (a->m + 1)));
        case CompKind::Hodge:
          return SymValue::log_p(a->m, r * a->m / (12 * (a->m + 1)));
        case CompKind::Horizontal:
          return SymValue::log_p(a->m) * half_deg_pair(*b);
        case CompKind::ConstOne:
        case CompKind::LogVN: return SymValue();
        default: throw PairingUndefined(a->name(), b->name());
      }
    case CompKind::Hodge:
      switch (b->k) {
        case CompKind::Hodge:
          // r (zeta(-1)/2 + zeta'(-1)) + (r/12) C
          return SymValue::rational(-r / 24) + SymValue::zeta_prime(r) + SymValue::c_pet(r / 12);
        case CompKind::ConstOne: return half_deg_pair(*a);
        case CompKind::LogVN:
          return half_deg_pair(*a) * (SymValue::log_v(b->n) - SymValue::log_level(lv.N));
        default: throw PairingUndefined(a->name(), b->name());
      }
    case CompKind::Horizontal:
      switch (b->k) {
        case CompKind::ConstOne: return half_deg_pair(*a);
        case CompKind::LogVN:
          return half_deg_pair(*a) * (SymValue::log_v(b->n) - SymValue::log_level(lv.N));
        default: throw PairingUndefined(a->name(), b->name());
      }
    case CompKind::ConstOne:
      if (b->k == CompKind::ConstOne || b->k == CompKind::LogVN) return SymValue();
      throw PairingUndefined(a->name(), b->name());
    case CompKind::LogVN:
      if (b->k == CompKind::LogVN) return SymValue();
      throw PairingUndefined(a->name(), b->name());
  }
  throw PairingUndefined(a->name(), b->name());
}

}  // namespace

SymValue pair(const Level& lv, const ArithDivisor& A, const ArithDivisor& B) {
  SymValue total;
  for (const auto& [ca, sa] : A.coef)
    for (const auto& [cb, sb] : B.coef) {
      SymValue t = pair_table(lv, ca, cb);
      if (t.is_zero()) continue;
      total = total + sa * sb * t;
    }
  return total;
}

SymValue deg(const Level& lv, const ArithDivisor& A) {
  SymValue total;
  for (const auto& [c, s] : A.coef) {
    switch (c.k) {
      case CompKind::Cusp: total = total + s; break;
      case CompKind::Hodge: total = total + s * Rat(lv.psl2_index(), 12); break;
      case CompKind::Horizontal: total = total + s * heegner_degree(lv, c.r, c.n); break;
      default: break;
    }
  }
  return total;
}

ArithDivisor divisor_of_delta_n(const Level& lv) {
  ArithDivisor d;
  d.N = lv.N;
  Rat rk12 = Rat(lv.psl2_index() * lv.weight(), 12);
  d.add_term(Comp::cusp(lv.N), SymValue::rational(rk12));  // P_infty = P_{1/N}
  for (long p : lv.primes)
    d.add_term(Comp::vert_zero(p), SymValue::rational(Rat(-lv.weight() * p, p - 1)));
  return d;
}

ArithDivisor divisor_of_delta_n_zero(const Level& lv) {
  ArithDivisor d;
  d.N = lv.N;
  Rat rk12 = Rat(lv.psl2_index() * lv.weight(), 12);
  d.add_term(Comp::cusp(1), SymValue::rational(rk12));  // P_0 = P_{1/1}
  for (long p : lv.primes) {
    d.add_term(Comp::vert_inf(p), SymValue::rational(Rat(-lv.weight() * (p + 1), 2 * (p - 1))));
    d.add_term(Comp::vert_zero(p), SymValue::rational(Rat(-lv.weight(), 2)));
  }
  return d;
}

ArithDivisor delta_hat(const Level& lv) {
  ArithDivisor d;
  d.N = lv.N;
  long k = lv.weight();
  d.add_term(Comp::hodge(), SymValue::rational(Rat(k)));
  for (long p : lv.primes)
    d.add_term(Comp::vert_zero(p), SymValue::rational(Rat(k * p, p - 1)));
  return d;
}

ArithDivisor assemble_z_hat(const Level& lv, long r, const Rat& n, const Rat& v) {
  if (v <= 0) throw std::invalid_argument("assemble_z_hat: v must be positive");
  Rat Dr = Rat(-4 * lv.N) * n;
  if (!is_integer(Dr))
    throw std::invalid_argument("assemble_z_hat: 4Nn must be an integer");
  long D = rat_num(Dr).convert_to<long>();
  long rr = r % (2 * lv.N);
  if (rr < 0) rr += 2 * lv.N;
  long congr = (D - rr * rr) % (4 * lv.N);
  if (congr < 0) congr += 4 * lv.N;
  if (congr != 0)
    throw std::invalid_argument("assemble_z_hat: D = -4Nn must equal r^2 mod 4N");
  ArithDivisor out;
  out.N = lv.N;
  if (n > 0) {
    out.add_term(Comp::horizontal(n, rr), SymValue::rational(Rat(1)));
    return out;
  }
  long sD = static_cast<long>(std::llround(std::sqrt(static_cast<double>(D))));
  bool square = D >= 0 && sD * sD == D;
  if (n < 0) {
    if (!square) return out;  // Green function only, zero geometric part
    GTag g{true, n, rr, v};
    for (long M : lv.divisors()) out.add_term(Comp::cusp(M), SymValue::g_factor(g));
    return out;
  }
  // n = 0
  if (rr != 0) return out;
  GTag g{true, Rat(0), 0, v};
  for (long M : lv.divisors()) out.add_term(Comp::cusp(M), SymValue::g_factor(g));
  out.add_term(Comp::hodge(), SymValue::rational(Rat(-2)));
  for (long p : lv.primes) out.add_term(Comp::vert_zero(p), SymValue::rational(Rat(-1)));
  out.add_term(Comp::log_vn(v), SymValue::rational(Rat(-1)));
  return out;
}

std::vector<DegreeRow> degree_series(const Level& lv, const Rat& v, const Rat& n_max) {
  std::vector<DegreeRow> rows;
  for (long r = 0; r < 2 * lv.N; ++r) {
    // n == -r^2/4N (mod 1): n = (4N j - r^2) / 4N
    Rat base = Rat(-r * r, 4 * lv.N);
    long jlo = static_cast<long>(std::ceil(to_double(-n_max - base)));
    long jhi = static_cast<long>(std::floor(to_double(n_max - base)));
    for (long j = jlo; j <= jhi; ++j) {
      Rat n = base + j;
      if (n < -n_max || n > n_max) continue;
      auto zh = assemble_z_hat(lv, r, n, v);
      rows.push_back({n, r, deg(lv, zh)});
    }
  }
  return rows;
}

std::vector<VerticalIdentityRow> vertical_pairing_identity(const Level& lv, long p,
                                                           const Rat& v, const Rat& n_max) {
  if (lv.N % p != 0) throw std::invalid_argument("vertical_pairing_identity: p must divide N");
  ArithDivisor xp0, xpi;
  xp0.N = xpi.N = lv.N;
  xp0.add_term(Comp::vert_zero(p), SymValue::rational(Rat(1)));
  xpi.add_term(Comp::vert_inf(p), SymValue::rational(Rat(1)));
  std::vector<VerticalIdentityRow> rows;
  for (long r = 0; r < 2 * lv.N; ++r) {
    Rat base = Rat(-r * r, 4 * lv.N);
    long jlo = static_cast<long>(std::ceil(to_double(-n_max - base)));
    long jhi = static_cast<long>(std::floor(to_double(n_max - base)));
    for (long j = jlo; j <= jhi; ++j) {
      Rat n = base + j;
      if (n < -n_max || n > n_max) continue;
      auto zh = assemble_z_hat(lv, r, n, v);
      SymValue l0 = pair(lv, zh, xp0);
      SymValue li = pair(lv, zh, xpi);
      SymValue rhs = deg(lv, zh) * SymValue::log_p(p, Rat(1, 2));
      rows.push_back({n, r, l0, li, rhs, l0 == li && l0 == rhs});
    }
  }
  return rows;
}

}  // namespace x0n
