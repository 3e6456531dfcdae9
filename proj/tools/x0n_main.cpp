// x0n command line tool: verification pipelines for the X_0(N) toolkit.
// Exit codes: 0 = all checks pass, 1 = usage error, 2 = tolerance failure.

#include <complex>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "x0n/analytic.hpp"
#include "x0n/arithgeom.hpp"
#include "x0n/lattice.hpp"
#include "x0n/numtheory.hpp"
#include "x0n/qexp.hpp"
#include "x0n/theta.hpp"

using json = nlohmann::json;
using namespace x0n;

namespace {

cplx parse_complex(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("complex literal must be 're,im': " + s);
  try {
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("malformed complex literal: " + s);
  }
}

Rat parse_rat_cli(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw CLI::ValidationError(e.what());
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    f << text << "\n";
  }
}

json sym_to_json(const SymValue& s) {
  json logp = json::object();
  json gterms = json::array();
  json j;
  j["rational"] = "0";
  j["zeta_prime_coeff"] = "0";
  j["C_coeff"] = "0";
  j["logv_coeff"] = "0";
  j["logN_coeff"] = "0";
  for (const auto& [k, c] : s.terms()) {
    std::string cs = rat_to_string(c);
    if (k.g.present) {
      json g;
      g["n"] = rat_to_string(k.g.n);
      g["r"] = k.g.r;
      g["v"] = rat_to_string(k.g.v);
      g["coeff"] = cs;
      switch (k.base) {
        case SymBase::One: g["times"] = "1"; break;
        case SymBase::LogP: g["times"] = "log(" + std::to_string(k.p) + ")"; break;
        case SymBase::LogV: g["times"] = "log(v)"; break;
        case SymBase::LogN: g["times"] = "log(N)"; break;
        case SymBase::ZetaPrime: g["times"] = "zeta'(-1)"; break;
        case SymBase::CPet: g["times"] = "C"; break;
      }
      gterms.push_back(g);
      continue;
    }
    switch (k.base) {
      case SymBase::One: j["rational"] = cs; break;
      case SymBase::LogP: logp[std::to_string(k.p)] = cs; break;
      case SymBase::ZetaPrime: j["zeta_prime_coeff"] = cs; break;
      case SymBase::CPet: j["C_coeff"] = cs; break;
      case SymBase::LogV: j["logv_coeff"] = cs; break;
      case SymBase::LogN: j["logN_coeff"] = cs; break;
    }
  }
  j["logp_terms"] = logp;
  if (!gterms.empty()) j["g_terms"] = gterms;
  j["pretty"] = s.str();
  return j;
}

// divisor expressions: terms split on +/-, each [coef*]name(args)
ArithDivisor parse_divisor(const Level& lv, const std::string& expr) {
  ArithDivisor d;
  d.N = lv.N;
  std::string s;
  for (char ch : expr)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  size_t i = 0;
  while (i < s.size()) {
    Rat sign(1);
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      sign = -1;
      ++i;
    }
    size_t j = i;
    int depth = 0;
    while (j < s.size() && (depth > 0 || (s[j] != '+' && s[j] != '-'))) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')') --depth;
      ++j;
    }
    std::string term = s.substr(i, j - i);
    i = j;
    Rat coef = sign;
    auto star = term.find('*');
    if (star != std::string::npos) {
      coef *= parse_rat_cli(term.substr(0, star));
      term = term.substr(star + 1);
    }
    auto lp = term.find('(');
    std::string name = (lp == std::string::npos) ? term : term.substr(0, lp);
    std::vector<std::string> args;
    if (lp != std::string::npos) {
      std::string inside = term.substr(lp + 1, term.size() - lp - 2);
      size_t a = 0;
      while (a <= inside.size()) {
        auto comma = inside.find(',', a);
        if (comma == std::string::npos) {
          args.push_back(inside.substr(a));
          break;
        }
        args.push_back(inside.substr(a, comma - a));
        a = comma + 1;
      }
    }
    Comp c;
    if (name == "cusp") {
      c = Comp::cusp(std::stol(args.at(0)));
    } else if (name == "xinf") {
      c = Comp::vert_inf(std::stol(args.at(0)));
    } else if (name == "x0") {
      c = Comp::vert_zero(std::stol(args.at(0)));
    } else if (name == "omega") {
      c = Comp::hodge();
    } else if (name == "z") {
      c = Comp::horizontal(parse_rat_cli(args.at(0)), std::stol(args.at(1)));
    } else if (name == "one") {
      c = Comp::const_one();
    } else if (name == "logvn") {
      c = Comp::log_vn(parse_rat_cli(args.at(0)));
    } else {
      throw CLI::ValidationError("unknown component '" + name +
                                 "' (use cusp(M), xinf(p), x0(p), omega, z(n,r), one, logvn(v))");
    }
    d.add_term(c, SymValue::rational(coef));
  }
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"x0n: series, Green function, theta lift and intersection checks on X_0(N)"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread hint (default: X0N_THREADS or 1)");

  std::string format = "json", out_path;
  app.add_option("--format", format, "output format: json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  // delta expand
  auto* delta_cmd = app.add_subcommand("delta", "generalized Delta function expansions");
  auto* expand = delta_cmd->add_subcommand("expand", "q-expansion of Delta_N (or Delta_N | W_Q)");
  long dl_level = 1, dl_order = 50, dl_Q = 0;
  expand->add_option("--level", dl_level, "level N (square free)")->required();
  expand->add_option("--order", dl_order, "number of coefficients");
  expand->add_option("--atkin-lehner", dl_Q, "exact divisor Q || N: expand Delta_N | W_Q");

  // identities
  auto* ident = app.add_subcommand("identities", "exponent-system identities for all square-free N <= M");
  long id_max = 210;
  ident->add_option("--level-max", id_max, "largest level to test");

  // klf
  auto* klf = app.add_subcommand("klf", "Kronecker limit formula residual");
  long klf_level = 1;
  std::string klf_z = "0.0,1.0";
  double klf_tol = 1e-6;
  long klf_order = 240;
  klf->add_option("--level", klf_level)->required();
  klf->add_option("--z", klf_z, "evaluation point re,im");
  klf->add_option("--tol", klf_tol, "residual tolerance");
  klf->add_option("--order", klf_order, "Delta_N expansion order");

  // green
  auto* green = app.add_subcommand("green", "Kudla Green function evaluation");
  long gr_level = 1, gr_r = 0;
  std::string gr_n = "0", gr_z = "0.0,2.0", gr_ygrid = "4,6,8,12";
  double gr_v = 1.0, gr_tol = 1e-8;
  green->add_option("--level", gr_level)->required();
  green->add_option("--r", gr_r, "coset r in Z/2N");
  green->add_option("--n", gr_n, "norm n as P/Q");
  green->add_option("--v", gr_v, "imaginary part v > 0");
  green->add_option("--z", gr_z, "evaluation point re,im");
  green->add_option("--tol", gr_tol);
  auto* cuspchk = green->add_subcommand("cusp-check", "residual sequence at the cusp");
  cuspchk->fallthrough();  // --level etc. stay valid after the subcommand
  cuspchk->add_option("--y-grid", gr_ygrid, "comma separated increasing y values");

  // thetalift
  auto* lift = app.add_subcommand("thetalift", "both sides of the Eisenstein theta-lift identity");
  long tl_level = 1;
  std::string tl_tau = "0.0,1.0";
  double tl_s = 2.0, tl_bound = 600.0, tl_tol = 1e-3;
  lift->add_option("--level", tl_level)->required();
  lift->add_option("--tau", tl_tau, "tau as re,im");
  lift->add_option("--s", tl_s, "spectral parameter, Re s > 1");
  lift->add_option("--bound", tl_bound, "coset truncation for E_L");
  lift->add_option("--tol", tl_tol, "relative residual tolerance");

  // degrees
  auto* degrees = app.add_subcommand("degrees", "degree table of the arithmetic rows");
  long dg_level = 1;
  std::string dg_nmax = "2", dg_v = "1";
  degrees->add_option("--level", dg_level)->required();
  degrees->add_option("--n-max", dg_nmax, "largest |n| (rational)");
  degrees->add_option("--v", dg_v, "v parameter (rational)");

  // intersect
  auto* inter = app.add_subcommand("intersect", "symbolic pairing of encoded divisors");
  long in_level = 1;
  std::string in_a, in_b;
  inter->add_option("--level", in_level)->required();
  inter->add_option("--a", in_a, "divisor expression")->required();
  inter->add_option("--b", in_b, "divisor expression")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (expand->parsed()) {
      Level lv(dl_level);
      PowerSeries series = (dl_Q >= 2) ? atkin_lehner(lv, dl_Q, dl_order).second
                                       : delta_n(lv, dl_order).series;
      if (format == "csv") {
        emit(series.to_csv(), out_path);
      } else if (dl_Q >= 2) {
        auto [CQ, s] = atkin_lehner(lv, dl_Q, dl_order);
        json j = json::parse(s.to_json());
        j["C_Q"] = rat_to_string(CQ);
        emit(j.dump(2), out_path);
      } else {
        emit(json::parse(series.to_json()).dump(2), out_path);
      }
      return 0;
    }
    if (ident->parsed()) {
      json rows = json::array();
      bool all_ok = true;
      for (long N = 1; N <= id_max; ++N) {
        if (!is_squarefree(N)) continue;
        Level lv(N);
        auto id = exponent_identities(lv);
        all_ok &= id.ok;
        rows.push_back({{"N", N},
                        {"sum_a", id.sum_a},
                        {"sum_ta", id.sum_ta},
                        {"sum_a_over_t", rat_to_string(id.sum_a_over_t)},
                        {"status", id.ok ? "ok" : "FAIL"}});
      }
      json j{{"rows", rows}, {"all_ok", all_ok}};
      emit(j.dump(2), out_path);
      return all_ok ? 0 : 2;
    }
    if (klf->parsed()) {
      Level lv(klf_level);
      cplx z = parse_complex(klf_z);
      auto dn = delta_n(lv, klf_order);
      auto kp = kronecker_limit_pair(lv, z, dn.series);
      json j{{"lhs", kp.lhs}, {"rhs", kp.rhs}, {"residual", kp.diff}, {"tol", klf_tol},
             {"pass", kp.diff <= klf_tol}};
      emit(j.dump(2), out_path);
      return kp.diff <= klf_tol ? 0 : 2;
    }
    if (green->parsed()) {
      Level lv(gr_level);
      Rat n = parse_rat_cli(gr_n);
      if (cuspchk->parsed()) {
        std::vector<double> ys;
        std::string g = gr_ygrid;
        size_t a = 0;
        while (a <= g.size()) {
          auto comma = g.find(',', a);
          std::string tok = comma == std::string::npos ? g.substr(a) : g.substr(a, comma - a);
          if (!tok.empty()) ys.push_back(std::stod(tok));
          if (comma == std::string::npos) break;
          a = comma + 1;
        }
        auto ca = cusp_asymptotic_residual(lv, gr_r, n, gr_v, ys, gr_tol);
        json rows = json::array();
        for (auto& row : ca.rows)
          rows.push_back({{"y", row.y}, {"xi", row.xi}, {"residual", row.residual}});
        json j{{"rows", rows}, {"limit", ca.limit}, {"monotone_trend", ca.monotone_trend}};
        emit(j.dump(2), out_path);
        return ca.monotone_trend ? 0 : 2;
      }
      auto ge = kudla_green(lv, gr_r, n, gr_v, parse_complex(gr_z), gr_tol);
      auto gc = green_cusp_constant(lv, gr_r, n, gr_v);
      json j{{"value_re", ge.value}, {"value_im", 0.0}, {"tail_bound", ge.tail_bound},
             {"g_constant", gc.value}, {"square_case", gc.square_case}};
      emit(j.dump(2), out_path);
      return 0;
    }
    if (lift->parsed()) {
      Level lv(tl_level);
      if (tl_s <= 1.0) {
        std::cerr << "thetalift: s must exceed 1 (no analytic continuation in scope)\n";
        return 1;
      }
      cplx tau = parse_complex(tl_tau);
      auto vv = vv_eisenstein(lv, tau, tl_s, tl_bound, threads);
      auto f = [&](cplx z) { return eisenstein_fourier(lv, z, tl_s); };
      auto li = theta_lift(lv, f, tau, 2e-4, 5.0, threads);
      double zst = zeta_star(tl_s);
      json comps = json::array();
      double worst = 0;
      for (size_t j = 0; j < vv.curly.size(); ++j) {
        cplx rhs = zst * vv.curly[j];
        double rel = std::abs(li.I[j] - rhs) / std::max(1e-300, std::abs(rhs));
        worst = std::max(worst, rel);
        comps.push_back({{"mu", j},
                         {"re", li.I[j].real()},
                         {"im", li.I[j].imag()},
                         {"err_bound", li.err_estimate},
                         {"rhs_re", rhs.real()},
                         {"rhs_im", rhs.imag()},
                         {"rel_residual", rel}});
      }
      if (format == "csv") {
        emit(quadrature_trace_csv(li), out_path);
        return worst <= tl_tol ? 0 : 2;
      }
      json j{{"components", comps}, {"worst_rel_residual", worst},
             {"EL_tail_estimate", vv.tail_estimate}, {"lift_err_estimate", li.err_estimate},
             {"tol", tl_tol}, {"pass", worst <= tl_tol}};
      emit(j.dump(2), out_path);
      return worst <= tl_tol ? 0 : 2;
    }
    if (degrees->parsed()) {
      Level lv(dg_level);
      auto rows = degree_series(lv, parse_rat_cli(dg_v), parse_rat_cli(dg_nmax));
      if (format == "csv") {
        std::string text = "n,r,degree_numeric,degree_symbolic\n";
        for (auto& row : rows)
          text += rat_to_string(row.n) + "," + std::to_string(row.r) + "," +
                  std::to_string(row.degree.numeric(lv)) + ",\"" + row.degree.str() + "\"\n";
        emit(text, out_path);
      } else {
        json jr = json::array();
        for (auto& row : rows)
          jr.push_back({{"n", rat_to_string(row.n)}, {"r", row.r},
                        {"degree", sym_to_json(row.degree)},
                        {"degree_numeric", row.degree.numeric(lv)}});
        emit(json{{"rows", jr}}.dump(2), out_path);
      }
      return 0;
    }
    if (inter->parsed()) {
      Level lv(in_level);
      ArithDivisor A = parse_divisor(lv, in_a), B = parse_divisor(lv, in_b);
      SymValue val = pair(lv, A, B);
      json j{{"pair", {in_a, in_b}}, {"value", sym_to_json(val)},
             {"numeric", val.numeric(lv)}};
      emit(j.dump(2), out_path);
      return 0;
    }
  } catch (const PairingUndefined& e) {
    std::cerr << "error: " << e.what() << " by the encoded table\n";
    return 1;
  } catch (const PrecisionError& e) {
    json j{{"error", "precision"}, {"detail", e.what()}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
