#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <iostream>
#include <sstream>

#include "qform/acceptance.hpp"
#include "qform/bounds.hpp"
#include "qform/cli.hpp"
#include "qform/eisenstein.hpp"
#include "qform/enumerate.hpp"
#include "qform/errors.hpp"
#include "qform/modular.hpp"
#include "qform/padic.hpp"
#include "qform/sieve.hpp"

namespace qform {

const char* const kCodeVersion = "qform-1.0.0";

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Integer parse_integer(const std::string& what, const std::string& s) {
  Integer x;
  if (s.empty() || x.set_str(s, 10) != 0) throw UsageError(what + " must be an integer, got '" + s + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Json num(long double x) { return sig12(x); }

Json rational_json(const Rational& x) { return to_string(x); }

Json matrix_json(const IntMatrix& a) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(integer_json(a(i, k)));
    out.push_back(row);
  }
  return out;
}

Json integers_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json density_json(const LocalDensity& d) {
  Json j;
  j["beta"] = rational_json(d.value);
  j["method"] = method_name(d.method);
  j["p"] = integer_json(d.p);
  j["n"] = integer_json(d.n);
  j["value"] = num(to_ld(d.value));
  if (d.method == DensityMethod::Bruteforce) j["stabilization"] = Json{{"a", d.a_used}, {"agreements", d.agreements}};
  if (d.surd_part != 0) j["surd_part"] = rational_json(d.surd_part);
  return j;
}

Json report_json(const BoundReport& r) {
  Json j;
  j["kind"] = bound_kind_name(r.kind);
  Json in = Json::object();
  for (const auto& [k, v] : r.inputs) in[k] = v;
  j["inputs"] = in;
  j["value"] = num(r.value);
  if (!r.values.empty()) {
    Json vs = Json::array();
    for (auto v : r.values) vs.push_back(num(v));
    j["values"] = vs;
  }
  j["composition"] = r.composition;
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(Json{{"label", t.label}, {"value", num(t.value)}});
  j["trace"] = terms;
  return j;
}

struct Context {
  RunConfig cfg;
  Cache cache{""};
};

// Looks the result up by content hash, else computes and stores it.
template <typename F>
Json cached(Context& ctx, const std::string& op, const Json& params, F&& compute) {
  const std::string key = Cache::key(std::string(kCodeVersion) + "\n" + op + "\n" + params.dump());
  if (auto hit = ctx.cache.get(key)) return *hit;
  Json value = compute();
  ctx.cache.put(key, value);
  return value;
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

Integer require_prime(const std::string& s) {
  Integer p = parse_integer("p", s);
  if (p < 2 || !is_prime(p)) throw UsageError("p must be prime, got " + s);
  return p;
}

SL2 parse_rho(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 4) throw UsageError("--rho needs a,b,c,d");
  SL2 r;
  r.a = parse_integer("a", parts[0]);
  r.b = parse_integer("b", parts[1]);
  r.c = parse_integer("c", parts[2]);
  r.d = parse_integer("d", parts[3]);
  if (r.a * r.d - r.b * r.c != 1) throw UsageError("rho must have determinant 1");
  if (r.c == 0) throw UsageError("rho needs c != 0");
  return r;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact tools for positive definite quadratic forms: densities, theta series, bounds, sieve"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, cache_dir;
  int threads = 0;
  bool no_cache = false;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--cache-dir", cache_dir, "result cache directory");
  app.add_flag("--no-cache", no_cache, "disable the result cache");
  app.add_option("--threads", threads, "worker threads");

  std::string form_path, form2_path, p_str, n_str, method = "auto", kind = "all", rho_str, mode = "f", grid,
                                                   coset_depth = "full", l_str, d_str, tau = "3/58", variant = "plain",
                                                   z_str, beta_str = "1", gcd_str = "1";
  std::int64_t cutoff = 0, X = 0, from = 1, to = 0, dmax = 15;
  int fourier = -1, m_opt = 0;
  long double eps = -1, constant = -1, ymax = 10, im_floor = 1e-3L, eta = 0.05L, widen = 8, norm_value = 1,
              beta3 = 6.6408L;
  bool no_refine = false, tsv = false;
  std::string out_path;

  auto* form = app.add_subcommand("form", "validate a form and report its invariants");
  form->add_option("--form", form_path, "form JSON")->required();

  auto* dens = app.add_subcommand("density", "local density beta_p(Q, n)");
  dens->add_option("--form", form_path)->required();
  dens->add_option("--p", p_str)->required();
  dens->add_option("--n", n_str)->required();
  dens->add_option("--method", method, "auto | bruteforce | yang_odd | siegel_unramified");

  auto* gen = app.add_subcommand("genus", "genus theta coefficient r(gen Q, n)");
  gen->add_option("--form", form_path)->required();
  gen->add_option("--n", n_str)->required();
  gen->add_option("--cutoff", cutoff, "Euler product cutoff P");

  auto* theta = app.add_subcommand("theta", "theta coefficients r(Q, n) for n <= X, or theta(Q, z)");
  theta->add_option("--form", form_path)->required();
  theta->add_option("--upto,--X", X, "truncation")->required();
  theta->add_option("--out", out_path, "also write the report to this file");
  theta->add_option("--z", z_str, "re,im: evaluate theta(Q, z)");

  auto* trans = app.add_subcommand("transform", "cusp transformation data of theta(Q) under rho");
  trans->add_option("--form", form_path)->required();
  trans->add_option("--rho", rho_str, "a,b,c,d")->required();
  trans->add_option("--fourier", fourier, "also extract |a(n)| for n <= this bound");

  auto* norm = app.add_subcommand("norm", "Petersson norm estimate");
  norm->add_option("--form", form_path)->required();
  norm->add_option("--form2", form2_path, "second form (g mode)");
  norm->add_option("--mode", mode, "f | g");
  norm->add_option("--grid", grid, "NXxNY Gauss-Legendre nodes per coset");
  norm->add_option("--coset-depth", coset_depth, "full");
  norm->add_option("--ymax", ymax);
  norm->add_option("--im-floor", im_floor);
  norm->add_option("--cutoff", cutoff);
  norm->add_flag("--no-refine", no_refine);

  auto* bnd = app.add_subcommand("bounds", "bound evaluators");
  bnd->add_option("--form", form_path, "form JSON (not needed for eq13/eq21 with --m/--N)");
  bnd->add_option("--kind", kind, "all | thm1 | thm2 | thm3 | eq13 | eq21 | lemma41 | lemma42");
  bnd->add_option("--epsilon", eps);
  bnd->add_option("--constant", constant);
  bnd->add_option("--n", n_str, "n for coefficient bounds");
  bnd->add_option("--norm", norm_value, "norm of f for eq13/eq21");
  bnd->add_option("--m", m_opt, "dimension for eq13 without a form");
  bnd->add_option("--N", d_str, "level for eq13/eq21 without a form");
  bnd->add_option("--beta", beta_str, "beta for lemma42");
  bnd->add_option("--gcd", gcd_str, "bound for (n, N) in lemma42");

  auto* sieve = app.add_subcommand("sieve", "sieve applications");
  sieve->require_subcommand(1);
  auto* s_omega = sieve->add_subcommand("omega", "omega(l, n), or Omega(d) with --d");
  s_omega->add_option("--n", n_str)->required();
  s_omega->add_option("--l", l_str, "l1,l2,l3");
  s_omega->add_option("--d", d_str, "squarefree d");
  auto* s_ident = sieve->add_subcommand("identity", "inclusion-exclusion identity for squarefree d <= dmax");
  s_ident->add_option("--n", n_str)->required();
  s_ident->add_option("--dmax", dmax);
  auto* s_opt = sieve->add_subcommand("optimize", "minimize m(zeta)");
  s_opt->add_option("--tau", tau);
  s_opt->add_option("--beta3", beta3);
  auto* s_survey = sieve->add_subcommand("survey", "minimal Omega(x1 x2 x3) over admissible n");
  s_survey->add_option("--from", from);
  s_survey->add_option("--to", to)->required();
  s_survey->add_flag("--tsv", tsv, "stream a TSV table");
  auto* s_smooth = sieve->add_subcommand("smooth", "search n = sum d_i^2 x_i^2 with prime d_i in a window");
  s_smooth->add_option("--n", n_str)->required();
  s_smooth->add_option("--eta", eta);
  s_smooth->add_option("--widen", widen);
  s_smooth->add_option("--variant", variant, "plain | split_e");

  auto* ver = app.add_subcommand("verify", "run acceptance suites");
  std::string suite;
  ver->add_option("suite", suite, "local | counting | transform | sieve | all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  Context ctx;
  CLI::App* active = nullptr;
  try {
    if (!config_path.empty()) apply_config_file(ctx.cfg, config_path);
    apply_env(ctx.cfg);
    if (!cache_dir.empty()) ctx.cfg.cache_dir = cache_dir;
    if (no_cache) ctx.cfg.cache_dir.clear();
    if (threads > 0) ctx.cfg.threads = threads;
    if (tsv) ctx.cfg.format = "tsv";
    if (cutoff > 0) ctx.cfg.cutoff = cutoff;
    if (eps >= 0) ctx.cfg.epsilon = eps;
    if (constant >= 0) ctx.cfg.constant = constant;
    if (!grid.empty()) {
      auto parts = split(grid, 'x');
      if (parts.size() != 2) throw UsageError("--grid must look like 32x32");
      ctx.cfg.grid_nx = static_cast<int>(parse_integer("grid", parts[0]).get_si());
      ctx.cfg.grid_ny = static_cast<int>(parse_integer("grid", parts[1]).get_si());
    }
    validate_config(ctx.cfg);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
  ctx.cache = Cache(ctx.cfg.cache_dir);
  const RunConfig& cfg = ctx.cfg;
  BoundConfig bcfg{cfg.epsilon, cfg.constant};

  try {
    if (*form) {
      active = form;
      QuadForm q = load_form(form_path);
      Json params{{"form", form_to_json(q)}};
      emit(cached(ctx, "form", params, [&] {
        ReducedForm r = siegel_reduce(q);
        Json a = Json::array();
        for (const auto& x : r.a) a.push_back(rational_json(x));
        Json j;
        if (!q.name().empty()) j["name"] = q.name();
        j["dim"] = q.dim();
        j["gram"] = matrix_json(q.gram());
        j["det"] = integer_json(q.det());
        j["level"] = integer_json(q.level());
        j["level_scan"] = integer_json(level_by_scan(q));
        j["primitive"] = q.primitive();
        j["diagonal"] = q.is_diagonal();
        j["minimum"] = integer_json(minimum(q));
        j["dual"] = matrix_json(dual_form(q).gram());
        j["reduced"] = Json{{"a", a}, {"U", matrix_json(r.U)}, {"gram", matrix_json(r.gram)}};
        return j;
      }));
    } else if (*dens) {
      active = dens;
      QuadForm q = load_form(form_path);
      Integer p = require_prime(p_str), n = parse_integer("n", n_str);
      if (n < 1) throw UsageError("n must be positive");
      DensityMethod mth;
      try {
        mth = parse_method(method);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      Json params{{"form", form_to_json(q)}, {"p", p.get_str()}, {"n", n.get_str()}, {"method", method}};
      emit(cached(ctx, "density", params, [&] { return density_json(density(q, p, n, mth)); }));
    } else if (*gen) {
      active = gen;
      QuadForm q = load_form(form_path);
      Integer n = parse_integer("n", n_str);
      Json params{{"form", form_to_json(q)}, {"n", n.get_str()}, {"cutoff", cfg.cutoff}};
      emit(cached(ctx, "genus", params, [&] {
        GenusCoefficient g = genus_coefficient(q, n, cfg.cutoff);
        Json ram = Json::array();
        for (const auto& d : g.finite_part.ramified) ram.push_back(density_json(d));
        SpinorCheck sc = gen_eq_spn_check(q, n);
        Json j;
        j["n"] = integer_json(n);
        j["value"] = num(g.value);
        j["prefactor"] = num(g.archimedean);
        j["convergence_flag"] = convergence_name(g.convergence);
        j["finite_part"] = Json{{"value", num(g.finite_part.value)},
                                {"unramified", num(g.finite_part.unramified)},
                                {"last_decade_change", num(g.finite_part.last_decade_change)},
                                {"cutoff", g.finite_part.cutoff},
                                {"ramified", ram}};
        j["gen_eq_spn"] = Json{{"applies", sc.applies}, {"bullet", sc.bullet}, {"reason", sc.reason}};
        return j;
      }));
    } else if (*theta) {
      active = theta;
      QuadForm q = load_form(form_path);
      if (X < 1) throw UsageError("--X must be positive");
      Json params{{"form", form_to_json(q)}, {"X", X}, {"z", z_str}};
      Json report = cached(ctx, "theta", params, [&] {
        Json j;
        if (!z_str.empty()) {
          auto parts = split(z_str, ',');
          if (parts.size() != 2) throw UsageError("--z needs re,im");
          Complex z(std::stold(parts[0]), std::stold(parts[1]));
          ThetaValue v = theta_eval(q, z, X);
          j["re"] = num(v.value.real());
          j["im"] = num(v.value.imag());
          j["tail_bound"] = num(v.tail_bound);
          j["X"] = v.X;
        } else {
          EnumOptions eo;
          eo.node_budget = cfg.node_budget;
          eo.threads = cfg.threads;
          ThetaCoefficients t = theta_coefficients(q, X, eo);
          j["X"] = X;
          j["r"] = integers_json(t.r);
          j["nodes"] = t.nodes;
        }
        return j;
      });
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!(out << report.dump() << "\n")) throw UsageError("cannot write " + out_path);
      }
      emit(report);
    } else if (*trans) {
      active = trans;
      QuadForm q = load_form(form_path);
      SL2 rho = parse_rho(rho_str);
      Json params{{"form", form_to_json(q)}, {"rho", rho_str}, {"fourier", fourier}};
      emit(cached(ctx, "transform", params, [&] {
        TransformData td = transform_data(q, rho);
        Json j;
        j["rho"] = Json{integer_json(td.rho.a), integer_json(td.rho.b), integer_json(td.rho.c), integer_json(td.rho.d)};
        j["c_split"] = Json{{"c_odd", integer_json(td.c_odd)}, {"t", td.t}};
        j["U"] = matrix_json(td.U);
        j["D"] = integers_json(td.D);
        j["t_i"] = td.t_exp;
        j["d"] = integer_json(td.d);
        j["d_hat"] = integer_json(td.d_hat);
        j["S"] = matrix_json(td.S.gram());
        j["S_level"] = integer_json(td.S.level());
        j["eta_rule"] = td.eta_rule;
        j["amplitude"] = num(td.amplitude);
        if (fourier >= 0) {
          Json f = Json::array();
          for (auto v : fourier_magnitudes(q, rho, fourier)) f.push_back(num(v));
          j["fourier_magnitudes"] = f;
        }
        return j;
      }));
    } else if (*norm) {
      active = norm;
      if (coset_depth != "full") throw UsageError("--coset-depth supports only 'full'");
      if (mode != "f" && mode != "g") throw UsageError("--mode must be f or g");
      QuadForm q = load_form(form_path);
      std::optional<QuadForm> q2;
      if (mode == "g") {
        if (form2_path.empty()) throw UsageError("g mode needs --form2");
        q2 = load_form(form2_path);
      }
      NormOptions no;
      no.nx = cfg.grid_nx;
      no.ny = cfg.grid_ny;
      no.ymax = ymax;
      no.im_floor = im_floor;
      no.cutoff = cfg.cutoff;
      no.threads = cfg.threads;
      no.refine = !no_refine;
      Json params{{"form", form_to_json(q)}, {"form2", q2 ? form_to_json(*q2) : Json()}, {"mode", mode},
                  {"grid", std::to_string(no.nx) + "x" + std::to_string(no.ny)}, {"ymax", num(ymax)},
                  {"im_floor", num(im_floor)}, {"cutoff", no.cutoff}, {"refine", no.refine}};
      emit(cached(ctx, "norm", params, [&] {
        NormEstimate e = q2 ? petersson_norm_g(q, *q2, no) : petersson_norm_f(q, no);
        Json j;
        j["value"] = num(e.value);
        j["mode"] = e.mode;
        j["refinement_delta"] = num(e.refinement_delta);
        j["quadrature"] = Json{{"grid", std::to_string(e.nx) + "x" + std::to_string(e.ny)},
                               {"X", e.X},
                               {"cosets", e.cosets}};
        j["budget"] = Json{{"min_im", num(e.min_im)}, {"im_floor", num(im_floor)}, {"evaluations", e.evaluations}};
        return j;
      }));
    } else if (*bnd) {
      active = bnd;
      std::optional<QuadForm> q;
      if (!form_path.empty()) q = load_form(form_path);
      std::string k = kind;
      auto need_form = [&]() -> const QuadForm& {
        if (!q) throw UsageError("--kind " + k + " needs --form");
        return *q;
      };
      Json params{{"form", q ? form_to_json(*q) : Json()}, {"kind", k}, {"epsilon", num(cfg.epsilon)},
                  {"constant", num(cfg.constant)}, {"n", n_str}, {"norm", num(norm_value)}, {"m", m_opt},
                  {"N", d_str}, {"beta", beta_str}, {"gcd", gcd_str}};
      auto n_value = [&]() {
        if (n_str.empty()) throw UsageError("--kind " + k + " needs --n");
        return parse_integer("n", n_str);
      };
      auto level_value = [&]() { return d_str.empty() ? need_form().level() : parse_integer("N", d_str); };
      emit(cached(ctx, "bounds", params, [&] {
        Json out = Json::array();
        if (k == "all") {
          for (const auto& r : norm_bounds(need_form(), bcfg)) out.push_back(report_json(r));
        } else if (k == "thm1" || k == "thm2" || k == "thm3" || k == "thm2_diagonal" || k == "thm3_lower") {
          BoundKind bk = parse_bound_kind(k);
          const QuadForm& f = need_form();
          out.push_back(report_json(bk == BoundKind::Thm1   ? thm1_bound(f, bcfg)
                                    : bk == BoundKind::Thm3Lower ? thm3_bound(f, bcfg)
                                                                 : thm2_bound(f, bcfg)));
        } else if (k == "eq13") {
          int m = m_opt > 0 ? m_opt : need_form().dim();
          out.push_back(report_json(eq13_bound(norm_value, m, n_value(), level_value(), bcfg)));
        } else if (k == "eq21") {
          out.push_back(report_json(eq21_bound(norm_value, n_value(), level_value(), 0, bcfg)));
        } else if (k == "lemma41") {
          out.push_back(report_json(error_bound_m3(need_form(), n_value(), bcfg)));
        } else if (k == "lemma42") {
          Rational beta;
          try {
            beta = parse_rational(beta_str);
          } catch (const std::exception&) {
            throw UsageError("--beta must be rational");
          }
          out.push_back(report_json(threshold_m45(need_form(), beta, parse_integer("gcd", gcd_str), bcfg)));
        } else {
          throw UsageError("unknown --kind '" + k + "'");
        }
        return out;
      }));
    } else if (*sieve) {
      active = sieve;
      if (*s_omega) {
        active = s_omega;
        Integer n = parse_integer("n", n_str);
        if (!sieve_admissible(n)) raise(ErrorKind::InvalidArgument, "n must be 3 mod 24 and prime to 5");
        Json params{{"n", n.get_str()}, {"l", l_str}, {"d", d_str}};
        emit(cached(ctx, "sieve-omega", params, [&] {
          Json j;
          j["n"] = integer_json(n);
          if (!l_str.empty()) {
            auto parts = split(l_str, ',');
            if (parts.size() != 3) throw UsageError("--l needs l1,l2,l3");
            Triple l{parse_integer("l1", parts[0]), parse_integer("l2", parts[1]), parse_integer("l3", parts[2])};
            Rational w = omega_weight(l, n);
            j["l"] = Json{integer_json(l[0]), integer_json(l[1]), integer_json(l[2])};
            j["omega"] = rational_json(w);
            j["value"] = num(to_ld(w));
          }
          if (!d_str.empty()) {
            Integer d = parse_integer("d", d_str);
            Rational om = Omega_of_d(d, n);
            j["d"] = integer_json(d);
            j["Omega"] = rational_json(om);
            j["Omega_over_d"] = rational_json(Rational(om / d));
          }
          if (l_str.empty() && d_str.empty()) throw UsageError("sieve omega needs --l or --d");
          return j;
        }));
      } else if (*s_ident) {
        active = s_ident;
        Integer n = parse_integer("n", n_str);
        Json params{{"n", n.get_str()}, {"dmax", dmax}};
        emit(cached(ctx, "sieve-identity", params, [&] {
          Json checks = Json::array();
          bool all = true;
          for (std::int64_t d = 1; d <= dmax; ++d) {
            if (!is_squarefree(Integer(static_cast<long>(d)))) continue;
            IdentityCheck c = sieve_identity_check(n, static_cast<long>(d));
            all = all && c.pass;
            checks.push_back(Json{{"d", d}, {"lhs", integer_json(c.lhs)}, {"rhs", integer_json(c.rhs)}, {"pass", c.pass}});
          }
          return Json{{"n", integer_json(n)}, {"checks", checks}, {"all_pass", all}};
        }));
      } else if (*s_opt) {
        active = s_opt;
        SieveConfig sc;
        try {
          sc.tau = parse_rational(tau);
        } catch (const std::exception&) {
          throw UsageError("--tau must be rational");
        }
        sc.beta3 = beta3;
        Optimum o = optimize_m(sc);
        emit(Json{{"zeta", num(o.zeta_star)}, {"m", num(o.m_star)}, {"r", o.r},
                  {"grid", Json{{"zeta", num(o.grid_zeta)}, {"m", num(o.grid_m)}}}});
      } else if (*s_survey) {
        active = s_survey;
        // Entries are cached per (n, version).
        std::map<std::int64_t, Json> rows;
        bool complete = ctx.cache.enabled();
        if (complete) {
          for (std::int64_t n = std::max<std::int64_t>(from, 1); n <= to; ++n) {
            if (!sieve_admissible(Integer(static_cast<long>(n)))) continue;
            auto hit = ctx.cache.get(Cache::key(std::string(kCodeVersion) + "\nsurvey\n" + std::to_string(n)));
            if (!hit) {
              complete = false;
              break;
            }
            rows[n] = *hit;
          }
        }
        if (!complete) {
          rows.clear();
          for (const auto& [n, e] : min_omega_survey(from, to, cfg.threads)) {
            Json row{{"min_omega", e.min_omega},
                     {"witness", Json{e.witness[0], e.witness[1], e.witness[2]}},
                     {"skipped", e.skipped}};
            ctx.cache.put(Cache::key(std::string(kCodeVersion) + "\nsurvey\n" + std::to_string(n)), row);
            rows[n] = row;
          }
        }
        if (cfg.format == "tsv") {
          std::cout << "n\tmin_omega\tx1\tx2\tx3\tskipped\n";
          for (const auto& [n, r] : rows)
            std::cout << n << "\t" << r["min_omega"].get<int>() << "\t" << r["witness"][0] << "\t" << r["witness"][1]
                      << "\t" << r["witness"][2] << "\t" << (r["skipped"].get<bool>() ? 1 : 0) << "\n";
        } else {
          Json survey = Json::object();
          int worst = 0;
          for (const auto& [n, r] : rows) {
            survey[std::to_string(n)] = r;
            worst = std::max(worst, r["min_omega"].get<int>());
          }
          emit(Json{{"from", from}, {"to", to}, {"count", rows.size()}, {"max_min_omega", worst}, {"survey", survey}});
        }
      } else if (*s_smooth) {
        active = s_smooth;
        Integer n = parse_integer("n", n_str);
        SmoothVariant v;
        try {
          v = parse_smooth_variant(variant);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        SmoothResult r = smooth_search(n, eta, widen, v);
        Json j;
        j["n"] = integer_json(n);
        j["variant"] = smooth_variant_name(v);
        j["window"] = Json{num(r.window_lo), num(r.window_hi)};
        if (r.empty_window) {
          j["status"] = "EmptyWindow";
        } else if (!r.found) {
          j["status"] = "not_found";
        } else {
          j["status"] = "found";
          j[v == SmoothVariant::Plain ? "d_primes" : "e_primes"] = r.primes;
          j["d"] = Json{r.d[0], r.d[1], r.d[2]};
          j["x"] = Json{r.x[0], r.x[1], r.x[2]};
          j["largest_prime"] = r.largest_prime;
          j["prime_bound"] = num(r.prime_bound);
          std::string check = verify_smooth(n, r, v);
          j["verified"] = check.empty();
          if (!check.empty()) j["verify_error"] = check;
        }
        emit(j);
      }
    } else if (*ver) {
      active = ver;
      if (!valid_suite(suite)) throw UsageError("unknown suite '" + suite + "'");
      VerifyOptions vo;
      vo.threads = cfg.threads;
      auto results = run_acceptance(suite, vo, &std::cout);
      int passed = 0;
      for (const auto& r : results) passed += r.pass;
      std::cout << passed << "/" << results.size() << " criteria pass\n";
      return passed == static_cast<int>(results.size()) ? 0 : 4;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    if (active) std::cerr << active->help();
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_budget() ? 3 : 2;
  }
  return 0;
}

}  // namespace qform
