#include "qform/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qform/bounds.hpp"
#include "qform/eisenstein.hpp"
#include "qform/enumerate.hpp"
#include "qform/errors.hpp"
#include "qform/modular.hpp"
#include "qform/padic.hpp"
#include "qform/sieve.hpp"

namespace qform {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::string fmt(long double x) {
  std::ostringstream s;
  s.precision(8);
  s << static_cast<double>(x);
  return s.str();
}

QuadForm random_diagonal(Rng& rng, int m, long max_coeff) {
  std::vector<Integer> c;
  for (int i = 0; i < m; ++i) c.push_back(uniform(rng, 1, max_coeff));
  return QuadForm::from_diagonal(c);
}

// Random positive definite even Gram matrix with small entries.
QuadForm random_dense(Rng& rng, int m, long max_diag, long max_off) {
  for (;;) {
    IntMatrix g(m, m);
    for (int i = 0; i < m; ++i) {
      g(i, i) = 2 * uniform(rng, 1, max_diag);
      for (int k = i + 1; k < m; ++k) g(i, k) = g(k, i) = uniform(rng, -max_off, max_off);
    }
    try {
      return QuadForm::from_gram(g);
    } catch (const Error&) {
    }
  }
}

IntMatrix random_unimodular(Rng& rng, int m) {
  IntMatrix u = IntMatrix::identity(m);
  for (int step = 0; step < 3 * m; ++step) {
    int i = static_cast<int>(uniform(rng, 0, m - 1)), k = static_cast<int>(uniform(rng, 0, m - 1));
    if (i == k) continue;
    long f = uniform(rng, -2, 2);
    for (int r = 0; r < m; ++r) u(r, k) += f * u(r, i);
  }
  return u;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

CriterionResult make(const std::string& id, const std::string& title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  return r;
}

// Runs body; an exception marks the criterion failed with its message.
CriterionResult guarded(const std::string& id, const std::string& title,
                        const std::function<void(CriterionResult&)>& body) {
  CriterionResult r = make(id, title);
  Timer t;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.measured += std::string(r.measured.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = t.seconds();
  return r;
}

struct DensityCase {
  QuadForm q;
  Integer p, n;
};

std::vector<DensityCase> density_corpus(unsigned long long seed) {
  Rng rng(seed);
  std::vector<DensityCase> out;
  const long primes[] = {3, 5, 7, 11};
  out.push_back({QuadForm::from_diagonal({1, 1, 1}), 3, 1});
  while (out.size() < 520) {
    int m = static_cast<int>(uniform(rng, 3, 5));
    out.push_back({random_diagonal(rng, m, 27), primes[uniform(rng, 0, 3)], uniform(rng, 1, 200)});
  }
  return out;
}

std::vector<QuadForm> form_corpus(unsigned long long seed) {
  Rng rng(seed + 1);
  std::vector<QuadForm> out;
  for (int i = 0; i < 100; ++i) out.push_back(random_diagonal(rng, static_cast<int>(uniform(rng, 3, 5)), 27));
  for (int i = 0; i < 100; ++i) out.push_back(random_dense(rng, static_cast<int>(uniform(rng, 3, 5)), 10, 4));
  return out;
}

CriterionResult criterion1(const VerifyOptions& o) {
  return guarded("1", "yang_odd = bruteforce on random diagonal forms", [&](CriterionResult& r) {
    Timer t;
    int ok = 0, total = 0;
    std::string first_bad;
    for (const auto& c : density_corpus(o.seed)) {
      LocalDensity y = density(c.q, c.p, c.n, DensityMethod::YangOdd);
      LocalDensity b = density(c.q, c.p, c.n, DensityMethod::Bruteforce);
      ++total;
      if (y.value == b.value && y.surd_part == 0)
        ++ok;
      else if (first_bad.empty())
        first_bad = " first mismatch p=" + c.p.get_str() + " n=" + c.n.get_str();
    }
    Rational pinned = density(QuadForm::from_diagonal({1, 1, 1}), 3, 1, DensityMethod::YangOdd).value;
    double secs = t.seconds();
    r.pass = ok == total && total >= 500 && pinned == Rational(2, 3) && secs < 300;
    r.measured = std::to_string(ok) + "/" + std::to_string(total) + " exact, beta_3(2I3,1)=" + to_string(pinned) +
                 ", " + fmt(secs) + "s" + first_bad;
  });
}

CriterionResult criterion2(const VerifyOptions& o) {
  return guarded("2", "siegel_unramified = bruteforce when p does not divide 2nN", [&](CriterionResult& r) {
    int ok = 0, total = 0;
    for (const auto& c : density_corpus(o.seed)) {
      if (mpz_divisible_p(Integer(2 * c.n * c.q.level()).get_mpz_t(), c.p.get_mpz_t())) continue;
      ++total;
      if (density(c.q, c.p, c.n, DensityMethod::SiegelUnramified).value ==
          density(c.q, c.p, c.n, DensityMethod::Bruteforce).value)
        ++ok;
    }
    Rational pinned = density(QuadForm::from_diagonal({1, 1}), 3, 1, DensityMethod::SiegelUnramified).value;
    r.pass = ok == total && total > 0 && pinned == Rational(4, 3);
    r.measured = std::to_string(ok) + "/" + std::to_string(total) + " exact, beta_3(x^2+y^2,1)=" + to_string(pinned);
  });
}

CriterionResult criterion3(const VerifyOptions&) {
  return guarded("3", "genus coefficients of 2*I4 reproduce 8 sigma(n)", [&](CriterionResult& r) {
    Timer t;
    const QuadForm q = QuadForm::from_diagonal({1, 1, 1, 1});
    long double worst = 0;
    long worst_n = 0;
    for (long n = 1; n <= 199; n += 2) {
      long double g = genus_coefficient(q, n, 100000).value;
      long double e = 8 * to_ld(sigma(Integer(n)));
      long double rel = std::fabs(g - e) / e;
      if (rel > worst) worst = rel, worst_n = n;
    }
    double secs = t.seconds();
    r.pass = worst <= 0.02 && secs < 120;
    r.measured = "max rel err " + fmt(worst) + " at n=" + std::to_string(worst_n) + ", " + fmt(secs) + "s";
  });
}

CriterionResult criterion4(const VerifyOptions& o) {
  return guarded("4", "level_from_local = level on random forms", [&](CriterionResult& r) {
    int ok = 0, total = 0;
    for (const QuadForm& q : form_corpus(o.seed)) {
      std::vector<JordanDecomposition> ds;
      for (const Integer& p : prime_divisors(Integer(2 * q.det()))) ds.push_back(jordan_exact(q, p));
      ++total;
      if (level_from_local(q, ds) == q.level()) ++ok;
    }
    r.pass = ok == total;
    r.measured = std::to_string(ok) + "/" + std::to_string(total) + " exact";
  });
}

CriterionResult criterion5(const VerifyOptions& o) {
  return guarded("5", "F(Q,s) identities, bracketing, monotonicity, invariance", [&](CriterionResult& r) {
    Rng rng(o.seed + 2);
    int ok = 0, total = 0;
    std::string bad;
    for (const QuadForm& q : form_corpus(o.seed)) {
      const int m = q.dim();
      const QuadForm q2 = transform(q, random_unimodular(rng, m));
      bool good = true;
      std::vector<Integer> vals;
      for (int s = 1; s <= m; ++s) {
        FInvariant f = f_invariant(q, s), f2 = f_invariant(q2, s);
        if (!f.exact_integer || !f2.exact_integer || *f.exact_integer != *f2.exact_integer) good = false;
        if (f.exact_integer) vals.push_back(*f.exact_integer);
      }
      if (good) {
        if (vals.back() != q.det()) good = false;
        if (2 * vals.front() < q.level()) good = false;
        for (std::size_t i = 1; i < vals.size(); ++i)
          if (vals[i] < vals[i - 1]) good = false;
      }
      ++total;
      if (good)
        ++ok;
      else if (bad.empty())
        bad = " first failure det=" + q.det().get_str();
    }
    r.pass = ok == total;
    r.measured = std::to_string(ok) + "/" + std::to_string(total) + " forms satisfy all four properties" + bad;
  });
}

CriterionResult criterion6(const VerifyOptions&) {
  return guarded("6", "sieve constant m* at tau = 3/58", [&](CriterionResult& r) {
    Timer t;
    Optimum opt = optimize_m();
    double secs = t.seconds();
    r.pass = std::fabs(opt.m_star - 71.3875L) <= 0.01L && std::fabs(opt.zeta_star - 0.0561L) <= 0.001L && opt.r == 72 &&
             std::fabs(opt.grid_zeta - opt.zeta_star) <= 1e-6L && secs < 1;
    r.measured = "zeta*=" + fmt(opt.zeta_star) + " m*=" + fmt(opt.m_star) + " grid m=" + fmt(opt.grid_m) +
                 " r=" + std::to_string(opt.r) + ", " + fmt(secs) + "s";
  });
}

CriterionResult criterion7(const VerifyOptions&) {
  return guarded("7", "inclusion-exclusion identity for |A_d|", [&](CriterionResult& r) {
    int ok = 0, total = 0;
    for (long n : {27, 51, 99, 123, 147})
      for (long d = 1; d <= 15; ++d) {
        if (!is_squarefree(Integer(d))) continue;
        IdentityCheck c = sieve_identity_check(n, d);
        ++total;
        if (c.pass) ++ok;
      }
    IdentityCheck a = sieve_identity_check(27, 5), b = sieve_identity_check(27, 3);
    bool worked = a.pass && a.lhs == 24 && b.pass && b.lhs == 8;
    r.pass = ok == total && worked;
    r.measured = std::to_string(ok) + "/" + std::to_string(total) + " exact; (27,5)->" + a.lhs.get_str() +
                 ", (27,3)->" + b.lhs.get_str();
  });
}

CriterionResult criterion8(const VerifyOptions& o) {
  return guarded("8", "transformation data: S valid with level <= N; |a(n)| = r(NQ^-1,n)/sqrt(det Q)",
                 [&](CriterionResult& r) {
                   Rng rng(o.seed + 3);
                   int valid = 0, cases = 0, fourier_ok = 0, fourier_cases = 0;
                   long double worst = 0;
                   while (cases < 100) {
                     int m = static_cast<int>(uniform(rng, 3, 4));
                     QuadForm q = (uniform(rng, 0, 1) == 0) ? random_diagonal(rng, m, 6) : random_dense(rng, m, 4, 2);
                     if (q.level() > 50) continue;
                     const long N = q.level().get_si();
                     SL2 rho;
                     rho.c = uniform(rng, 1, 2 * N);
                     if (mpz_divisible_p(rho.c.get_mpz_t(), q.level().get_mpz_t())) continue;
                     do rho.d = uniform(rng, -3 * N, 3 * N);
                     while (gcd(rho.c, rho.d) != 1);
                     Integer g, s, t;
                     mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rho.d.get_mpz_t(), rho.c.get_mpz_t());
                     rho.a = s;
                     rho.b = -t;
                     ++cases;
                     TransformData td = transform_data(q, rho);
                     const IntMatrix& S = td.S.gram();
                     bool ok = td.S.dim() == m && td.S.level() <= q.level();
                     for (int i = 0; i < m; ++i)
                       if (mpz_odd_p(Integer(S(i, i)).get_mpz_t())) ok = false;
                     if (ok) ++valid;
                     if (gcd(rho.c, q.level()) != 1) continue;
                     ++fourier_cases;
                     std::vector<long double> mag = fourier_magnitudes(q, rho, 10);
                     ThetaCoefficients dual = theta_coefficients(dual_form(q), 10);
                     const long double sd = std::sqrt(to_ld(q.det()));
                     long double err = std::fabs(mag[0] - 1 / sd);
                     for (int n = 1; n <= 10; ++n) err = std::max(err, std::fabs(mag[n] - to_ld(dual.r[n - 1]) / sd));
                     worst = std::max(worst, err);
                     if (err <= 1e-6L) ++fourier_ok;
                   }
                   r.pass = valid == cases && fourier_ok == fourier_cases && fourier_cases > 0;
                   r.measured = "S valid " + std::to_string(valid) + "/" + std::to_string(cases) + "; Fourier " +
                                std::to_string(fourier_ok) + "/" + std::to_string(fourier_cases) +
                                " coprime cases, max err " + fmt(worst);
                 });
}

std::vector<CriterionResult> criterion9(const VerifyOptions& o) {
  std::vector<CriterionResult> out;
  NormOptions base;
  base.threads = o.threads;
  out.push_back(guarded("9a", "g-mode vanishes on a class pair", [&](CriterionResult& r) {
    Rng rng(o.seed + 4);
    long double worst = 0;
    for (const QuadForm& q : {QuadForm::from_diagonal({1, 1, 1}), QuadForm::from_diagonal({1, 1, 3})}) {
      NormEstimate e = petersson_norm_g(q, transform(q, random_unimodular(rng, 3)), base);
      worst = std::max(worst, e.value);
    }
    r.pass = worst <= 1e-8L;
    r.measured = "max value " + fmt(worst);
  }));
  out.push_back(guarded("9b", "refinement_delta <= 2% for ternary N <= 12", [&](CriterionResult& r) {
    std::vector<QuadForm> forms{QuadForm::from_diagonal({1, 1, 1}), QuadForm::from_diagonal({1, 1, 2}),
                                QuadForm::from_diagonal({1, 2, 2}), QuadForm::from_diagonal({1, 1, 3}),
                                QuadForm::from_gram(IntMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, 2}})};
    long double worst = 0;
    for (const QuadForm& q : forms) {
      if (q.level() > 12) raise(ErrorKind::InvalidArgument, "corpus form with level above 12");
      worst = std::max(worst, petersson_norm_f(q, base).refinement_delta);
    }
    r.pass = worst <= 0.02L;
    r.measured = "max refinement_delta " + fmt(worst) + " over " + std::to_string(forms.size()) + " forms";
  }));
  out.push_back(guarded("9c", "f-mode between 0.01 x thm3 and 100 x thm2 for x^2+y^2+N'z^2", [&](CriterionResult& r) {
    NormOptions deep = base;
    deep.im_floor = 1e-5L;  // the cusps of level 48 reach Im ~ 2e-4
    bool lower = true, upper = true;
    for (long np : {4, 8, 12}) {
      QuadForm q = QuadForm::from_diagonal({1, 1, np});
      long double v = petersson_norm_f(q, deep).value;
      long double lo = thm3_bound(q).value, hi = thm2_bound(q).value;
      lower = lower && v >= 0.01L * lo;
      upper = upper && v <= 100 * hi;
      r.measured += (r.measured.empty() ? "" : "; ") + std::string("N'=") + std::to_string(np) + ": " + fmt(v) +
                    " vs [" + fmt(0.01L * lo) + ", " + fmt(100 * hi) + "]";
    }
    r.pass = lower && upper;
    // These genera have one class, so <f,f> = 0 and the lower bracket cannot hold.
    if (!lower && upper) {
      r.documented_failure = true;
      r.measured += "; one-class genera: true norm is 0";
    }
  }));
  return out;
}

CriterionResult criterion10(const VerifyOptions& o) {
  return guarded("10", "Lagrange sweep vs threshold; Hanke bound <= density", [&](CriterionResult& r) {
    const QuadForm q = QuadForm::from_diagonal({1, 1, 1, 1});
    ThetaCoefficients t = theta_coefficients(q, 10000);
    long zeros = 0;
    for (const auto& v : t.r)
      if (v < 1) ++zeros;
    BoundReport th = threshold_m45(q, 1, 1);
    bool thr = std::fabs(th.values.at(0) - 576) < 1e-9L;
    Rng rng(o.seed + 5);
    int ok = 0, total = 0, positive = 0;
    const long primes[] = {2, 3, 5, 7};
    while (total < 200) {
      int m = static_cast<int>(uniform(rng, 4, 5));
      QuadForm f = random_diagonal(rng, m, 12);
      Integer p = primes[uniform(rng, 0, 3)], n = uniform(rng, 1, 100);
      Rational beta = density(f, p, n).value;
      if (beta == 0) continue;
      HankeResult h = hanke_lower_bound(f, p, n);
      ++total;
      if (h.bound > 0) ++positive;
      if (h.bound <= to_ld(beta) * (1 + 1e-12L)) ++ok;
    }
    r.pass = zeros == 0 && thr && ok == total;
    r.measured = "r(2I4,n)=0 for " + std::to_string(zeros) + " n<=1e4; threshold " + fmt(th.values.at(0)) +
                 "; Hanke " + std::to_string(ok) + "/" + std::to_string(total) + " (" + std::to_string(positive) +
                 " nonzero bounds)";
  });
}

CriterionResult criterion11(const VerifyOptions& o) {
  return guarded("11", "almost-prime survey n <= 50000: min Omega <= 10", [&](CriterionResult& r) {
    Timer t;
    auto s = min_omega_survey(1, 50000, o.threads);
    int worst = 0;
    long skipped = 0;
    for (const auto& [n, e] : s) {
      worst = std::max(worst, e.min_omega);
      if (e.skipped) ++skipped;
    }
    double secs = t.seconds();
    r.pass = skipped == 0 && worst <= 10 && !s.empty() && secs < 600;
    r.measured = std::to_string(s.size()) + " admissible n, max min-Omega " + std::to_string(worst) + ", skipped " +
                 std::to_string(skipped) + ", " + fmt(secs) + "s";
  });
}

CriterionResult criterion12(const VerifyOptions&) {
  return guarded("12", "smooth search hits re-verify; split_e Legendre condition", [&](CriterionResult& r) {
    int hits[2] = {0, 0}, verified[2] = {0, 0}, empty = 0;
    for (long k = 0; k < 20; ++k) {
      for (SmoothVariant v : {SmoothVariant::Plain, SmoothVariant::SplitE}) {
        // split_e needs n well above (e1 e2 e3)^2 for solutions to exist.
        const bool plain = v == SmoothVariant::Plain;
        Integer n = (plain ? Integer(100000003) : Integer("100000000003")) + 8 * 1009 * k;
        SmoothResult s = smooth_search(n, 0.05L, plain ? 16 : 32, v);
        if (s.empty_window) ++empty;
        if (!s.found) continue;
        int i = v == SmoothVariant::Plain ? 0 : 1;
        ++hits[i];
        if (verify_smooth(n, s, v).empty()) ++verified[i];
      }
    }
    r.pass = hits[0] > 0 && hits[1] > 0 && verified[0] == hits[0] && verified[1] == hits[1];
    r.measured = "plain " + std::to_string(verified[0]) + "/" + std::to_string(hits[0]) + " verified, split_e " +
                 std::to_string(verified[1]) + "/" + std::to_string(hits[1]) + " verified, empty windows " +
                 std::to_string(empty);
  });
}

}  // namespace

bool valid_suite(const std::string& s) {
  return s == "local" || s == "counting" || s == "transform" || s == "sieve" || s == "all";
}

std::string format_result(const CriterionResult& r) {
  std::string status = r.pass ? "PASS" : (r.documented_failure ? "FAIL (documented)" : "FAIL");
  return "[" + status + "] criterion " + r.id + ": " + r.title + " -- " + r.measured + " (" + fmt(r.seconds) + "s)";
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, const VerifyOptions& opts, std::ostream* live) {
  if (!valid_suite(suite)) raise(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
  std::vector<CriterionResult> out;
  auto add = [&](CriterionResult r) {
    if (live) *live << format_result(r) << std::endl;
    out.push_back(std::move(r));
  };
  const bool all = suite == "all";
  if (all || suite == "local") {
    add(criterion1(opts));
    add(criterion2(opts));
  }
  if (all || suite == "counting") add(criterion3(opts));
  if (all || suite == "local") {
    add(criterion4(opts));
    add(criterion5(opts));
  }
  if (all || suite == "sieve") {
    add(criterion6(opts));
    add(criterion7(opts));
  }
  if (all || suite == "transform") {
    add(criterion8(opts));
    for (auto& r : criterion9(opts)) add(std::move(r));
  }
  if (all || suite == "counting") add(criterion10(opts));
  if (all || suite == "sieve") {
    add(criterion11(opts));
    add(criterion12(opts));
  }
  return out;
}

}  // namespace qform
