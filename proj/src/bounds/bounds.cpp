#include "qform/bounds.hpp"

#include <cmath>

#include "qform/errors.hpp"
#include "qform/padic.hpp"

namespace qform {

namespace {

long double lpow(long double b, long double e) { return std::pow(b, e); }

std::string str(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

void finish(BoundReport& r) { r.value = r.recompute(); }

void echo_common(BoundReport& r, const QuadForm& q, const BoundConfig& cfg) {
  r.inputs.push_back({"m", std::to_string(q.dim())});
  r.inputs.push_back({"det", q.det().get_str()});
  r.inputs.push_back({"level", q.level().get_str()});
  r.inputs.push_back({"epsilon", str(cfg.epsilon)});
  r.inputs.push_back({"constant", str(cfg.constant)});
}

long double F(const QuadForm& q, const Rational& s) { return f_invariant(q, s).value; }

}  // namespace

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Thm1: return "thm1";
    case BoundKind::Thm2Diagonal: return "thm2_diagonal";
    case BoundKind::Thm3Lower: return "thm3_lower";
    case BoundKind::Eq13Petersson: return "eq13_petersson";
    case BoundKind::Eq21DukeIwaniec: return "eq21_dukeiwaniec";
    case BoundKind::Lemma41Error: return "lemma41_error";
    case BoundKind::Lemma42Threshold: return "lemma42_threshold";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& s) {
  for (BoundKind k : {BoundKind::Thm1, BoundKind::Thm2Diagonal, BoundKind::Thm3Lower, BoundKind::Eq13Petersson,
                      BoundKind::Eq21DukeIwaniec, BoundKind::Lemma41Error, BoundKind::Lemma42Threshold})
    if (s == bound_kind_name(k)) return k;
  if (s == "thm2") return BoundKind::Thm2Diagonal;
  if (s == "thm3") return BoundKind::Thm3Lower;
  raise(ErrorKind::InvalidArgument, "unknown bound kind '" + s + "'");
}

long double BoundReport::recompute() const {
  if (composition == "product") {
    long double v = 1;
    for (const auto& t : terms) v *= t.value;
    return v;
  }
  long double v = 0;
  for (const auto& t : terms) v += t.value;
  return v;
}

BoundReport thm1_bound(const QuadForm& q, const BoundConfig& cfg) {
  const int m = q.dim();
  if (m < 3) raise(ErrorKind::DimensionTooSmall, "norm bounds need m >= 3");
  BoundReport r;
  r.kind = BoundKind::Thm1;
  echo_common(r, q, cfg);
  const long double N = to_ld(q.level()), det = to_ld(q.det()), c = cfg.constant, e = cfg.epsilon;
  if (m == 3) {
    r.terms.push_back({"c*N^(1+eps)/det^(1/3)", c * lpow(N, 1 + e) / std::cbrt(det)});
  } else if (m == 4) {
    r.terms.push_back({"c*N^(2+eps)/F(Q,2)", c * lpow(N, 2 + e) / F(q, 2)});
    r.terms.push_back({"c*N^(1+eps)/det^(1/4)", c * lpow(N, 1 + e) / lpow(det, 0.25L)});
  } else {
    Rational s = Rational(m - 1, 2) - Rational(1, m);
    s.canonicalize();
    r.terms.push_back({"c*N^(m/2+eps)/F(Q," + to_string(s) + ")", c * lpow(N, m / 2.0L + e) / F(q, s)});
  }
  finish(r);
  return r;
}

BoundReport thm2_bound(const QuadForm& q, const BoundConfig& cfg) {
  const int m = q.dim();
  if (m < 3) raise(ErrorKind::DimensionTooSmall, "norm bounds need m >= 3");
  if (!q.is_diagonal()) raise(ErrorKind::NotDiagonal, "the diagonal norm bound needs a diagonal Gram matrix");
  BoundReport r;
  r.kind = BoundKind::Thm2Diagonal;
  echo_common(r, q, cfg);
  std::vector<long double> a;
  for (int i = 0; i < m; ++i) a.push_back(to_ld(q.gram()(i, i)));
  std::sort(a.begin(), a.end());
  const long double N = to_ld(q.level()), c = cfg.constant, ne = lpow(N, cfg.epsilon);
  Rational s(m, 2);
  s.canonicalize();
  r.terms.push_back({"c*N^(m/2)/F(Q,m/2)*N^eps", c * lpow(N, m / 2.0L) / F(q, s) * ne});
  r.terms.push_back({"c*N/sqrt(a_m a_(m-1))*N^eps", c * N / std::sqrt(a[m - 1] * a[m - 2]) * ne});
  finish(r);
  return r;
}

BoundReport thm3_bound(const QuadForm& q, const BoundConfig& cfg) {
  const int m = q.dim();
  if (m < 3) raise(ErrorKind::DimensionTooSmall, "norm bounds need m >= 3");
  BoundReport r;
  r.kind = BoundKind::Thm3Lower;
  echo_common(r, q, cfg);
  Integer M = minimum(dual_form(q));
  r.inputs.push_back({"M", M.get_str()});
  const long double N = to_ld(q.level()), det = to_ld(q.det());
  r.terms.push_back({"c*N^(m/2)/det*M^(1-m/2)", cfg.constant * lpow(N, m / 2.0L) / det * lpow(to_ld(M), 1 - m / 2.0L)});
  finish(r);
  return r;
}

std::vector<BoundReport> norm_bounds(const QuadForm& q, const BoundConfig& cfg) {
  std::vector<BoundReport> out{thm1_bound(q, cfg)};
  if (q.is_diagonal()) out.push_back(thm2_bound(q, cfg));
  out.push_back(thm3_bound(q, cfg));
  return out;
}

BoundReport eq13_bound(long double norm, int m, const Integer& n, const Integer& N, const BoundConfig& cfg) {
  if (n < 1 || N < 1) raise(ErrorKind::InvalidArgument, "n and N must be positive");
  BoundReport r;
  r.kind = BoundKind::Eq13Petersson;
  r.composition = "product";
  r.inputs = {{"norm", str(norm)}, {"m", std::to_string(m)}, {"n", n.get_str()}, {"N", N.get_str()},
              {"epsilon", str(cfg.epsilon)}, {"constant", str(cfg.constant)}};
  const long double nn = to_ld(n), NN = to_ld(N), g = to_ld(Integer(gcd(n, N)));
  r.terms.push_back({"c*|f|", cfg.constant * norm});
  r.terms.push_back({"n^(m/4-1/2)", lpow(nn, m / 4.0L - 0.5L)});
  r.terms.push_back({"1+n^(1/4)(n,N)^(1/4)/N^(1/2)", 1 + lpow(nn * g, 0.25L) / std::sqrt(NN)});
  r.terms.push_back({"(nN)^eps", lpow(nn * NN, cfg.epsilon)});
  finish(r);
  return r;
}

Integer eq21_v(const Integer& n, const Integer& N) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "n must be positive");
  Integer v = 1;
  for (const auto& [p, e] : factor(n))
    if (mpz_divisible_p(N.get_mpz_t(), p.get_mpz_t())) v *= ipow(p, e / 2);
  return v;
}

BoundReport eq21_bound(long double norm, const Integer& n, const Integer& N, Integer v, const BoundConfig& cfg) {
  if (n < 1 || N < 1) raise(ErrorKind::InvalidArgument, "n and N must be positive");
  if (v <= 0) v = eq21_v(n, N);
  BoundReport r;
  r.kind = BoundKind::Eq21DukeIwaniec;
  r.composition = "product";
  r.inputs = {{"norm", str(norm)}, {"n", n.get_str()}, {"N", N.get_str()}, {"v", v.get_str()},
              {"epsilon", str(cfg.epsilon)}, {"constant", str(cfg.constant)}};
  const long double nn = to_ld(n), NN = to_ld(N), g = to_ld(Integer(gcd(n, N))), vv = to_ld(v);
  r.terms.push_back({"c*|g|", cfg.constant * norm});
  r.terms.push_back({"n^(1/4)", lpow(nn, 0.25L)});
  r.terms.push_back({"1+n^(3/14)/N^(1/7)+n^(3/16)/N^(1/16)+sqrt(v(n,N)/N)",
                     1 + lpow(nn, 3 / 14.0L) / lpow(NN, 1 / 7.0L) + lpow(nn, 3 / 16.0L) / lpow(NN, 1 / 16.0L) +
                         std::sqrt(vv * g / NN)});
  r.terms.push_back({"(nN)^eps", lpow(nn * NN, cfg.epsilon)});
  finish(r);
  return r;
}

Integer n_tilde(const Integer& n, const Integer& N) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "n must be positive");
  Integer out = n;
  for (const auto& [p, e] : factor(n))
    if (mpz_divisible_p(N.get_mpz_t(), p.get_mpz_t())) out /= ipow(p, e - 1);
  return out;
}

BoundReport error_bound_m3(const QuadForm& q, const Integer& n, const BoundConfig& cfg) {
  if (q.dim() != 3) raise(ErrorKind::InvalidArgument, "the ternary error bound needs m = 3");
  BoundReport r;
  r.kind = BoundKind::Lemma41Error;
  r.composition = "product";
  echo_common(r, q, cfg);
  r.inputs.push_back({"n", n.get_str()});
  const Integer& Nz = q.level();
  Integer v = 1;
  std::string aniso;
  for (const Integer& p : anisotropic_primes(q)) {
    v *= ipow(p, valuation(Nz, p));
    aniso += (aniso.empty() ? "" : ",") + p.get_str();
  }
  Integer nt = n_tilde(n, Nz);
  Integer nt_part = 1;  // (n~, N^inf)
  for (const Integer& p : prime_divisors(Nz)) nt_part *= ipow(p, valuation(nt, p));
  r.inputs.push_back({"anisotropic", aniso});
  r.inputs.push_back({"v", v.get_str()});
  r.inputs.push_back({"n_tilde", nt.get_str()});
  const long double N = to_ld(Nz), det = to_ld(q.det()), nn = to_ld(n), g = to_ld(Integer(gcd(n, Nz)));
  r.terms.push_back({"c*sqrt(N)/det^(1/6)", cfg.constant * std::sqrt(N) / lpow(det, 1 / 6.0L)});
  r.terms.push_back({"n^(13/28)/N^(1/7)+n^(7/16)/N^(1/16)+n^(1/4)sqrt((n~,N^inf))v^(1/4)sqrt((n,N))/sqrt(N)",
                     lpow(nn, 13 / 28.0L) / lpow(N, 1 / 7.0L) + lpow(nn, 7 / 16.0L) / lpow(N, 1 / 16.0L) +
                         lpow(nn, 0.25L) * std::sqrt(to_ld(nt_part)) * lpow(to_ld(v), 0.25L) * std::sqrt(g) /
                             std::sqrt(N)});
  r.terms.push_back({"(nN)^eps", lpow(nn * N, cfg.epsilon)});
  finish(r);
  return r;
}

BoundReport threshold_m45(const QuadForm& q, const Rational& beta, const Integer& gcd_nN, const BoundConfig& cfg) {
  const int m = q.dim();
  if (m < 4) raise(ErrorKind::DimensionTooSmall, "thresholds need m >= 4");
  BoundReport r;
  r.kind = BoundKind::Lemma42Threshold;
  echo_common(r, q, cfg);
  r.inputs.push_back({"beta", to_string(beta)});
  r.inputs.push_back({"gcd_nN", gcd_nN.get_str()});
  const long double N = to_ld(q.level()), det = to_ld(q.det()), b = to_ld(beta), g = to_ld(gcd_nN),
                    c = cfg.constant;
  if (m == 4) {
    long double fq = F(q, 2);
    r.inputs.push_back({"F(Q,2)", str(fq)});
    long double inner = N * det / fq + lpow(det, 0.75L);
    // First threshold; the second and the beta bound go to `values`.
    r.terms.push_back({"c*beta^4*(n,N)*(N det/F(Q,2) + det^(3/4))^2", c * lpow(b, 4) * g * inner * inner});
    finish(r);
    r.values.push_back(r.value);
    r.values.push_back(c * b * b * N * N * inner);
    r.inputs.push_back({"beta_bound", str(std::sqrt(g))});
  } else {
    Rational s = Rational(m - 1, 2) - Rational(1, m);
    s.canonicalize();
    long double fq = F(q, s);
    r.inputs.push_back({"F(Q," + to_string(s) + ")", str(fq)});
    long double inner = b * b * std::sqrt(g) * (lpow(N, m / 2.0L - 1) * det / fq + lpow(det, 1 - 2.0L / m));
    r.terms.push_back({"c*(beta^2 sqrt((n,N)) (N^(m/2-1) det/F + det^(1-2/m)))^(2/(m-3))",
                       c * lpow(inner, 2.0L / (m - 3))});
    finish(r);
    r.values.push_back(r.value);
    long double alt = (m > 4) ? std::min(g, lpow(det, 1.0L / (m - 4))) : g;
    r.inputs.push_back({"beta_bound", str(alt)});
  }
  return r;
}

}  // namespace qform
