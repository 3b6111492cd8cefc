#include <algorithm>
#include <cmath>
#include <set>

#include "qform/padic.hpp"

namespace qform {

FInvariant f_invariant(const QuadForm& q, const Rational& s) {
  const int m = q.dim();
  if (s < 1 || s > m) raise(ErrorKind::InvalidArgument, "s must lie in [1, m]");
  FInvariant f;
  f.s = s;
  const Integer& N = q.level();
  JordanDecomposition at2 = jordan_exact(q, Integer(2));
  Rational two_exp = std::min(Rational(m - 2 * at2.r2), s);
  std::vector<std::pair<Integer, Rational>> factors;
  auto mu = [&](const JordanDecomposition& jd, int e) {
    std::vector<int> sc = jd.scales();
    Rational total = 0;
    for (int j = 1; j <= e; ++j) {
      long cnt = std::count_if(sc.begin(), sc.end(), [&](int nu) { return nu >= j; });
      total += std::min(Rational(cnt), s);
    }
    return total;
  };
  if (mpz_even_p(N.get_mpz_t())) two_exp += mu(at2, valuation(N, Integer(2)));
  factors.emplace_back(Integer(2), two_exp);
  for (const Integer& p : prime_divisors(N)) {
    if (p == 2) continue;
    factors.emplace_back(p, mu(jordan_exact(q, p), valuation(N, p)));
  }
  long double logv = 0;
  bool integral = true;
  Integer exact = 1;
  for (const auto& [p, e] : factors) {
    logv += to_ld(e) * log_of(p);
    if (e.get_den() != 1)
      integral = false;
    else
      exact *= ipow(p, e.get_num().get_ui());
  }
  f.factors = factors;
  f.value = std::exp(logv);
  if (integral) f.exact_integer = exact;
  return f;
}

const char* solution_type_name(SolutionType t) {
  switch (t) {
    case SolutionType::Good: return "good";
    case SolutionType::BadI: return "badI";
    case SolutionType::BadII: return "badII";
    case SolutionType::None: return "none";
  }
  return "?";
}

namespace {

// Is there a primitive solution with minimal unit-coordinate scale j? Counted
// mod p^K with K large enough for Hensel lifting of such solutions.
bool exists_with_scale(const JordanDecomposition& jd, const Integer& p, const Integer& n, int j) {
  const bool two = (p == 2);
  const int K = two ? 2 * j + 3 : 2 * j + 1;
  auto build = [&](Domain at_j) {
    std::vector<CountBlock> blocks;
    for (const auto& jb : jd.blocks) {
      CountBlock b;
      b.scale = jb.scale;
      if (jb.binary()) {
        b.binary = true;
        b.a = residue(jb.alpha, p, K);
        b.b = residue(jb.beta, p, K);
        b.c = residue(jb.gamma, p, K);
      } else {
        b.a = residue(jb.u, p, K);
      }
      if (jb.scale < j)
        b.domain = Domain::Multiple;
      else if (jb.scale == j)
        b.domain = at_j;
      blocks.push_back(b);
    }
    return blocks;
  };
  Integer all = count_residues(p, K, build(Domain::Any), n);
  Integer none_unit = count_residues(p, K, build(Domain::Multiple), n);
  return all > none_unit;
}

}  // namespace

HankeResult hanke_lower_bound(const QuadForm& q, const Integer& p, const Integer& n, bool want_bound) {
  const int m = q.dim();
  if (want_bound && m < 4) raise(ErrorKind::DimensionTooSmall, "Hanke bounds need m >= 4");
  if (!is_prime(p)) raise(ErrorKind::InvalidArgument, "p must be prime");
  JordanDecomposition jd = jordan_exact(q, p);
  std::set<int> scales;
  for (const auto& b : jd.blocks) scales.insert(b.scale);
  HankeResult r;
  for (int j : scales) {
    if (exists_with_scale(jd, p, n, j)) {
      r.nu = j;
      r.type = (j == 0) ? SolutionType::Good : (j == 1) ? SolutionType::BadI : SolutionType::BadII;
      break;
    }
  }
  if (r.type == SolutionType::None) {
    r.bound = 0;
    r.exact_bound = Rational(0);
    return r;
  }
  if (!want_bound) return r;
  Integer g = gcd(ipow(p, r.nu), n);
  Rational base = 1 - Rational(1) / Rational(p);
  if (p != 2 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 1) {
    r.exact_bound = base;
  } else {
    Rational num = (p == 2) ? Rational(1, 32) : base;
    if (m >= 5) {
      r.exact_bound = num / Rational(g);
    } else if (mpz_perfect_square_p(g.get_mpz_t())) {
      r.exact_bound = num / Rational(sqrt(g));
    } else {
      r.bound = to_ld(num) / std::sqrt(to_ld(g));
      return r;
    }
  }
  r.bound = to_ld(*r.exact_bound);
  return r;
}

std::vector<int> reduce_scales_type1(const std::vector<int>& nu) {
  std::vector<int> out;
  for (int v : nu) out.push_back(v == 0 ? 1 : v - 1);
  return out;
}

std::vector<int> reduce_scales_type2(const std::vector<int>& nu) {
  std::vector<int> out;
  for (int v : nu) out.push_back(v >= 2 ? v - 2 : v);
  return out;
}

}  // namespace qform
