#include <cmath>

#include "qform/padic.hpp"

namespace qform {

const char* method_name(DensityMethod m) {
  switch (m) {
    case DensityMethod::Bruteforce: return "bruteforce";
    case DensityMethod::YangOdd: return "yang_odd";
    case DensityMethod::SiegelUnramified: return "siegel_unramified";
    case DensityMethod::Auto: return "auto";
  }
  return "?";
}

DensityMethod parse_method(const std::string& s) {
  if (s == "bruteforce") return DensityMethod::Bruteforce;
  if (s == "yang_odd" || s == "yang") return DensityMethod::YangOdd;
  if (s == "siegel_unramified" || s == "unramified") return DensityMethod::SiegelUnramified;
  if (s == "auto") return DensityMethod::Auto;
  raise(ErrorKind::InvalidArgument, "unknown density method: " + s);
}

Rational density_at(const QuadForm& q, const Integer& p, const Integer& n, int a) {
  Integer count = count_residues(p, a, count_blocks(q, p, a), n);
  Rational r(count, ipow(p, static_cast<unsigned long>(a) * (q.dim() - 1)));
  r.canonicalize();
  return r;
}

namespace {

// Start of the stabilization search. A solution x of q(x) = n has
// v_p(Q x) <= (v_p(n) + v_p(N)) / 2, so counts are Hensel-stable from
// a = v_p(n) + v_p(N) + 1 on; one more step gives the confirming pair.
int stabilization_start(const Integer& p, const Integer& n, const Integer& level) {
  return valuation(n, p) + valuation(level, p) + 2;
}

template <class AtA>
LocalDensity stabilize(const Integer& p, const Integer& n, int a0, AtA&& at) {
  LocalDensity d;
  d.p = p;
  d.n = n;
  d.method = DensityMethod::Bruteforce;
  Rational prev = at(a0);
  for (int a = a0 + 1; a <= a0 + 6; ++a) {
    Rational cur = at(a);
    if (cur == prev) {
      d.value = cur;
      d.a_used = a;
      d.agreements = 2;
      return d;
    }
    prev = cur;
  }
  raise(ErrorKind::StabilizationOverflow,
        "no agreement up to a=" + std::to_string(a0 + 6) + " at p=" + p.get_str());
}

struct Surd {  // x + y sqrt(p)
  Rational x = 0, y = 0;
};

Surd mul(const Surd& a, const Surd& b, const Integer& p) {
  return {a.x * b.x + Rational(p) * a.y * b.y, a.x * b.y + a.y * b.x};
}

// p^e for half-integral e as a surd.
Surd ppow(const Rational& e, const Integer& p) {
  Rational twice = 2 * e;
  long t = twice.get_num().get_si();
  if (t % 2 == 0) return {rpow(Rational(p), t / 2), 0};
  return {0, rpow(Rational(p), (t - 1) / 2)};
}

LocalDensity bruteforce(const QuadForm& q, const Integer& p, const Integer& n) {
  int a0 = stabilization_start(p, n, q.level());
  std::vector<CountBlock> cached;
  int cached_k = -1;
  bool diagonal = q.is_diagonal();
  JordanDecomposition jd;
  if (!diagonal) jd = jordan_exact(q, p);
  auto at = [&](int a) {
    std::vector<CountBlock> blocks;
    if (diagonal) {
      if (cached_k < 0) {
        cached = count_blocks(q, p, a);
        cached_k = a;
      }
      blocks = cached;
    } else {
      for (const auto& jb : jd.blocks) {
        CountBlock b;
        b.scale = jb.scale;
        if (jb.binary()) {
          b.binary = true;
          b.a = residue(jb.alpha, p, a);
          b.b = residue(jb.beta, p, a);
          b.c = residue(jb.gamma, p, a);
        } else {
          b.a = residue(jb.u, p, a);
        }
        blocks.push_back(b);
      }
    }
    Rational r(count_residues(p, a, blocks, n), ipow(p, static_cast<unsigned long>(a) * (q.dim() - 1)));
    r.canonicalize();
    return r;
  };
  return stabilize(p, n, a0, at);
}

void odd_diagonal_data(const QuadForm& q, const Integer& p, std::vector<int>& nu, std::vector<Integer>& units) {
  JordanDecomposition jd = jordan_exact(q, p);
  for (const auto& b : jd.blocks) {
    nu.push_back(b.scale);
    units.push_back(residue(b.u, p, 1));
  }
}

}  // namespace

Rational diagonal_density_bruteforce(const std::vector<int>& nu, const std::vector<Integer>& units,
                                     const Integer& p, const Integer& n, int* a_used) {
  int maxnu = 0;
  for (int v : nu) maxnu = std::max(maxnu, v);
  // Level of the diagonal form has p-part at most p^maxnu (p^(maxnu+2) at 2).
  int a0 = valuation(n, p) + maxnu + (p == 2 ? 2 : 0) + 2;
  const int m = static_cast<int>(nu.size());
  auto at = [&](int a) {
    std::vector<CountBlock> blocks;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      CountBlock b;
      b.a = units[i];
      b.scale = nu[i];
      blocks.push_back(b);
    }
    Rational r(count_residues(p, a, blocks, n), ipow(p, static_cast<unsigned long>(a) * (m - 1)));
    r.canonicalize();
    return r;
  };
  LocalDensity d = stabilize(p, n, a0, at);
  if (a_used) *a_used = d.a_used;
  return d.value;
}

LocalDensity yang_density(const std::vector<int>& nu, const std::vector<Integer>& units, const Integer& p,
                          const Integer& n) {
  if (p == 2) raise(ErrorKind::MethodInvalid, "yang_odd requires odd p");
  const int a = valuation(n, p);
  const Integer t = n / ipow(p, a);
  const std::size_t m = nu.size();
  const int eps = legendre(Integer(-1), p);
  auto V = [&](int l) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i) {
      int d = nu[i] - l;
      if (d < 0 && (d % 2 != 0)) out.push_back(i);
    }
    return out;
  };
  auto dl = [&](int l) {
    Rational s = l;
    for (std::size_t i = 0; i < m; ++i)
      if (nu[i] < l) s += Rational(nu[i] - l, 2);
    return s;
  };
  auto vl = [&](int l) {
    auto set = V(l);
    int s = (set.size() / 2) % 2 == 0 ? 1 : eps;
    for (std::size_t i : set) s *= legendre(units[i], p);
    return s;
  };
  Surd total{1, 0};
  const Rational one_minus = 1 - Rational(1) / Rational(p);
  for (int l = 1; l <= a; ++l) {
    if (V(l).size() % 2 != 0) continue;
    Surd term = ppow(dl(l), p);
    Rational c = one_minus * vl(l);
    total.x += c * term.x;
    total.y += c * term.y;
  }
  {
    int l = a + 1;
    Surd f;
    if (V(l).size() % 2 == 0)
      f = {Rational(-1) / Rational(p), 0};
    else
      f = {0, Rational(legendre(t, p)) / Rational(p)};  // (t/p) / sqrt(p)
    Surd term = mul(ppow(dl(l), p), f, p);
    int v = vl(l);
    total.x += v * term.x;
    total.y += v * term.y;
  }
  LocalDensity d;
  d.value = total.x;
  d.surd_part = total.y;
  d.p = p;
  d.n = n;
  d.method = DensityMethod::YangOdd;
  if (total.y != 0) raise(ErrorKind::MethodInvalid, "surd part did not cancel");
  return d;
}

LocalDensity density(const QuadForm& q, const Integer& p, const Integer& n, DensityMethod method) {
  if (!is_prime(p)) raise(ErrorKind::InvalidArgument, "p must be prime");
  if (n < 1) raise(ErrorKind::InvalidArgument, "n must be positive");
  if (method == DensityMethod::Auto) method = (p == 2) ? DensityMethod::Bruteforce : DensityMethod::YangOdd;
  switch (method) {
    case DensityMethod::Bruteforce:
      return bruteforce(q, p, n);
    case DensityMethod::YangOdd: {
      if (p == 2) raise(ErrorKind::MethodInvalid, "yang_odd requires odd p");
      std::vector<int> nu;
      std::vector<Integer> units;
      odd_diagonal_data(q, p, nu, units);
      return yang_density(nu, units, p, n);
    }
    case DensityMethod::SiegelUnramified: {
      if (mpz_divisible_p(Integer(2 * n * q.level()).get_mpz_t(), p.get_mpz_t()))
        raise(ErrorKind::MethodInvalid, "siegel_unramified requires p not dividing 2nN");
      const int m = q.dim();
      // det A = det Q / 2^m; the symbol of 2^-m equals that of 2^m.
      int chi2 = legendre(Integer(2), p);
      int chi_det = legendre(q.det(), p) * ((m % 2 == 0) ? 1 : chi2);
      LocalDensity d;
      d.p = p;
      d.n = n;
      d.method = DensityMethod::SiegelUnramified;
      if (m % 2 == 0) {
        int sign = ((m / 2) % 2 == 0) ? 1 : legendre(Integer(-1), p);
        d.value = 1 - Rational(sign * chi_det) * rpow(Rational(p), -m / 2);
      } else {
        int sign = (((m - 1) / 2) % 2 == 0) ? 1 : legendre(Integer(-1), p);
        d.value = 1 + Rational(sign * chi_det * legendre(n, p)) * rpow(Rational(p), (1 - m) / 2);
      }
      return d;
    }
    case DensityMethod::Auto:
      break;
  }
  raise(ErrorKind::MethodInvalid, "unknown method");
}

DensityProduct density_product(const QuadForm& q, const Integer& n, std::int64_t P) {
  if (P < 100) raise(ErrorKind::InvalidArgument, "cutoff P must be >= 100");
  DensityProduct out;
  out.cutoff = P;
  Integer bad = 2 * n * q.level();
  long double ram = 1;
  for (const Integer& p : prime_divisors(bad)) {
    LocalDensity d = density(q, p, n, DensityMethod::Auto);
    ram *= to_ld(d.value);
    out.ramified.push_back(d);
  }
  const int m = q.dim();
  // Symbol argument without the prime-dependent parts.
  const Integer det = q.det();
  const unsigned long nmod_needed = (m % 2 == 1);
  long double prod = 1, at_decade = 1;
  const std::int64_t decade = P / 10;
  for (std::int64_t pp : primes_up_to(P)) {
    if (pp > P) break;
    unsigned long p = static_cast<unsigned long>(pp);
    if (mpz_divisible_ui_p(bad.get_mpz_t(), p)) continue;
    int chi = mpz_kronecker_ui(det.get_mpz_t(), p);
    int chi2 = (p % 8 == 1 || p % 8 == 7) ? 1 : -1;
    int chim1 = (p % 4 == 1) ? 1 : -1;
    long double factor;
    if (m % 2 == 0) {
      int sign = ((m / 2) % 2 == 0) ? 1 : chim1;
      factor = 1.0L - sign * chi * std::pow(static_cast<long double>(p), -m / 2.0L);
    } else {
      int sign = (((m - 1) / 2) % 2 == 0) ? 1 : chim1;
      int chin = nmod_needed ? mpz_kronecker_ui(n.get_mpz_t(), p) : 1;
      factor = 1.0L + sign * chi * chi2 * chin * std::pow(static_cast<long double>(p), (1.0L - m) / 2.0L);
    }
    prod *= factor;
    if (pp <= decade) at_decade = prod;
  }
  out.unramified = prod;
  out.value = ram * prod;
  out.last_decade_change = std::fabs(prod / at_decade - 1.0L);
  return out;
}

}  // namespace qform
