#include "qform/eisenstein.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

namespace qform {

const char* convergence_name(Convergence c) { return c == Convergence::Clean ? "clean" : "oscillatory"; }

long double archimedean_factor(const QuadForm& q, const Integer& n) {
  const long double half_m = q.dim() / 2.0L;
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double logv = half_m * std::log(two_pi) + (half_m - 1) * log_of(n) - std::lgamma(half_m) -
                     0.5L * log_of(q.det());
  return std::exp(logv);
}

GenusCoefficient genus_coefficient(const QuadForm& q, const Integer& n, std::int64_t P) {
  if (q.dim() < 3) raise(ErrorKind::DimensionTooSmall, "genus coefficients need m >= 3");
  if (n < 1) raise(ErrorKind::InvalidArgument, "n must be positive");
  GenusCoefficient g;
  g.n = n;
  g.archimedean = archimedean_factor(q, n);
  g.finite_part = density_product(q, n, P);
  g.value = g.archimedean * g.finite_part.value;
  g.convergence = (q.dim() == 3) ? Convergence::Oscillatory : Convergence::Clean;
  return g;
}

long double genus_upper_bound(const QuadForm& q, const Integer& n, long double epsilon, long double constant) {
  const long double m = q.dim();
  long double logv = (m / 2 - 1) * log_of(n) + 0.5L * log_of(gcd(n, q.level())) - 0.5L * log_of(q.det()) +
                     epsilon * log_of(Integer(n * q.level()));
  return constant * std::exp(logv);
}

SpinorCheck gen_eq_spn_check(const QuadForm& q, const Integer& n) {
  SpinorCheck out;
  const Integer& N = q.level();
  // Bullet 1: n is not of the form t k^2 with 4t | N.
  bool hit = false;
  if (mpz_divisible_ui_p(N.get_mpz_t(), 4)) {
    for (const Integer& t : divisors(Integer(N / 4))) {
      if (!mpz_divisible_p(n.get_mpz_t(), t.get_mpz_t())) continue;
      if (mpz_perfect_square_p(Integer(n / t).get_mpz_t())) {
        hit = true;
        break;
      }
    }
  }
  if (!hit) {
    out.applies = true;
    out.bullet = 1;
    out.reason = "n is not t*k^2 with 4t | N";
    return out;
  }
  if (q.dim() != 3) {
    out.reason = "n = t*k^2 with 4t | N and the scale condition needs m = 3";
    return out;
  }
  // Bullet 2: at odd p | 2 det at least two equal scales; at p = 2 a diagonal
  // splitting with all three scales equal.
  for (const Integer& p : prime_divisors(Integer(2 * q.det()))) {
    JordanDecomposition jd = jordan_exact(q, p);
    std::vector<int> sc = jd.scales();
    if (p == 2) {
      if (jd.r2 != 0 || !(sc[0] == sc[1] && sc[1] == sc[2])) {
        out.reason = "2-adic scales not all equal in a diagonal splitting";
        return out;
      }
    } else if (!(sc[0] == sc[1] || sc[1] == sc[2] || sc[0] == sc[2])) {
      out.reason = "no two equal scales at p=" + p.get_str();
      return out;
    }
  }
  out.applies = true;
  out.bullet = 2;
  out.reason = "equal Jordan scales at every p | 2 det";
  return out;
}

}  // namespace qform

namespace qform {

std::vector<long double> genus_coefficients(const QuadForm& q, std::int64_t X, std::int64_t P) {
  if (q.dim() < 3) raise(ErrorKind::DimensionTooSmall, "genus coefficients need m >= 3");
  if (P < 100) raise(ErrorKind::InvalidArgument, "cutoff P must be >= 100");
  const int m = q.dim();
  const Integer N2 = 2 * q.level();
  // beta_p(n) depends on n only through its class modulo unit squares.
  std::map<std::tuple<long, int, long>, long double> memo;
  auto local = [&](long p, std::int64_t n) {
    int v = 0;
    std::int64_t u = n;
    while (u % p == 0) u /= p, ++v;
    long cls = (p == 2) ? static_cast<long>(u % 8) : legendre(Integer(u), Integer(p));
    auto key = std::make_tuple(p, v, cls);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long double val = to_ld(density(q, Integer(p), Integer(n), DensityMethod::Auto).value);
    memo.emplace(key, val);
    return val;
  };
  struct PrimeData {
    long p;
    long double weight;                 // p^(-m/2) or p^((1-m)/2) with the fixed signs
    std::vector<signed char> residue;   // Legendre symbol by n mod p
  };
  std::vector<PrimeData> primes;
  const Integer det = q.det();
  for (std::int64_t pp : primes_up_to(P)) {
    if (pp > P) break;
    long p = static_cast<long>(pp);
    if (mpz_divisible_ui_p(N2.get_mpz_t(), p)) continue;
    int chi = mpz_kronecker_ui(det.get_mpz_t(), p);
    int chim1 = (p % 4 == 1) ? 1 : -1;
    PrimeData d{p, 0, {}};
    if (m % 2 == 0) {
      int sign = ((m / 2) % 2 == 0) ? 1 : chim1;
      d.weight = -sign * chi * std::pow(static_cast<long double>(p), -m / 2.0L);
    } else {
      int sign = (((m - 1) / 2) % 2 == 0) ? 1 : chim1;
      int chi2 = (p % 8 == 1 || p % 8 == 7) ? 1 : -1;
      d.weight = sign * chi * chi2 * std::pow(static_cast<long double>(p), (1.0L - m) / 2.0L);
      d.residue.assign(p, -1);
      d.residue[0] = 0;
      for (long x = 1; x < p; ++x) d.residue[(x * x) % p] = 1;
    }
    primes.push_back(std::move(d));
  }
  const std::vector<Integer> level_primes = prime_divisors(N2);
  const std::vector<std::uint32_t> spf = smallest_prime_factors(static_cast<std::uint64_t>(X));
  const long double arch1 = archimedean_factor(q, Integer(1));
  std::vector<long double> out(static_cast<std::size_t>(X));
  for (std::int64_t n = 1; n <= X; ++n) {
    long double val = arch1 * std::pow(static_cast<long double>(n), m / 2.0L - 1);
    for (const Integer& p : level_primes) val *= local(p.get_si(), n);
    for (std::int64_t r = n; r > 1;) {
      long p = spf[static_cast<std::size_t>(r)];
      while (r % p == 0) r /= p;
      if (!mpz_divisible_ui_p(N2.get_mpz_t(), p)) val *= local(p, n);
    }
    for (const PrimeData& d : primes) {
      if (n % d.p == 0) continue;
      val *= 1.0L + (m % 2 == 0 ? d.weight : d.weight * d.residue[n % d.p]);
    }
    out[static_cast<std::size_t>(n - 1)] = val;
  }
  return out;
}

}  // namespace qform
