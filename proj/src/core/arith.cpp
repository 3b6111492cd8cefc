#include "qform/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "qform/errors.hpp"

namespace qform {

int valuation(const Integer& n, const Integer& p) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, const Integer& p) {
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(std::int64_t n) { return is_prime(Integer(static_cast<long>(n))); }

const std::vector<std::int64_t>& primes_up_to(std::int64_t limit) {
  static std::mutex mu;
  static std::vector<std::int64_t> primes;
  static std::int64_t covered = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (limit > covered) {
    std::int64_t top = std::max<std::int64_t>(limit, 2 * covered);
    std::vector<bool> composite(static_cast<size_t>(top + 1), false);
    primes.clear();
    for (std::int64_t i = 2; i <= top; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::int64_t j = i * i; j <= top; j += i) composite[j] = true;
    }
    covered = top;
  }
  return primes;
}

namespace {

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) { return mod(v * v + c, n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd(Integer(abs(x - y)), n);
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Factorization factor(const Integer& n_in) {
  if (n_in == 0) raise(ErrorKind::InvalidArgument, "factor of zero");
  Integer n = abs(n_in);
  std::vector<Integer> raw;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      raw.push_back(p);
      n /= p;
    }
  }
  for (unsigned long p = 17; p < 10000 && Integer(p) * p <= n; p += 2) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      raw.push_back(p);
      n /= p;
    }
  }
  factor_into(n, raw);
  std::sort(raw.begin(), raw.end());
  Factorization out;
  for (const auto& p : raw) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factor(n)) {
    size_t base = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int legendre(const Integer& a, const Integer& p) {
  return mpz_kronecker(a.get_mpz_t(), p.get_mpz_t());
}

int kronecker(const Integer& a, const Integer& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int mobius(const Integer& n) {
  int sign = 1;
  for (const auto& [p, e] : factor(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

bool is_squarefree(const Integer& n) { return mobius(n) != 0; }

Integer sigma(const Integer& n) {
  Integer s = 1;
  for (const auto& [p, e] : factor(n)) s *= (ipow(p, e + 1) - 1) / (p - 1);
  return s;
}

Integer radical(const Integer& n) {
  Integer r = 1;
  for (const auto& [p, e] : factor(n)) r *= p;
  return r;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  return spf;
}

int big_omega(std::uint64_t n, const std::vector<std::uint32_t>& spf) {
  int count = 0;
  while (n > 1) {
    if (n < spf.size()) {
      n /= spf[n];
      ++count;
      continue;
    }
    std::uint64_t p = 2;
    while (p * p <= n && n % p != 0) ++p;
    if (p * p > n) p = n;
    n /= p;
    ++count;
  }
  return count;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational rpow(const Rational& base, long e) {
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r(ipow(Integer(base.get_num()), k), ipow(Integer(base.get_den()), k));
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    raise(ErrorKind::InvalidArgument, "no modular inverse");
  return mod(r, m);
}

Integer floor_of(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

Integer round_of(const Rational& x) { return floor_of(x + Rational(1, 2)); }

long double to_ld(const Integer& x) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::ldexp(static_cast<long double>(m), static_cast<int>(e));
}

long double to_ld(const Rational& x) {
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::ldexp(static_cast<long double>(mn) / md, static_cast<int>(en - ed));
}

long double log_of(const Integer& x) {
  if (x <= 0) raise(ErrorKind::InvalidArgument, "log of non-positive integer");
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(static_cast<long double>(m)) + e * std::log(2.0L);
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) raise(ErrorKind::InvalidArgument, "bad rational: " + text);
  if (r.get_den() == 0) raise(ErrorKind::InvalidArgument, "zero denominator: " + text);
  r.canonicalize();
  return r;
}

}  // namespace qform
