#include <cmath>

#include "qform/errors.hpp"
#include "qform/sieve.hpp"

namespace qform {

namespace {

std::int64_t largest_prime_factor(std::int64_t x) {
  std::int64_t best = 1;
  for (std::int64_t p = 2; p * p <= x; ++p)
    while (x % p == 0) best = p, x /= p;
  return x > 1 ? std::max(best, x) : best;
}

std::int64_t isqrt(std::int64_t r) {
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(r)));
  while (s * s > r) --s;
  while ((s + 1) * (s + 1) <= r) ++s;
  return s;
}

// First positive solution of d1^2 x1^2 + d2^2 x2^2 + d3^2 x3^2 = n.
bool solve(std::int64_t n, const std::array<std::int64_t, 3>& d, std::array<std::int64_t, 3>& x) {
  const std::int64_t a = d[0] * d[0], b = d[1] * d[1], c = d[2] * d[2];
  for (std::int64_t x1 = 1; a * x1 * x1 + b + c <= n; ++x1) {
    for (std::int64_t x2 = 1; a * x1 * x1 + b * x2 * x2 + c <= n; ++x2) {
      std::int64_t r = n - a * x1 * x1 - b * x2 * x2;
      if (r % c != 0) continue;
      std::int64_t x3 = isqrt(r / c);
      if (x3 * x3 == r / c) {
        x = {x1, x2, x3};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

SmoothVariant parse_smooth_variant(const std::string& s) {
  if (s == "plain") return SmoothVariant::Plain;
  if (s == "split_e") return SmoothVariant::SplitE;
  raise(ErrorKind::InvalidArgument, "unknown variant '" + s + "'");
}

const char* smooth_variant_name(SmoothVariant v) { return v == SmoothVariant::Plain ? "plain" : "split_e"; }

SmoothResult smooth_search(const Integer& nz, long double eta, long double widen, SmoothVariant variant) {
  if (nz < 1 || nz > Integer("1000000000000")) raise(ErrorKind::InvalidArgument, "n must lie in [1, 1e12]");
  Integer r8 = mod(nz, 8);
  if (r8 == 0 || r8 == 4 || r8 == 7) raise(ErrorKind::InvalidArgument, "n = 0, 4, 7 mod 8 is excluded");
  if (!(eta > 0 && eta < 0.5L) || !(widen >= 1)) raise(ErrorKind::InvalidArgument, "need 0 < eta < 1/2, widen >= 1");
  const std::int64_t n = nz.get_si();
  SmoothResult out;
  const long double base = std::pow(static_cast<long double>(n), eta);
  out.window_lo = base;
  out.window_hi = widen * base;
  out.prime_bound = std::max(out.window_hi, std::sqrt(static_cast<long double>(n)) / base);
  if (variant == SmoothVariant::SplitE) out.prime_bound = std::max(out.prime_bound, out.window_hi * out.window_hi);
  for (std::int64_t p : primes_up_to(static_cast<std::int64_t>(out.window_hi) + 1)) {
    if (p < out.window_lo || p > out.window_hi) continue;
    if (p % 4 != 1 || n % p == 0) continue;
    if (variant == SmoothVariant::SplitE && kronecker(Integer(static_cast<long>(p)), nz) != 1) continue;
    out.primes.push_back(p);
  }
  if (out.primes.size() < 3) {
    out.empty_window = true;
    return out;
  }
  const std::vector<std::int64_t> P = out.primes;
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j)
      for (std::size_t k = j + 1; k < P.size(); ++k) {
        std::array<std::int64_t, 3> d;
        if (variant == SmoothVariant::Plain)
          d = {P[i], P[j], P[k]};
        else
          d = {P[i] * P[j], P[i] * P[k], P[j] * P[k]};
        std::array<std::int64_t, 3> x;
        if (d[0] * d[0] + d[1] * d[1] + d[2] * d[2] > n || !solve(n, d, x)) continue;
        out.found = true;
        out.d = d;
        out.x = x;
        out.primes = {P[i], P[j], P[k]};
        out.largest_prime = 1;
        for (int t = 0; t < 3; ++t)
          out.largest_prime =
              std::max({out.largest_prime, largest_prime_factor(d[t]), largest_prime_factor(x[t])});
        return out;
      }
  return out;
}

std::string verify_smooth(const Integer& n, const SmoothResult& r, SmoothVariant variant) {
  if (!r.found) return "no solution to verify";
  Integer s = 0;
  for (int t = 0; t < 3; ++t) s += Integer(static_cast<long>(r.d[t])) * r.d[t] * r.x[t] * r.x[t];
  if (s != n) return "sum d_i^2 x_i^2 != n";
  std::int64_t lp = 1;
  for (int t = 0; t < 3; ++t) lp = std::max({lp, largest_prime_factor(r.d[t]), largest_prime_factor(r.x[t])});
  if (lp != r.largest_prime) return "largest prime mismatch";
  if (static_cast<long double>(lp) > r.prime_bound) return "largest prime exceeds the declared bound";
  for (std::int64_t p : r.primes) {
    if (!is_prime(p) || p % 4 != 1 || mpz_divisible_ui_p(n.get_mpz_t(), p)) return "inadmissible prime";
    if (variant == SmoothVariant::SplitE && kronecker(Integer(static_cast<long>(p)), n) != 1)
      return "split_e prime with (p/n) != 1";
  }
  return {};
}

}  // namespace qform
