#include "qform/sieve.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "qform/enumerate.hpp"
#include "qform/errors.hpp"
#include "qform/padic.hpp"

namespace qform {

namespace {

QuadForm q_of(const Triple& l) { return QuadForm::from_diagonal({l[0] * l[0], l[1] * l[1], l[2] * l[2]}); }

int mu_triple(const Triple& l) { return mobius(l[0]) * mobius(l[1]) * mobius(l[2]); }

Integer lcm3(const Triple& l) {
  Integer a = lcm(l[0], l[1]);
  return lcm(a, l[2]);
}

}  // namespace

bool sieve_admissible(const Integer& n) { return n > 0 && mod(n, 24) == 3 && mod(n, 5) != 0; }

Rational omega_weight(const Triple& l, const Integer& n) {
  for (const auto& li : l)
    if (li < 1 || !is_squarefree(li)) raise(ErrorKind::InvalidArgument, "l_i must be squarefree and positive");
  if (n < 1) raise(ErrorKind::InvalidArgument, "n must be positive");
  const QuadForm ql = q_of(l), q1 = QuadForm::from_diagonal({1, 1, 1});
  Rational w = 1;
  for (const Integer& p : prime_divisors(Integer(2 * l[0] * l[1] * l[2]))) {
    Rational den = density(q1, p, n, DensityMethod::Bruteforce).value;
    if (den == 0) raise(ErrorKind::DensityZeroDenominator, "beta_p(Q_1, n) = 0 at p=" + p.get_str());
    w *= density(ql, p, n, DensityMethod::Bruteforce).value / den;
  }
  return w;
}

std::vector<Triple> triples_with_lcm(const Integer& d) {
  if (d < 1 || !is_squarefree(d)) raise(ErrorKind::InvalidArgument, "d must be squarefree and positive");
  std::vector<Integer> divs = divisors(d);
  std::vector<Triple> out;
  for (const auto& a : divs)
    for (const auto& b : divs)
      for (const auto& c : divs) {
        Triple t{a, b, c};
        if (lcm3(t) == d) out.push_back(t);
      }
  return out;
}

Rational Omega_of_d(const Integer& d, const Integer& n) {
  Rational s = 0;
  for (const Triple& l : triples_with_lcm(d)) {
    int mu = mu_triple(l);
    if (mu == 0) continue;
    s += Rational(mu) * omega_weight(l, n) / Rational(Integer(l[0] * l[1] * l[2]));
  }
  return Rational(mobius(d)) * s * d;
}

IdentityCheck sieve_identity_check(const Integer& n, const Integer& d) {
  if (mod(n, 8) != 3) raise(ErrorKind::InvalidArgument, "identity check needs n = 3 mod 8");
  IdentityCheck out;
  out.n = n;
  out.d = d;
  const QuadForm q1 = QuadForm::from_diagonal({1, 1, 1});
  out.lhs = 0;
  for (const auto& x : representations_list(q1, n, static_cast<std::size_t>(-1)))
    if (mpz_divisible_p(Integer(x[0] * x[1] * x[2]).get_mpz_t(), d.get_mpz_t())) ++out.lhs;
  Integer s = 0;
  for (const Triple& l : triples_with_lcm(d)) {
    int mu = mu_triple(l);
    if (mu != 0) s += mu * count_representations(q_of(l), n);
  }
  out.rhs = mobius(d) * s;
  out.pass = out.lhs == out.rhs;
  return out;
}

long double main_term_X(const Integer& n, std::int64_t P) {
  DensityProduct dp = density_product(QuadForm::from_diagonal({1, 1, 1}), n, P);
  return std::numbers::pi_v<long double> / 4 * std::sqrt(to_ld(n)) * dp.value;
}

long double m_of_zeta(long double zeta, const SieveConfig& cfg) {
  const long double tau = to_ld(cfg.tau), b = cfg.beta3;
  return 3 / tau * (1 + zeta) - 1 + (3 + zeta) * std::log(b / zeta) - 3 - zeta * 3 * (1 / tau - 1) / b;
}

Optimum optimize_m(const SieveConfig& cfg) {
  const long double tau = to_ld(cfg.tau);
  if (!(tau > 0 && tau < 1) || !(cfg.beta3 > 0)) raise(ErrorKind::InvalidArgument, "need 0 < tau < 1, beta3 > 0");
  auto m = [&](long double z) { return m_of_zeta(z, cfg); };
  Optimum out;
  // Coarse scan to bracket the minimum, then golden section.
  const long double lo0 = cfg.beta3 * 1e-9L, hi0 = cfg.beta3 * (1 - 1e-9L);
  const int coarse = 4000;
  int best = 0;
  long double bestv = INFINITY;
  auto node = [&](int i) { return lo0 * std::pow(hi0 / lo0, static_cast<long double>(i) / coarse); };
  for (int i = 0; i <= coarse; ++i) {
    long double v = m(node(i));
    if (v < bestv) bestv = v, best = i;
  }
  long double a = node(std::max(0, best - 1)), b = node(std::min(coarse, best + 1));
  const long double gr = (std::sqrt(5.0L) - 1) / 2;
  long double c = b - gr * (b - a), d = a + gr * (b - a);
  while (b - a > 1e-12L) {
    if (m(c) < m(d))
      b = d;
    else
      a = c;
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  out.zeta_star = (a + b) / 2;
  out.m_star = m(out.zeta_star);
  // Independent 10^6-point grid over the bracket found by the coarse scan.
  long double ga = node(std::max(0, best - 2)), gb = node(std::min(coarse, best + 2));
  const int grid = 1000000;
  out.grid_m = INFINITY;
  for (int i = 0; i <= grid; ++i) {
    long double z = ga + (gb - ga) * i / grid;
    long double v = m(z);
    if (v < out.grid_m) out.grid_m = v, out.grid_zeta = z;
  }
  out.r = static_cast<int>(std::floor(out.m_star)) + 1;
  return out;
}

std::map<std::int64_t, SurveyEntry> min_omega_survey(std::int64_t from, std::int64_t to, int threads,
                                                     std::uint64_t budget_per_n) {
  if (from < 1 || to < from) raise(ErrorKind::InvalidArgument, "empty survey range");
  std::vector<std::int64_t> ns;
  for (std::int64_t n = from; n <= to; ++n)
    if (sieve_admissible(Integer(static_cast<long>(n)))) ns.push_back(n);
  const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(to))) + 1;
  const std::vector<std::uint32_t> spf = smallest_prime_factors(static_cast<std::uint64_t>(root));
  std::vector<SurveyEntry> res(ns.size());
  threads = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < ns.size(); i += threads) {
        const std::int64_t n = ns[i];
        SurveyEntry e;
        std::uint64_t steps = 0;
        for (std::int64_t x1 = 1; 3 * x1 * x1 <= n && !e.skipped; ++x1) {
          for (std::int64_t x2 = x1; x1 * x1 + 2 * x2 * x2 <= n; ++x2) {
            if (++steps > budget_per_n) {
              e.skipped = true;
              break;
            }
            std::int64_t r = n - x1 * x1 - x2 * x2;
            auto x3 = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(r)));
            while (x3 * x3 > r) --x3;
            while ((x3 + 1) * (x3 + 1) <= r) ++x3;
            if (x3 * x3 != r || x3 < x2) continue;
            int om = big_omega(x1, spf) + big_omega(x2, spf) + big_omega(x3, spf);
            if (e.min_omega < 0 || om < e.min_omega) {
              e.min_omega = om;
              e.witness = {x1, x2, x3};
            }
          }
        }
        res[i] = e;
      }
    });
  }
  for (auto& th : pool) th.join();
  std::map<std::int64_t, SurveyEntry> out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    // Gauss: every admissible n is a sum of three positive squares.
    if (!res[i].skipped && res[i].min_omega < 0)
      raise(ErrorKind::InvalidArgument, "no representation of admissible n=" + std::to_string(ns[i]));
    out.emplace(ns[i], res[i]);
  }
  return out;
}

}  // namespace qform
