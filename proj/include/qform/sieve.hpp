#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qform/arith.hpp"

namespace qform {

using Triple = std::array<Integer, 3>;

// n = 3 mod 24 and 5 does not divide n.
bool sieve_admissible(const Integer& n);

// prod_p beta_p(Q_l, n) / prod_p beta_p(Q_1, n) for q_l = l1^2 x^2 + l2^2 y^2 + l3^2 z^2;
// only p | 2 l1 l2 l3 contribute.
Rational omega_weight(const Triple& l, const Integer& n);
// Omega(d) = d mu(d) sum_{[l] = d} mu(l) omega(l, n) / (l1 l2 l3).
Rational Omega_of_d(const Integer& d, const Integer& n);

// Squarefree triples with lcm equal to the squarefree d.
std::vector<Triple> triples_with_lcm(const Integer& d);

struct IdentityCheck {
  Integer n, d, lhs, rhs;
  bool pass = false;
};
// lhs: signed solutions of x1^2 + x2^2 + x3^2 = n with d | x1 x2 x3;
// rhs: mu(d) sum_{[l] = d} mu(l) r(Q_l, n).
IdentityCheck sieve_identity_check(const Integer& n, const Integer& d);

// (pi/4) sqrt(n) prod_p beta_p(Q_1, n), Euler product cut at P.
long double main_term_X(const Integer& n, std::int64_t P);

struct SieveConfig {
  Rational tau{3, 58};
  long double beta3 = 6.6408L;
};

long double m_of_zeta(long double zeta, const SieveConfig& cfg);

struct Optimum {
  long double zeta_star = 0;
  long double m_star = 0;
  long double grid_zeta = 0;
  long double grid_m = 0;
  int r = 0;  // smallest integer > m_star
};
Optimum optimize_m(const SieveConfig& cfg = {});

struct SurveyEntry {
  int min_omega = -1;
  std::array<std::int64_t, 3> witness{};
  bool skipped = false;  // budget exhausted
};
// Minimal Omega(x1 x2 x3) over positive solutions of x1^2 + x2^2 + x3^2 = n for
// admissible n in [from, to].
std::map<std::int64_t, SurveyEntry> min_omega_survey(std::int64_t from, std::int64_t to, int threads = 1,
                                                     std::uint64_t budget_per_n = 100000000);

enum class SmoothVariant { Plain, SplitE };
SmoothVariant parse_smooth_variant(const std::string& s);
const char* smooth_variant_name(SmoothVariant v);

struct SmoothResult {
  bool empty_window = false;  // fewer than three admissible primes
  bool found = false;
  std::vector<std::int64_t> primes;  // d-primes (plain) or e-primes (split_e)
  std::array<std::int64_t, 3> d{};
  std::array<std::int64_t, 3> x{};
  std::int64_t largest_prime = 0;  // of d1 d2 d3 x1 x2 x3
  long double prime_bound = 0;     // max(widen n^eta, n^(1/2) / n^eta)
  long double window_lo = 0, window_hi = 0;
};
SmoothResult smooth_search(const Integer& n, long double eta, long double widen, SmoothVariant variant);
// Arithmetic re-check of a hit; an empty string means it verifies.
std::string verify_smooth(const Integer& n, const SmoothResult& r, SmoothVariant variant);

}  // namespace qform
