#include <doctest.h>

#include <cmath>
#include <set>

#include "qform/errors.hpp"
#include "qform/sieve.hpp"

using namespace qform;

namespace {

// Positive solutions of x1^2 + x2^2 + x3^2 = n, by direct search.
std::vector<std::array<std::int64_t, 3>> positive_solutions(std::int64_t n) {
  std::vector<std::array<std::int64_t, 3>> out;
  for (std::int64_t a = 1; a * a < n; ++a)
    for (std::int64_t b = 1; a * a + b * b < n; ++b) {
      std::int64_t c2 = n - a * a - b * b, c = static_cast<std::int64_t>(std::sqrt(static_cast<double>(c2)));
      while (c * c > c2) --c;
      while ((c + 1) * (c + 1) <= c2) ++c;
      if (c >= 1 && c * c == c2) out.push_back({a, b, c});
    }
  return out;
}

int omega_count(std::int64_t x) {
  int k = 0;
  for (std::int64_t p = 2; p * p <= x; ++p)
    while (x % p == 0) x /= p, ++k;
  return k + (x > 1);
}

}  // namespace

TEST_CASE("admissibility") {
  CHECK(sieve_admissible(27));
  CHECK_FALSE(sieve_admissible(75));
  CHECK_FALSE(sieve_admissible(5));
  CHECK(sieve_admissible(3));
}

TEST_CASE("omega and Omega examples") {
  CHECK(omega_weight({5, 1, 1}, 27) == 1);
  CHECK(omega_weight({3, 1, 1}, 3) == 0);
  CHECK(Omega_of_d(7, 27) == 3);
  CHECK(Omega_of_d(3, 27) == Rational(3, 4));
  CHECK(Omega_of_d(1, 27) == 1);
}

TEST_CASE("Omega is multiplicative on coprime d") {
  for (long n : {27L, 51L, 123L}) {
    for (auto [a, b] : std::vector<std::pair<long, long>>{{7, 11}, {3, 7}, {2, 13}, {11, 13}})
      CHECK(Omega_of_d(a * b, n) == Omega_of_d(a, n) * Omega_of_d(b, n));
  }
}

TEST_CASE("triples with a given lcm") {
  auto t = triples_with_lcm(6);
  std::set<Triple> seen(t.begin(), t.end());
  CHECK(seen.size() == t.size());
  // Each prime of 6 lies in a nonempty subset of the three slots: 7^2.
  CHECK(t.size() == 49);
  CHECK(triples_with_lcm(1).size() == 1);
}

TEST_CASE("sieve identity") {
  for (long n : {27L, 51L, 99L, 147L})
    for (long d : {1L, 2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 15L})
      CHECK(sieve_identity_check(n, d).pass);
  auto c = sieve_identity_check(27, 5);
  CHECK(c.lhs == 24);
}

TEST_CASE("main term tracks the sum of three squares") {
  CHECK(static_cast<double>(main_term_X(27, 100000)) == doctest::Approx(4.0013).epsilon(1e-3));
}

TEST_CASE("optimum of m(zeta)") {
  Optimum o = optimize_m();
  CHECK(static_cast<double>(o.zeta_star) == doctest::Approx(0.0560831).epsilon(1e-6));
  CHECK(static_cast<double>(o.m_star) == doctest::Approx(71.3785).epsilon(1e-5));
  CHECK(o.r == 72);
  CHECK(m_of_zeta(o.zeta_star * 0.9L, {}) > o.m_star);
  CHECK(m_of_zeta(o.zeta_star * 1.1L, {}) > o.m_star);
}

TEST_CASE("survey agrees with direct search") {
  auto s = min_omega_survey(3, 600, 2);
  for (const auto& [n, e] : s) {
    int best = 1000;
    for (const auto& x : positive_solutions(n)) best = std::min(best, omega_count(x[0] * x[1] * x[2]));
    CHECK(e.min_omega == best);
    CHECK(omega_count(e.witness[0] * e.witness[1] * e.witness[2]) == e.min_omega);
    CHECK(e.witness[0] * e.witness[0] + e.witness[1] * e.witness[1] + e.witness[2] * e.witness[2] == n);
  }
  CHECK(s.count(27) == 1);
  CHECK(s.count(28) == 0);
}

TEST_CASE("smooth search") {
  auto r = smooth_search(100000003, 0.05L, 16, SmoothVariant::Plain);
  REQUIRE(r.found);
  CHECK(verify_smooth(100000003, r, SmoothVariant::Plain) == "");
  auto tampered = r;
  tampered.x[0] += 1;
  CHECK(verify_smooth(100000003, tampered, SmoothVariant::Plain) != "");
  CHECK(smooth_search(1003, 0.05L, 8, SmoothVariant::Plain).empty_window);
  CHECK(parse_smooth_variant("split_e") == SmoothVariant::SplitE);
  CHECK_THROWS_AS(parse_smooth_variant("nope"), Error);
}
