#include <doctest.h>

#include "oracles.hpp"
#include "qform/eisenstein.hpp"
#include "qform/enumerate.hpp"

using namespace qform;

TEST_CASE("one-class genus: r(gen Q, n) equals r(Q, n)") {
  auto three = QuadForm::from_diagonal({1, 1, 1});
  auto four = QuadForm::from_diagonal({1, 1, 1, 1});
  auto r3 = theta_coefficients(three, 30);
  auto r4 = theta_coefficients(four, 30);
  for (long n = 1; n <= 30; ++n) {
    CHECK(genus_coefficient(four, n, 100000).value == doctest::Approx(to_ld(r4.at(n))).epsilon(0.02));
    if (to_ld(r3.at(n)) > 0)
      CHECK(genus_coefficient(three, n, 100000).value == doctest::Approx(to_ld(r3.at(n))).epsilon(0.05));
    else
      CHECK(genus_coefficient(three, n, 100000).value == 0);
  }
}

TEST_CASE("batched genus coefficients match the single evaluation") {
  for (auto q : {QuadForm::from_diagonal({1, 1, 3}), QuadForm::from_gram(IntMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, 2}}),
                 QuadForm::from_diagonal({1, 2, 3, 5})}) {
    auto all = genus_coefficients(q, 60, 5000);
    for (long n = 1; n <= 60; ++n) {
      long double one = genus_coefficient(q, n, 5000).value;
      CHECK(static_cast<double>(all[n - 1]) == doctest::Approx(static_cast<double>(one)).epsilon(1e-12));
    }
  }
}

TEST_CASE("partial sums over a two-class genus") {
  auto q = QuadForm::from_diagonal({1, 1, 16});
  auto r = theta_coefficients(q, 400);
  long double sum_r = 0, sum_g = 0;
  auto g = genus_coefficients(q, 400, 20000);
  for (long n = 1; n <= 400; ++n) sum_r += to_ld(r.at(n)), sum_g += g[n - 1];
  // Partial sums of r and r(gen) share the same main term (volume growth).
  CHECK(static_cast<double>(sum_g / sum_r) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("archimedean factor") {
  auto q = QuadForm::from_diagonal({1, 1, 1, 1});
  // (2 pi)^2 n / (Gamma(2) sqrt(16)) = pi^2 n.
  CHECK(static_cast<double>(archimedean_factor(q, 3)) == doctest::Approx(3 * M_PI * M_PI));
}

TEST_CASE("genus upper bound dominates r(gen)") {
  auto q = QuadForm::from_diagonal({1, 1, 1, 1});
  for (long n = 1; n <= 40; ++n)
    CHECK(genus_upper_bound(q, n, 0.25L, 50) >= genus_coefficient(q, n, 10000).value);
}

TEST_CASE("spinor exceptional test") {
  auto q = QuadForm::from_diagonal({1, 1, 1});
  auto s = gen_eq_spn_check(q, 5);
  CHECK(s.applies);
  CHECK(s.bullet >= 1);
}
