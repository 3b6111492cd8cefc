#include <doctest.h>

#include "oracles.hpp"
#include "qform/bounds.hpp"
#include "qform/errors.hpp"

using namespace qform;

namespace {
const QuadForm kThree = QuadForm::from_diagonal({1, 1, 1});
}

TEST_CASE("norm bounds for the sum of three squares") {
  CHECK(static_cast<double>(thm1_bound(kThree).value) == doctest::Approx(2.0));
  CHECK(static_cast<double>(thm2_bound(kThree).value) == doctest::Approx(2 + 2 * std::sqrt(2.0)));
  CHECK(static_cast<double>(thm3_bound(kThree).value) == doctest::Approx(1.0));
  CHECK_THROWS_AS(thm2_bound(QuadForm::from_gram(IntMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, 2}})), Error);
  CHECK(norm_bounds(kThree).size() == 3);
}

TEST_CASE("every report recomputes from its trace") {
  std::mt19937_64 rng(7);
  BoundConfig cfg{0.1L, 2.5L};
  for (int t = 0; t < 30; ++t) {
    auto q = oracle::random_form(rng, 3 + t % 3, 1, 9, 3);
    std::vector<BoundReport> rs = {thm1_bound(q, cfg), thm3_bound(q, cfg), eq13_bound(2, q.dim(), 30, q.level(), cfg),
                                   eq21_bound(2, 90, q.level(), 0, cfg)};
    if (q.dim() == 3) rs.push_back(error_bound_m3(q, 11, cfg));
    if (q.dim() >= 4) rs.push_back(threshold_m45(q, Rational(1, 3), 2, cfg));
    for (const auto& r : rs) CHECK(static_cast<double>(r.recompute()) == doctest::Approx(static_cast<double>(r.value)));
  }
}

TEST_CASE("constant scales every bound linearly") {
  BoundConfig one{0, 1}, three{0, 3};
  CHECK(static_cast<double>(thm1_bound(kThree, three).value) == doctest::Approx(3 * thm1_bound(kThree, one).value));
  CHECK(static_cast<double>(eq13_bound(1, 3, 7, 4, three).value) ==
        doctest::Approx(3 * eq13_bound(1, 3, 7, 4, one).value));
}

TEST_CASE("epsilon never decreases a bound") {
  BoundConfig e0{0, 1}, e1{0.2L, 1};
  auto q = QuadForm::from_diagonal({1, 2, 5});
  CHECK(thm1_bound(q, e1).value >= thm1_bound(q, e0).value);
  CHECK(error_bound_m3(q, 19, e1).value >= error_bound_m3(q, 19, e0).value);
}

TEST_CASE("bound examples") {
  CHECK(static_cast<double>(eq13_bound(1, 3, 1, 4).value) == doctest::Approx(1.5));
  CHECK(static_cast<double>(error_bound_m3(QuadForm::from_diagonal({1, 1, 1}), 3).value) ==
        doctest::Approx(5.3452995).epsilon(1e-7));
  auto th = threshold_m45(QuadForm::from_diagonal({1, 1, 1, 1}), 1, 1);
  REQUIRE(th.values.size() >= 2);
}

TEST_CASE("square-class helpers") {
  CHECK(n_tilde(72, 6) == 6);
  CHECK(n_tilde(35, 6) == 35);
  CHECK(eq21_v(4 * 9 * 7, 2) == 2);
}

TEST_CASE("Hilbert symbol basics") {
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(-1, -1, 3) == 1);
  CHECK(hilbert_symbol(2, 3, 3) == -1);
  CHECK(hilbert_symbol(5, 5, 5) == 1);
  CHECK(hilbert_symbol(Rational(1, 3), 2, 3) == -1);
}

TEST_CASE("anisotropy: Hilbert invariant agrees with the zero search") {
  std::mt19937_64 rng(13);
  int aniso = 0;
  for (int t = 0; t < 60; ++t) {
    auto q = oracle::random_form(rng, 3, 1, 8, 3);
    for (const auto& p : prime_divisors(2 * q.det())) {
      if (p > 13) continue;
      bool h = anisotropic_hilbert(q, p);
      CHECK(h == anisotropic_search(q, p));
      aniso += h;
    }
  }
  CHECK(aniso > 0);
  CHECK(anisotropic_primes(QuadForm::from_diagonal({1, 1, 7})) == std::set<Integer>{7});
  CHECK(anisotropic_primes(kThree) == std::set<Integer>{2});
}
