#include <doctest.h>

#include "oracles.hpp"
#include "qform/errors.hpp"
#include "qform/padic.hpp"

using namespace qform;

namespace {

const QuadForm kThree = QuadForm::from_diagonal({1, 1, 1});

// T^T Q T must be block diagonal with the advertised block entries.
void check_blocks(const QuadForm& q, const Integer& p) {
  auto jd = jordan_exact(q, p);
  RatMatrix g = congruent(to_rational(q.gram()), jd.T);
  CHECK(abs(determinant(jd.T)) == 1);
  std::size_t at = 0;
  std::vector<std::size_t> owner(g.rows());
  for (std::size_t b = 0; b < jd.blocks.size(); ++b)
    for (int k = 0; k < jd.blocks[b].dim(); ++k) owner[at++] = b;
  REQUIRE(at == g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (owner[i] != owner[j]) CHECK(g(i, j) == 0);
  at = 0;
  for (const auto& b : jd.blocks) {
    Rational s = ipow(p, b.scale);
    if (!b.binary()) {
      CHECK(g(at, at) == 2 * s * b.u);
      CHECK(valuation(b.u, p) == 0);
    } else {
      CHECK(p == 2);
      CHECK(g(at, at) == 2 * s * b.alpha);
      CHECK(g(at, at + 1) == s * b.beta);
      CHECK(g(at + 1, at + 1) == 2 * s * b.gamma);
      CHECK(valuation(b.beta, p) == 0);
    }
    at += b.dim();
  }
}

}  // namespace

TEST_CASE("Jordan decomposition is an exact block diagonalization") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    auto q = oracle::random_form(rng, 2 + t % 3, 1, 10, 4);
    for (const auto& p : prime_divisors(2 * q.det())) check_blocks(q, p);
  }
}

TEST_CASE("level recovered from local data") {
  for (auto q : {kThree, QuadForm::from_diagonal({1, 1, 7}), QuadForm::from_gram(IntMatrix{{2, 1}, {1, 2}})}) {
    std::vector<JordanDecomposition> ds;
    for (const auto& p : prime_divisors(2 * q.det())) ds.push_back(jordan_exact(q, p));
    CHECK(level_from_local(q, ds) == q.level());
  }
  CHECK(level_from_local(kThree, {jordan_exact(kThree, 2)}) == 4);
}

TEST_CASE("hyperbolic plane gives a binary 2-adic block of scale 0") {
  auto q = QuadForm::from_gram(IntMatrix{{2, 1}, {1, 2}});
  auto jd = jordan_exact(q, 2);
  REQUIRE(jd.blocks.size() == 1);
  CHECK(jd.blocks[0].kind == BlockKind::Y);
  CHECK(jd.r2 == 1);
}

TEST_CASE("F invariant bracket identities") {
  CHECK(f_invariant(kThree, 1).exact_integer == Integer(2));
  CHECK(f_invariant(kThree, 3).exact_integer == Integer(8));
  auto q = QuadForm::from_diagonal({1, 1, 7});
  CHECK(f_invariant(q, 1).exact_integer == Integer(14));
  CHECK(f_invariant(q, 3).exact_integer == Integer(56));
  CHECK_THROWS_AS(f_invariant(q, Rational(1, 2)), Error);
}

TEST_CASE("density examples") {
  CHECK(density(kThree, 3, 1, DensityMethod::Bruteforce).value == Rational(2, 3));
  CHECK(density(kThree, 3, 1, DensityMethod::YangOdd).value == Rational(2, 3));
  CHECK(density(QuadForm::from_diagonal({1, 1}), 3, 1, DensityMethod::Bruteforce).value == Rational(4, 3));
  auto auto3 = density(kThree, 3, 1);
  CHECK(auto3.method == DensityMethod::YangOdd);
  CHECK(density(kThree, 2, 7).value == 0);
}

TEST_CASE("densities agree with counting every residue vector") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    auto q = oracle::random_form(rng, 3, 1, 6, 2);
    for (std::int64_t p : {2, 3, 5}) {
      for (std::int64_t n : {1, 2, 3, 6}) {
        // Stable once p^a clears the valuations of n and 4 det; a = v + 3 suffices here.
        int a = valuation(Integer(Integer(4) * q.det() * n), Integer(p)) + (p == 2 ? 3 : 1);
        std::int64_t pa = 1;
        for (int i = 0; i < a; ++i) pa *= p;
        if (pa * pa * pa > 400000) continue;
        CHECK(density(q, p, n, DensityMethod::Bruteforce).value == oracle::density_by_count(q, p, a, n));
      }
    }
  }
}

TEST_CASE("Yang closed form agrees with bruteforce on diagonal forms") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> coef(1, 27), npick(1, 200);
  for (int t = 0; t < 120; ++t) {
    int m = 3 + t % 3;
    std::vector<Integer> c(m);
    for (auto& x : c) x = coef(rng);
    auto q = QuadForm::from_diagonal(c);
    for (long p : {3L, 5L, 7L}) {
      Integer n = npick(rng);
      CHECK(density(q, p, n, DensityMethod::YangOdd).value == density(q, p, n, DensityMethod::Bruteforce).value);
    }
  }
}

TEST_CASE("unramified closed form") {
  auto q = QuadForm::from_diagonal({1, 1, 1, 1});
  for (long p : {3L, 5L, 7L, 11L})
    for (long n : {1L, 2L, 3L, 10L})
      if (n % p != 0)
        CHECK(density(q, p, n, DensityMethod::SiegelUnramified).value ==
              density(q, p, n, DensityMethod::Bruteforce).value);
  CHECK_THROWS_AS(density(q, 2, 1, DensityMethod::SiegelUnramified), Error);
}

TEST_CASE("density product for one-class genera") {
  auto dp = density_product(kThree, 1, 100000);
  CHECK(dp.value == doctest::Approx(3.0 / M_PI).epsilon(0.02));
  CHECK(density_product(QuadForm::from_diagonal({1, 1, 1}), 7, 1000).value == 0);
}

TEST_CASE("Hanke lower bound") {
  auto four = QuadForm::from_diagonal({1, 1, 1, 1});
  auto h = hanke_lower_bound(four, 5, 1);
  CHECK(h.type == SolutionType::Good);
  REQUIRE(h.exact_bound.has_value());
  CHECK(*h.exact_bound == Rational(4, 5));
  auto none = hanke_lower_bound(QuadForm::from_diagonal({4, 4, 4, 4}), 2, 1);
  CHECK(none.type == SolutionType::None);
  CHECK(none.bound == 0);
}

TEST_CASE("good-type bounds never exceed the density") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coef(1, 12), npick(1, 60);
  int good = 0;
  for (int t = 0; t < 400; ++t) {
    std::vector<Integer> c(4 + t % 2);
    for (auto& x : c) x = coef(rng);
    auto q = QuadForm::from_diagonal(c);
    long p = std::vector<long>{2, 3, 5, 7}[t % 4];
    Integer n = npick(rng);
    auto h = hanke_lower_bound(q, p, n);
    long double d = to_ld(density(q, p, n).value);
    if (h.type == SolutionType::Good) {
      ++good;
      CHECK(d + 1e-12L >= h.bound);
    } else if (d + 1e-12L < h.bound) {
      // Only bad-type cases can fall below the closed-form bound.
      CHECK(h.type != SolutionType::None);
    }
  }
  CHECK(good > 200);
}

TEST_CASE("closed-form bound fails when the unit part is anisotropic mod p") {
  // 4x^2 + 7w^2 is anisotropic mod 3, so 57 has only type I solutions and the
  // reduction gives exactly 3^(-1) * beta(q', 19) = 2/9.
  auto q = QuadForm::from_diagonal({4, 12, 6, 7});
  auto h = hanke_lower_bound(q, 3, 57);
  CHECK(h.type == SolutionType::BadI);
  CHECK(density(q, 3, 57).value == Rational(2, 9));
  CHECK(h.bound > 0.38L);
  // p = 1 mod 4 with 11x^2 + 12w^2 anisotropic mod 5: no good solution exists.
  auto q5 = QuadForm::from_diagonal({11, 10, 10, 12});
  auto h5 = hanke_lower_bound(q5, 5, 35);
  CHECK(h5.type == SolutionType::BadI);
  CHECK(density(q5, 5, 35).value == Rational(4, 25));
  CHECK(*h5.exact_bound == Rational(4, 5));
}
