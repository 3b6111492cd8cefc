#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qform/enumerate.hpp"
#include "qform/errors.hpp"
#include "qform/modular.hpp"

using namespace qform;

namespace {

SL2 mul(const SL2& x, const SL2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
SL2 inv(const SL2& x) { return {x.d, -x.b, -x.c, x.a}; }

const QuadForm kThree = QuadForm::from_diagonal({1, 1, 1});

}  // namespace

TEST_CASE("quadratic Gauss sums against closed forms") {
  for (long c = 1; c <= 60; ++c) {
    Complex g = gauss_sum(1, 0, c);
    double s = std::sqrt(static_cast<double>(c));
    std::complex<double> want;
    switch (c % 4) {
      case 0: want = {s, s}; break;
      case 1: want = {s, 0}; break;
      case 2: want = {0, 0}; break;
      default: want = {0, s}; break;
    }
    CHECK(static_cast<double>(g.real()) == doctest::Approx(want.real()).epsilon(1e-9));
    CHECK(static_cast<double>(g.imag()) == doctest::Approx(want.imag()).epsilon(1e-9));
  }
  auto g = gauss_sum(3, 5, 11);
  auto o = oracle::gauss_sum(3, 5, 11);
  CHECK(static_cast<double>(g.real()) == doctest::Approx(o.real()));
  CHECK(static_cast<double>(g.imag()) == doctest::Approx(o.imag()));
  CHECK_THROWS_AS(gauss_sum(1, 0, 0), Error);
}

TEST_CASE("theta evaluation matches a product of one-variable sums") {
  Complex z(0.17L, 0.31L);
  auto theta1 = [&](long double a) {
    Complex s = 0;
    for (long k = -60; k <= 60; ++k) s += std::exp(Complex(0, 2 * M_PIl * a * k * k) * z);
    return s;
  };
  auto q = QuadForm::from_diagonal({1, 2, 3});
  ThetaValue v = theta_eval(q, z, 400);
  Complex want = theta1(1) * theta1(2) * theta1(3);
  CHECK(static_cast<double>(std::abs(v.value - want)) < 1e-12);
  CHECK(v.tail_bound < 1e-12L);
}

TEST_CASE("truncation meets its tolerance") {
  auto a = reduced_diagonal(kThree);
  for (long double y : {0.05L, 0.2L, 1.0L}) {
    std::int64_t X = truncation_for(a, 1, y, 1e-12L, 10000000);
    CHECK(theta_tail_bound(a, 1, X, y) < 1e-12L);
    if (X > 1) CHECK(theta_tail_bound(a, 1, X - 1, y) >= 1e-12L);
  }
}

TEST_CASE("q-series evaluation") {
  QSeries s(1, {2, 3});
  Complex z(0.25L, 0.5L);
  Complex q = std::exp(Complex(0, 2 * M_PIl) * z);
  CHECK(static_cast<double>(std::abs(s.eval(z) - (1.0L + 2.0L * q + 3.0L * q * q))) < 1e-15);
}

TEST_CASE("Gamma_0(N) cosets") {
  for (long N : {1L, 4L, 6L, 12L, 25L, 28L}) {
    auto reps = coset_representatives(N);
    CHECK(Integer(static_cast<long>(reps.size())) == gamma0_index(N));
    for (const auto& r : reps) CHECK(r.a * r.d - r.b * r.c == 1);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(mul(reps[i], inv(reps[j])).c % N != 0);
  }
  CHECK(gamma0_index(12) == 24);
}

TEST_CASE("small coset representative stays in the coset") {
  for (SL2 rho : {SL2{5, 2, 7, 3}, SL2{1, 0, 13, 1}, SL2{7, 3, 2, 1}, SL2{-3, 1, -31, 10}}) {
    SL2 s = small_coset_representative(rho, 12);
    CHECK(s.a * s.d - s.b * s.c == 1);
    CHECK(mul(s, inv(rho)).c % 12 == 0);
    CHECK(abs(s.c) <= 12);
  }
}

TEST_CASE("transform data for c = 1 matches the dual form") {
  auto td = transform_data(kThree, SL2{0, -1, 1, 0});
  CHECK(td.d == 1);
  CHECK(static_cast<double>(td.amplitude) == doctest::Approx(1 / std::sqrt(8.0)));
  auto mags = fourier_magnitudes(kThree, SL2{1, 0, 1, 1}, 6);
  auto r = theta_coefficients(dual_form(kThree), 6);
  CHECK(static_cast<double>(mags[0]) == doctest::Approx(1 / std::sqrt(8.0)).epsilon(1e-9));
  for (int n = 1; n <= 6; ++n)
    CHECK(static_cast<double>(mags[n]) == doctest::Approx(to_ld(r.at(n)) / std::sqrt(8.0)).epsilon(1e-9));
}

TEST_CASE("lift to SL_m keeps residues") {
  IntMatrix a{{3, 1, 0}, {2, 5, 0}, {0, 0, 1}};  // det 13 = 1 mod 4
  IntMatrix l = lift_to_sl(a, 4);
  CHECK(determinant(l) == 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(mod(l(i, j) - a(i, j), 4) == 0);
}

TEST_CASE("Petersson estimator basics") {
  NormOptions opts;
  opts.nx = opts.ny = 8;
  opts.ymax = 4;
  auto zero = petersson_norm_g(kThree, kThree, opts);
  CHECK(zero.value == 0);
  CHECK_THROWS_AS(petersson_norm_g(kThree, QuadForm::from_diagonal({1, 1, 3}), opts), Error);
  auto e = petersson_norm_f(kThree, opts);
  CHECK(e.cosets == 6);
  CHECK(e.value >= 0);
  CHECK(e.value < 1e-3L);  // one-class genus
}
