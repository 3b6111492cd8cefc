#include <doctest.h>

#include "oracles.hpp"
#include "qform/errors.hpp"
#include "qform/forms.hpp"

using namespace qform;

namespace {

ErrorKind kind_of(const IntMatrix& g) {
  try {
    QuadForm::from_gram(g);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("validation names the failure") {
  CHECK(kind_of(IntMatrix{{2, 1}, {0, 2}}) == ErrorKind::NotSymmetric);
  CHECK(kind_of(IntMatrix{{1, 0}, {0, 2}}) == ErrorKind::OddDiagonal);
  CHECK(kind_of(IntMatrix{{2, 3}, {3, 2}}) == ErrorKind::NotPositiveDefinite);
  CHECK(kind_of(IntMatrix{{-2}}) == ErrorKind::NotPositiveDefinite);
}

TEST_CASE("determinant and level of standard forms") {
  auto three = QuadForm::from_diagonal({1, 1, 1});
  CHECK(three.det() == 8);
  CHECK(three.level() == 4);
  auto a2 = QuadForm::from_gram(IntMatrix{{2, 1}, {1, 2}});
  CHECK(a2.det() == 3);
  CHECK(a2.level() == 3);
  auto e = QuadForm::from_diagonal({1, 1, 3});
  CHECK(e.level() == 12);
  CHECK(QuadForm::from_diagonal({2, 2, 2}).primitive() == false);
  CHECK(three.primitive());
}

TEST_CASE("level closed form agrees with divisor scan") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    auto q = oracle::random_form(rng, 2 + t % 3, 1, 9, 3);
    CHECK(level(q) == level_by_scan(q));
    CHECK(q.level() == level_by_scan(q));
  }
}

TEST_CASE("dual of the dual is the form up to scaling by the level") {
  auto q = QuadForm::from_diagonal({1, 1, 3});
  auto d = dual_form(q);
  // N Q^-1 for Q = diag(2, 2, 6), N = 12.
  CHECK(d.gram() == IntMatrix{{6, 0, 0}, {0, 6, 0}, {0, 0, 2}});
}

TEST_CASE("reduction invariants on random forms") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 80; ++t) {
    int m = 2 + t % 4;
    auto base = oracle::random_form(rng, m, 1, 12, 4);
    auto q = transform(base, oracle::random_unimodular(rng, m, 12));
    auto r = siegel_reduce(q);
    CHECK(check_reduced(q, r) == "");
    // Unimodular invariance.
    CHECK(q.det() == base.det());
    CHECK(q.level() == base.level());
    CHECK(minimum(q) == minimum(base));
    Rational prod = 1;
    for (const auto& a : r.a) prod *= a;
    CHECK(prod == Rational(q.det()));
  }
}

TEST_CASE("minimum against the box oracle") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    auto q = oracle::random_form(rng, 3, 1, 6, 2);
    auto r = oracle::counts_by_box(q, 12);
    std::int64_t first = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > 0) {
        first = static_cast<std::int64_t>(i) + 1;
        break;
      }
    if (first) CHECK(minimum(q) == first);
  }
}
