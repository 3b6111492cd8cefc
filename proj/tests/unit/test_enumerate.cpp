#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qform/enumerate.hpp"
#include "qform/errors.hpp"

using namespace qform;

TEST_CASE("sum of three squares table") {
  auto q = QuadForm::from_diagonal({1, 1, 1});
  auto t = theta_coefficients(q, 10);
  std::vector<Integer> want{6, 12, 8, 6, 24, 24, 0, 12, 30, 24};
  CHECK(t.r == want);
  CHECK(count_representations(q, 7) == 0);
}

TEST_CASE("four squares agree with Jacobi") {
  auto q = QuadForm::from_diagonal({1, 1, 1, 1});
  auto t = theta_coefficients(q, 60);
  for (std::int64_t n = 1; n <= 60; ++n) {
    Integer s = 0;
    for (auto d : divisors(Integer(static_cast<long>(n))))
      if (d % 4 != 0) s += d;
    CHECK(t.at(n) == 8 * s);
  }
}

TEST_CASE("enumeration matches the box oracle on random forms") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 2 + trial % 3;
    auto q = oracle::random_form(rng, m, 1, 7, 3);
    std::int64_t X = m == 4 ? 12 : 30;
    auto want = oracle::counts_by_box(q, X);
    auto got = theta_coefficients(q, X);
    for (std::int64_t n = 1; n <= X; ++n) CHECK(got.at(n) == want[n - 1]);
    CHECK(count_representations(q, X) == want[X - 1]);
  }
}

TEST_CASE("threaded enumeration is deterministic") {
  std::mt19937_64 rng(2);
  auto q = oracle::random_form(rng, 4, 2, 9, 3);
  EnumOptions one, many;
  many.threads = 4;
  CHECK(theta_coefficients(q, 200, one).r == theta_coefficients(q, 200, many).r);
}

TEST_CASE("listed representations are distinct solutions") {
  auto q = QuadForm::from_gram(IntMatrix{{2, 1, 0}, {1, 4, 1}, {0, 1, 6}});
  for (long n : {5L, 9L, 14L}) {
    auto list = representations_list(q, n, 10000);
    CHECK(Integer(static_cast<long>(list.size())) == count_representations(q, n));
    std::set<std::vector<Integer>> seen(list.begin(), list.end());
    CHECK(seen.size() == list.size());
    for (const auto& x : list) CHECK(q.value(x) == n);
  }
}

TEST_CASE("node budget raises BudgetExceeded") {
  auto q = QuadForm::from_diagonal({1, 1, 1});
  EnumOptions tiny;
  tiny.node_budget = 50;
  bool raised = false;
  try {
    theta_coefficients(q, 10000, tiny);
  } catch (const Error& e) {
    raised = e.is_budget();
  }
  CHECK(raised);
}

TEST_CASE("representation list truncation") {
  auto q = QuadForm::from_diagonal({1, 1, 1});
  CHECK(representations_list(q, 27, 100).size() == 32);
  CHECK(representations_list(q, 7, 10).empty());
  CHECK(representations_list(q, 1, 2).size() == 2);
  CHECK(count_representations(QuadForm::from_diagonal({1, 1, 1, 1}), 7) == 64);
}
