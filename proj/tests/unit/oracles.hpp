#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qform/forms.hpp"

// Deliberately naive reference computations used to check the library.
namespace oracle {

using qform::Integer;
using qform::IntMatrix;
using qform::QuadForm;

inline std::int64_t value(const IntMatrix& g, const std::vector<std::int64_t>& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += g(i, j).get_si() * x[i] * x[j];
  return s / 2;
}

// r(Q, n) for n = 1..X by scanning the box |x_i| <= sqrt(2 X (Q^-1)_ii).
inline std::vector<std::int64_t> counts_by_box(const QuadForm& q, std::int64_t X) {
  const int m = q.dim();
  auto inv = q.inverse_gram();
  std::vector<std::int64_t> bound(m);
  for (int i = 0; i < m; ++i)
    bound[i] = static_cast<std::int64_t>(std::sqrt(2.0 * X * inv(i, i).get_d())) + 1;
  std::vector<std::int64_t> r(X, 0), x(m);
  for (int i = 0; i < m; ++i) x[i] = -bound[i];
  while (true) {
    std::int64_t v = value(q.gram(), x);
    if (v >= 1 && v <= X) ++r[v - 1];
    int i = 0;
    while (i < m && x[i] == bound[i]) x[i] = -bound[i], ++i;
    if (i == m) break;
    ++x[i];
  }
  return r;
}

// #{x mod p^a : q(x) = n mod p^a} / p^(a(m-1)) over every residue vector.
inline qform::Rational density_by_count(const QuadForm& q, std::int64_t p, int a, std::int64_t n) {
  const int m = q.dim();
  std::int64_t pa = 1;
  for (int i = 0; i < a; ++i) pa *= p;
  std::int64_t target = ((n % pa) + pa) % pa, hits = 0;
  std::vector<std::int64_t> x(m, 0);
  while (true) {
    std::int64_t v = value(q.gram(), x) % pa;
    if (v == target) ++hits;
    int i = 0;
    while (i < m && x[i] == pa - 1) x[i] = 0, ++i;
    if (i == m) break;
    ++x[i];
  }
  Integer denom = 1;
  for (int i = 0; i < a * (m - 1); ++i) denom *= p;
  qform::Rational out(Integer(static_cast<long>(hits)), denom);
  out.canonicalize();
  return out;
}

// Random positive definite even Gram matrix: diagonal-dominant with bounded entries.
inline QuadForm random_form(std::mt19937_64& rng, int m, int diag_lo, int diag_hi, int off) {
  std::uniform_int_distribution<int> d(diag_lo, diag_hi), o(-off, off);
  while (true) {
    IntMatrix g(m, m);
    for (int i = 0; i < m; ++i) {
      g(i, i) = 2 * d(rng);
      for (int j = 0; j < i; ++j) g(i, j) = g(j, i) = o(rng);
    }
    try {
      return QuadForm::from_gram(g);
    } catch (const qform::Error&) {
    }
  }
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, int m, int steps) {
  IntMatrix u(m, m);
  for (int i = 0; i < m; ++i) u(i, i) = 1;
  std::uniform_int_distribution<int> idx(0, m - 1), k(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = k(rng);
    for (int r = 0; r < m; ++r) u(r, j) += c * u(r, i);
  }
  return u;
}

inline std::complex<double> gauss_sum(long a, long b, long c) {
  std::complex<double> s = 0;
  for (long x = 0; x < c; ++x) {
    double t = 2 * M_PI * static_cast<double>(((a * x * x + b * x) % c + c) % c) / c;
    s += std::polar(1.0, t);
  }
  return s;
}

}  // namespace oracle
