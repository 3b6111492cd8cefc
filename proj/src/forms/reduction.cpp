#include <cmath>

#include "qform/enumerate.hpp"
#include "qform/forms.hpp"

namespace qform {

void ldl_split(const IntMatrix& gram, RatMatrix& V, std::vector<Rational>& a) {
  const std::size_t m = gram.rows();
  V = RatMatrix::identity(m);
  a.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    Rational d = gram(i, i);
    for (std::size_t k = 0; k < i; ++k) d -= V(k, i) * V(k, i) * a[k];
    a[i] = d;
    for (std::size_t j = i + 1; j < m; ++j) {
      Rational s = gram(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= V(k, i) * V(k, j) * a[k];
      V(i, j) = s / d;
    }
  }
}

namespace {

// Column k of the basis gets -r times column j.
void add_column(IntMatrix& g, IntMatrix& u, std::size_t k, std::size_t j, const Integer& r) {
  const std::size_t m = g.rows();
  for (std::size_t i = 0; i < m; ++i) u(i, k) -= r * u(i, j);
  for (std::size_t i = 0; i < m; ++i) g(i, k) -= r * g(i, j);
  for (std::size_t i = 0; i < m; ++i) g(k, i) -= r * g(j, i);
}

void swap_columns(IntMatrix& g, IntMatrix& u, std::size_t a, std::size_t b) {
  const std::size_t m = g.rows();
  for (std::size_t i = 0; i < m; ++i) std::swap(u(i, a), u(i, b));
  for (std::size_t i = 0; i < m; ++i) std::swap(g(i, a), g(i, b));
  for (std::size_t i = 0; i < m; ++i) std::swap(g(a, i), g(b, i));
}

}  // namespace

ReducedForm siegel_reduce(const QuadForm& q) {
  const std::size_t m = q.dim();
  ReducedForm r;
  r.gram = q.gram();
  r.U = IntMatrix::identity(m);
  const Rational half(1, 2), three_quarters(3, 4);
  std::size_t k = 1;
  while (k < m) {
    for (std::size_t jj = k; jj-- > 0;) {
      ldl_split(r.gram, r.V, r.a);
      const Rational& mu = r.V(jj, k);
      if (abs(mu) > half) add_column(r.gram, r.U, k, jj, round_of(mu));
    }
    ldl_split(r.gram, r.V, r.a);
    if (r.a[k] < three_quarters * r.a[k - 1]) {
      swap_columns(r.gram, r.U, k, k - 1);
      k = (k > 1) ? k - 1 : 1;
    } else {
      ++k;
    }
  }
  ldl_split(r.gram, r.V, r.a);
  std::string bad = check_reduced(q, r);
  if (!bad.empty()) raise(ErrorKind::ReductionFailure, bad);
  return r;
}

std::string check_reduced(const QuadForm& q, const ReducedForm& r) {
  const std::size_t m = q.dim();
  if (!(congruent(q.gram(), r.U) == r.gram)) return "U^T Q U differs from reduced gram";
  Integer du = determinant(r.U);
  if (du != 1 && du != -1) return "U is not unimodular";
  RatMatrix D(m, m);
  for (std::size_t i = 0; i < m; ++i) D(i, i) = r.a[i];
  if (!(congruent(D, r.V) == to_rational(r.gram))) return "V^T D V split does not match";
  Rational prod = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (r.V(i, i) != 1) return "V diagonal is not 1";
    for (std::size_t j = 0; j < i; ++j)
      if (r.V(i, j) != 0) return "V is not upper triangular";
    for (std::size_t j = i + 1; j < m; ++j)
      if (abs(r.V(i, j)) > Rational(1, 2)) return "off-diagonal entry exceeds 1/2";
    if (i + 1 < m && r.a[i] > Rational(4, 3) * r.a[i + 1]) return "a_i > (4/3) a_{i+1}";
    // Bracket (3/4)^(i-1) <= a_i <= (4/3)^(m-i) N, with 1-based i.
    if (r.a[i] < rpow(Rational(3, 4), static_cast<long>(i))) return "a_i below lower bracket";
    if (r.a[i] > rpow(Rational(4, 3), static_cast<long>(m - 1 - i)) * q.level()) return "a_i above upper bracket";
    prod *= r.a[i];
  }
  if (prod != q.det()) return "product of a_i differs from det";
  return {};
}

Integer minimum(const QuadForm& q) {
  Enumerator en(q);
  const IntMatrix& g = en.reduced().gram;
  Integer best = g(0, 0) / 2;
  for (std::size_t i = 1; i < g.rows(); ++i)
    if (g(i, i) / 2 < best) best = g(i, i) / 2;
  en.for_each(best.get_si(), [&](const std::vector<std::int64_t>&, std::int64_t v) {
    if (v < best) best = v;
    return true;
  });
  long double hermite = std::pow(4.0L / 3.0L, (q.dim() - 1) / 2.0L) *
                        std::exp(log_of(q.det()) / q.dim());
  if (to_ld(best) > hermite * (1 + 1e-12L))
    raise(ErrorKind::ReductionFailure, "minimum exceeds the Hermite bound");
  return best;
}

}  // namespace qform
