#include <utility>

#include "qform/forms.hpp"

namespace qform {

namespace {

std::string at(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

QuadForm QuadForm::from_gram(const IntMatrix& gram, std::string name) {
  const std::size_t m = gram.rows();
  if (m == 0 || !gram.is_square()) raise(ErrorKind::InvalidArgument, "gram must be a non-empty square matrix");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (gram(i, j) != gram(j, i)) raise(ErrorKind::NotSymmetric, "entry " + at(i, j));
  for (std::size_t i = 0; i < m; ++i)
    if (mpz_odd_p(gram(i, i).get_mpz_t())) raise(ErrorKind::OddDiagonal, "index " + std::to_string(i));
  // Sylvester: every leading principal minor must be positive.
  for (std::size_t k = 1; k <= m; ++k) {
    IntMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = gram(i, j);
    if (determinant(lead) <= 0)
      raise(ErrorKind::NotPositiveDefinite, "leading minor " + std::to_string(k - 1));
  }
  QuadForm q;
  q.gram_ = gram;
  q.name_ = std::move(name);
  q.det_ = determinant(gram);
  Integer g = 0;
  for (std::size_t i = 0; i < m; ++i) {
    g = gcd(g, Integer(gram(i, i) / 2));
    for (std::size_t j = i + 1; j < m; ++j) g = gcd(g, gram(i, j));
  }
  q.primitive_ = (g == 1);
  q.level_ = qform::level(q);
  return q;
}

QuadForm QuadForm::from_diagonal(const std::vector<Integer>& coeffs, std::string name) {
  IntMatrix g(coeffs.size(), coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) g(i, i) = 2 * coeffs[i];
  return from_gram(g, std::move(name));
}

bool QuadForm::is_diagonal() const {
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < gram_.cols(); ++j)
      if (i != j && gram_(i, j) != 0) return false;
  return true;
}

RatMatrix QuadForm::inverse_gram() const { return inverse(gram_); }

Integer QuadForm::value(const std::vector<Integer>& x) const {
  const std::size_t m = gram_.rows();
  Integer s = 0;
  for (std::size_t i = 0; i < m; ++i) {
    s += gram_(i, i) / 2 * x[i] * x[i];
    for (std::size_t j = i + 1; j < m; ++j) s += gram_(i, j) * x[i] * x[j];
  }
  return s;
}

std::vector<Integer> QuadForm::diagonal_coeffs() const {
  if (!is_diagonal()) raise(ErrorKind::NotDiagonal, "form is not diagonal");
  std::vector<Integer> c;
  for (std::size_t i = 0; i < gram_.rows(); ++i) c.push_back(gram_(i, i) / 2);
  return c;
}

QuadForm validate_form(const IntMatrix& raw) { return QuadForm::from_gram(raw); }

Integer level(const QuadForm& q) {
  RatMatrix inv = q.inverse_gram();
  Integer n = 1;
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) {
      Rational e = (i == j) ? Rational(inv(i, j) / 2) : inv(i, j);
      n = lcm(n, Integer(e.get_den()));
    }
  return n;
}

Integer level_by_scan(const QuadForm& q) {
  RatMatrix inv = q.inverse_gram();
  Integer den = 1;
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) den = lcm(den, Integer(inv(i, j).get_den()));
  for (const Integer& n : divisors(2 * q.det() * den)) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < inv.rows(); ++i)
      for (std::size_t j = 0; ok && j < inv.cols(); ++j) {
        Rational e = n * inv(i, j);
        if (e.get_den() != 1 || (i == j && mpz_odd_p(e.get_num_mpz_t()))) ok = false;
      }
    if (ok) return n;
  }
  raise(ErrorKind::InvalidArgument, "level scan found no divisor");
}

QuadForm dual_form(const QuadForm& q) {
  RatMatrix inv = q.inverse_gram();
  IntMatrix d(inv.rows(), inv.cols());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) {
      Rational e = q.level() * inv(i, j);
      d(i, j) = e.get_num();
    }
  return QuadForm::from_gram(d, q.name().empty() ? std::string() : q.name() + "^dual");
}

QuadForm transform(const QuadForm& q, const IntMatrix& u) {
  return QuadForm::from_gram(congruent(q.gram(), u), q.name());
}

}  // namespace qform
