#pragma once

#include <string>
#include <vector>

#include "qform/arith.hpp"
#include "qform/matrix.hpp"

namespace qform {

// Positive definite integral quadratic form q(x) = x^T Q x / 2 given by its
// even-diagonal Gram matrix Q. Immutable once constructed.
class QuadForm {
 public:
  QuadForm() = default;  // empty placeholder; use the factories
  // Validates and caches determinant, level and primitivity.
  static QuadForm from_gram(const IntMatrix& gram, std::string name = {});
  // q = sum a_i x_i^2, i.e. Gram diag(2 a_1, ..., 2 a_m).
  static QuadForm from_diagonal(const std::vector<Integer>& coeffs, std::string name = {});

  int dim() const { return static_cast<int>(gram_.rows()); }
  const IntMatrix& gram() const { return gram_; }
  const Integer& det() const { return det_; }
  const Integer& level() const { return level_; }
  bool primitive() const { return primitive_; }
  const std::string& name() const { return name_; }
  bool is_diagonal() const;
  // Q^{-1}.
  RatMatrix inverse_gram() const;
  // q(x) = x^T Q x / 2.
  Integer value(const std::vector<Integer>& x) const;
  // Coefficients a_i of a diagonal form; throws NotDiagonal otherwise.
  std::vector<Integer> diagonal_coeffs() const;

  bool operator==(const QuadForm& o) const { return gram_ == o.gram_; }

 private:
  IntMatrix gram_;
  Integer det_;
  Integer level_;
  bool primitive_ = false;
  std::string name_;
};

QuadForm validate_form(const IntMatrix& raw);

// Smallest N with N Q^{-1} integral and even-diagonal (closed form via the
// denominators of Q^{-1}).
Integer level(const QuadForm& q);
// The same quantity by scanning divisors of 2 det(Q) * lcm-denominator(Q^{-1}).
Integer level_by_scan(const QuadForm& q);

QuadForm dual_form(const QuadForm& q);
QuadForm transform(const QuadForm& q, const IntMatrix& u);

struct ReducedForm {
  IntMatrix gram;  // U^T Q U
  IntMatrix U;
  RatMatrix V;  // upper unitriangular
  std::vector<Rational> a;
};

// U^T Q U = V^T diag(a) V; assumes the Gram matrix is positive definite.
void ldl_split(const IntMatrix& gram, RatMatrix& V, std::vector<Rational>& a);
ReducedForm siegel_reduce(const QuadForm& q);
// Checks the Siegel-domain invariants exactly; returns an empty string when all
// hold, else a description of the first failure.
std::string check_reduced(const QuadForm& q, const ReducedForm& r);

Integer minimum(const QuadForm& q);

}  // namespace qform
