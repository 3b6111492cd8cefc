#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qform/enumerate.hpp"
#include "qform/padic.hpp"

namespace qform {

using Complex = std::complex<long double>;

// G(a, b, c) = sum_{x mod c} e((a x^2 + b x) / c), by direct summation.
Complex gauss_sum(const Integer& a, const Integer& b, const Integer& c);

struct SL2 {
  Integer a = 1, b = 0, c = 0, d = 1;
};

struct TransformData {
  SL2 rho;
  Integer c_odd;  // c = c_odd * 2^t
  int t = 0;
  IntMatrix U;
  IntMatrix Qt;  // U^T Q U
  std::vector<Integer> q_diag;   // (U^T Q U)_ii / 2
  std::vector<Integer> d_tilde;  // gcd(q_i, c_odd, N)
  std::vector<int> t_exp;        // t_i
  std::vector<int> nu2;          // 2-adic scales per coordinate, capped at t
  int binary_coords = 0;         // 2r
  std::vector<Integer> D;        // diagonal of D
  Integer d;                     // gcd(c, N)
  Integer d_hat;
  QuadForm S;
  std::vector<std::string> eta_rule;  // "1" or "sqrt2_odd_zero_even"
  long double amplitude = 0;          // sqrt(det D) / sqrt(det Q)
};

TransformData transform_data(const QuadForm& q, const SL2& rho);

// Lifts a matrix with determinant == 1 mod c to SL_m(Z) (entries congruent mod c).
IntMatrix lift_to_sl(const IntMatrix& a, const Integer& c);

// Number of lattice vectors with q(x) <= n, from the reduced diagonal a_i;
// an upper bound for r(Q, n).
long double count_bound(const std::vector<long double>& a, long double n);
// 2 * sum_{n > X} scale * count_bound(n) * exp(-2 pi n y).
long double theta_tail_bound(const std::vector<long double>& a, long double scale, std::int64_t X, long double y);
// Smallest X with theta_tail_bound < tol (capped at xmax; returns xmax + 1 if impossible).
std::int64_t truncation_for(const std::vector<long double>& a, long double scale, long double y, long double tol,
                            std::int64_t xmax);

// Truncated q-series sum_{n <= X} b_n e(n z) (+ constant).
class QSeries {
 public:
  QSeries() = default;
  QSeries(long double constant, std::vector<long double> coeffs) : c0_(constant), b_(std::move(coeffs)) {}
  std::int64_t size() const { return static_cast<std::int64_t>(b_.size()); }
  Complex eval(Complex z, std::int64_t X) const;
  Complex eval(Complex z) const { return eval(z, size()); }

 private:
  long double c0_ = 0;
  std::vector<long double> b_;  // b_[n-1]
};

struct ThetaValue {
  Complex value;
  long double tail_bound = 0;
  std::int64_t X = 0;
};

ThetaValue theta_eval(const QuadForm& q, Complex z, std::int64_t X);

// Diagonal entries a_i of the reduced form as long doubles.
std::vector<long double> reduced_diagonal(const QuadForm& q);

// |a(n)| for n = 0..nmax of theta(Q)|[rho] = sum a(n) e(d_hat n z / N), by
// trapezoid quadrature in x at height y (default 0.1 N / d_hat). rho is first
// replaced by a small representative of Gamma_0(N) rho, which keeps |a(n)|.
std::vector<long double> fourier_magnitudes(const QuadForm& q, const SL2& rho, int nmax, long double y = 0);

struct NormOptions {
  int nx = 32;
  int ny = 32;
  long double ymax = 10;
  long double im_floor = 1e-3;
  long double tail_tol = 1e-10;
  std::int64_t cutoff = 10000;  // Euler product cutoff in f-mode
  int threads = 1;
  bool refine = true;
};

struct NormEstimate {
  long double value = 0;
  std::string mode;
  int nx = 0, ny = 0;
  std::int64_t X = 0;
  int cosets = 0;
  long double refinement_delta = 0;
  long double min_im = 0;
  std::uint64_t evaluations = 0;
};

// Right coset representatives of Gamma_0(N) in SL_2(Z) with small bottom rows.
std::vector<SL2> coset_representatives(const Integer& N);
Integer gamma0_index(const Integer& N);
// A matrix in Gamma_0(N) rho with the smallest bottom-left entry.
SL2 small_coset_representative(const SL2& rho, const Integer& N);

// Necessary conditions for Q, Q2 to lie in one genus; throws GenusMismatch.
void check_same_genus(const QuadForm& q, const QuadForm& q2);

NormEstimate petersson_norm_g(const QuadForm& q, const QuadForm& q2, const NormOptions& opts = {});
NormEstimate petersson_norm_f(const QuadForm& q, const NormOptions& opts = {});

}  // namespace qform
