#include <cmath>
#include <limits>
#include <numbers>

#include "qform/modular.hpp"

namespace qform {

namespace {
constexpr long double kPi = std::numbers::pi_v<long double>;
}

long double count_bound(const std::vector<long double>& a, long double n) {
  long double b = 1;
  for (long double ai : a) b *= 2 * std::sqrt(2 * n / ai) + 1;
  return b;
}

long double theta_tail_bound(const std::vector<long double>& a, long double scale, std::int64_t X, long double y) {
  const long double m = static_cast<long double>(a.size());
  const long double x1 = static_cast<long double>(X) + 1;
  long double ratio = std::exp(-2 * kPi * y) * std::pow(1 + 1 / x1, m / 2);
  if (ratio >= 1) return std::numeric_limits<long double>::infinity();
  long double log_first = std::log(scale * count_bound(a, x1)) - 2 * kPi * y * x1;
  return 2 * std::exp(log_first) / (1 - ratio);
}

std::int64_t truncation_for(const std::vector<long double>& a, long double scale, long double y, long double tol,
                            std::int64_t xmax) {
  if (theta_tail_bound(a, scale, xmax, y) >= tol) return xmax + 1;
  std::int64_t lo = 0, hi = xmax;  // invariant: hi satisfies
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (theta_tail_bound(a, scale, mid, y) < tol)
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

Complex QSeries::eval(Complex z, std::int64_t X) const {
  X = std::min<std::int64_t>(X, size());
  const Complex q = std::exp(Complex(0, 2 * kPi) * z);
  Complex acc = 0;
  for (std::int64_t n = X; n >= 1; --n) acc = acc * q + b_[static_cast<std::size_t>(n - 1)];
  return c0_ + acc * q;
}

std::vector<long double> reduced_diagonal(const QuadForm& q) {
  ReducedForm r = siegel_reduce(q);
  std::vector<long double> a;
  for (const auto& ai : r.a) a.push_back(to_ld(ai));
  return a;
}

ThetaValue theta_eval(const QuadForm& q, Complex z, std::int64_t X) {
  if (z.imag() <= 0) raise(ErrorKind::InvalidArgument, "theta_eval needs Im z > 0");
  if (X < 1) raise(ErrorKind::InvalidArgument, "theta_eval needs X >= 1");
  ThetaValue out;
  out.X = X;
  out.tail_bound = theta_tail_bound(reduced_diagonal(q), 1, X, z.imag());
  if (!(out.tail_bound < 1e-12L))
    raise(ErrorKind::TruncationInsufficient, "tail bound " + std::to_string(static_cast<double>(out.tail_bound)) +
                                                 " >= 1e-12 at X=" + std::to_string(X));
  ThetaCoefficients t = theta_coefficients(q, X);
  std::vector<long double> b;
  for (const auto& r : t.r) b.push_back(to_ld(r));
  out.value = QSeries(1, std::move(b)).eval(z);
  return out;
}

std::vector<long double> fourier_magnitudes(const QuadForm& q, const SL2& rho_in, int nmax, long double y) {
  TransformData td = transform_data(q, small_coset_representative(rho_in, q.level()));
  const SL2& rho = td.rho;
  const long double N = to_ld(q.level());
  const long double dh = to_ld(td.d_hat);
  const long double period = N / dh;
  if (y <= 0) y = 0.1L * period;
  const long double c = to_ld(rho.c), d = to_ld(rho.d), a = to_ld(rho.a), b = to_ld(rho.b);
  const int M = 512;
  if (nmax >= M / 4) raise(ErrorKind::InvalidArgument, "nmax too large for the sample count");
  const long double half_m = q.dim() / 2.0L;
  const long double min_im = y / (c * c * (period * period / 4 + y * y));
  std::vector<long double> adiag = reduced_diagonal(q);
  std::int64_t X = truncation_for(adiag, 1, min_im, 1e-15L, 4000000);
  if (X > 4000000) raise(ErrorKind::TruncationInsufficient, "theta truncation above 4e6 terms");
  X = std::max<std::int64_t>(X, 1);
  ThetaCoefficients tc = theta_coefficients(q, X);
  std::vector<long double> coeffs;
  for (const auto& r : tc.r) coeffs.push_back(to_ld(r));
  QSeries theta(1, std::move(coeffs));
  const long double x0 = -d / c - period / 2;
  std::vector<Complex> samples(M);
  for (int j = 0; j < M; ++j) {
    Complex w(x0 + period * j / M, y);
    Complex cw = c * w + d;
    Complex tau = (a * w + b) / cw;
    std::int64_t Xj = truncation_for(adiag, 1, tau.imag(), 1e-15L, X);
    samples[j] = std::exp(-half_m * std::log(cw)) * theta.eval(tau, Xj);
  }
  std::vector<long double> out;
  for (int n = 0; n <= nmax; ++n) {
    Complex acc = 0;
    for (int j = 0; j < M; ++j) {
      long double x = x0 + period * j / M;
      acc += samples[j] * std::exp(Complex(0, -2 * kPi * dh * n * x / N));
    }
    acc /= static_cast<long double>(M);
    out.push_back(std::abs(acc) * std::exp(2 * kPi * dh * n * y / N));
  }
  return out;
}

}  // namespace qform
