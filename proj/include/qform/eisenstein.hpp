#pragma once

#include <string>
#include <vector>

#include "qform/padic.hpp"

namespace qform {

enum class Convergence { Clean, Oscillatory };
const char* convergence_name(Convergence c);

struct GenusCoefficient {
  Integer n;
  long double value = 0;
  long double archimedean = 0;
  DensityProduct finite_part;
  Convergence convergence = Convergence::Clean;
};

// (2 pi)^(m/2) n^(m/2 - 1) / (Gamma(m/2) sqrt(det Q)).
long double archimedean_factor(const QuadForm& q, const Integer& n);
GenusCoefficient genus_coefficient(const QuadForm& q, const Integer& n, std::int64_t P);
// r(gen Q, n) for n = 1..X (entry n-1); local densities are memoized by square class.
std::vector<long double> genus_coefficients(const QuadForm& q, std::int64_t X, std::int64_t P);

long double genus_upper_bound(const QuadForm& q, const Integer& n, long double epsilon, long double constant);

struct SpinorCheck {
  bool applies = false;
  int bullet = 0;  // 1 or 2 when applies
  std::string reason;
};

SpinorCheck gen_eq_spn_check(const QuadForm& q, const Integer& n);

}  // namespace qform
