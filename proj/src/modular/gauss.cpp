#include <cmath>
#include <numbers>

#include "qform/modular.hpp"

namespace qform {

Complex gauss_sum(const Integer& a, const Integer& b, const Integer& c) {
  if (c < 1) raise(ErrorKind::InvalidArgument, "gauss_sum needs c >= 1");
  if (c > 1000000) raise(ErrorKind::OverflowBudget, "gauss_sum modulus above 10^6");
  const long cm = c.get_si();
  const long am = mod(a, c).get_si(), bm = mod(b, c).get_si();
  const long double two_pi = 2 * std::numbers::pi_v<long double>;
  long double re = 0, im = 0;
  for (long x = 0; x < cm; ++x) {
    __int128 k = (static_cast<__int128>(am) * x % cm * x + static_cast<__int128>(bm) * x) % cm;
    long double ang = two_pi * static_cast<long double>(static_cast<long>(k)) / cm;
    re += std::cos(ang);
    im += std::sin(ang);
  }
  return {re, im};
}

}  // namespace qform
