#include "qform/bounds.hpp"
#include "qform/errors.hpp"
#include "qform/padic.hpp"

namespace qform {

namespace {

// a = p^alpha * u with u an integer prime to p, after clearing square denominators.
void split(const Rational& a, const Integer& p, int& alpha, Integer& u) {
  Integer num = a.get_num(), den = a.get_den();
  Integer x = num * den;  // a * den^2
  alpha = valuation(x, p);
  u = x;
  for (int i = 0; i < alpha; ++i) u /= p;
}

int mod2(const Integer& x) { return mpz_odd_p(x.get_mpz_t()) ? 1 : 0; }

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Integer& p) {
  if (a == 0 || b == 0) raise(ErrorKind::InvalidArgument, "Hilbert symbol of zero");
  int al, be;
  Integer u, v;
  split(a, p, al, u);
  split(b, p, be, v);
  if (p == 2) {
    Integer eu = mod(u, 8), ev = mod(v, 8);
    int e_u = mod2(Integer((eu - 1) / 2)), e_v = mod2(Integer((ev - 1) / 2));
    int w_u = mod2(Integer((eu * eu - 1) / 8)), w_v = mod2(Integer((ev * ev - 1) / 8));
    int e = (e_u * e_v + al * w_v + be * w_u) % 2;
    return e ? -1 : 1;
  }
  int s = 1;
  if ((al * be) % 2 == 1 && mod(p, 4) == 3) s = -s;
  if (be % 2 == 1) s *= legendre(u, p);
  if (al % 2 == 1) s *= legendre(v, p);
  return s;
}

bool anisotropic_hilbert(const QuadForm& q, const Integer& p) {
  if (q.dim() != 3) raise(ErrorKind::InvalidArgument, "anisotropy test needs a ternary form");
  RatMatrix V;
  std::vector<Rational> a;
  ldl_split(q.gram(), V, a);
  for (auto& x : a) x /= 2;  // q = sum a_i y_i^2 over Q
  int eps = hilbert_symbol(a[0], a[1], p) * hilbert_symbol(a[0], a[2], p) * hilbert_symbol(a[1], a[2], p);
  Rational d = a[0] * a[1] * a[2];
  return eps != hilbert_symbol(Rational(-1), Rational(-d), p);
}

// Isotropy over Q_p is unchanged by x_i -> p x_i, so the diagonal coefficients
// are folded to scale 0 or 1 first. With unit-or-p scales a primitive zero
// exists iff one mod p (odd p) or mod 32 (p = 2) does, by Hensel's lemma.
bool anisotropic_search(const QuadForm& q, const Integer& p) {
  if (q.dim() != 3) raise(ErrorKind::InvalidArgument, "anisotropy test needs a ternary form");
  RatMatrix V;
  std::vector<Rational> a;
  ldl_split(q.gram(), V, a);
  const int k = (p == 2) ? 5 : 1;
  std::vector<CountBlock> scale0, scale1;
  for (auto& x : a) {
    int alpha;
    Integer u;
    split(x / 2, p, alpha, u);
    CountBlock b;
    b.a = mod(u, ipow(p, k));
    b.scale = alpha % 2;
    (b.scale == 0 ? scale0 : scale1).push_back(b);
  }
  auto primitive_zero = [&](std::vector<CountBlock> blocks) {
    if (blocks.empty()) return false;
    std::vector<CountBlock> mult = blocks;
    for (auto& b : mult) b.domain = Domain::Multiple;
    return count_residues(p, k, blocks, 0) > count_residues(p, k, mult, 0);
  };
  if (p == 2) {
    std::vector<CountBlock> all = scale0;
    all.insert(all.end(), scale1.begin(), scale1.end());
    return !primitive_zero(all);
  }
  for (auto& b : scale1) b.scale = 0;
  return !primitive_zero(scale0) && !primitive_zero(scale1);
}

std::set<Integer> anisotropic_primes(const QuadForm& q) {
  std::set<Integer> out;
  for (const Integer& p : prime_divisors(Integer(2 * q.det()))) {
    bool h = anisotropic_hilbert(q, p);
    if (h != anisotropic_search(q, p))
      raise(ErrorKind::InvalidArgument, "anisotropy methods disagree at p=" + p.get_str());
    if (h) out.insert(p);
  }
  return out;
}

}  // namespace qform
