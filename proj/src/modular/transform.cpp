#include <cmath>

#include "qform/modular.hpp"

namespace qform {

namespace {

struct RowOp {
  std::size_t target, source;
  Integer factor;  // row_target += factor * row_source
};

Integer crt(const std::vector<std::pair<Integer, Integer>>& parts) {
  Integer x = 0, m = 1;
  for (const auto& [r, mod_i] : parts) {
    // x + m * k == r (mod mod_i)
    Integer k = mod((r - x) * inverse_mod(m, mod_i), mod_i);
    x += m * k;
    m *= mod_i;
  }
  return mod(x, m);
}

}  // namespace

IntMatrix lift_to_sl(const IntMatrix& a_in, const Integer& c) {
  const std::size_t m = a_in.rows();
  if (c == 1) return IntMatrix::identity(m);
  IntMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = mod(a_in(i, j), c);
  if (mod(determinant(a), c) != 1) raise(ErrorKind::PivotFailure, "matrix is not in SL_m(Z/c)");
  std::vector<RowOp> ops;
  auto apply = [&](std::size_t tgt, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < m; ++j) a(tgt, j) = mod(a(tgt, j) + f * a(src, j), c);
    ops.push_back({tgt, src, f});
  };
  for (std::size_t k = 0; k < m; ++k) {
    // Euclid down the column (rows k..m-1) to concentrate the gcd in row k.
    for (;;) {
      std::size_t piv = m;
      for (std::size_t i = k; i < m; ++i)
        if (a(i, k) != 0 && (piv == m || a(i, k) < a(piv, k))) piv = i;
      if (piv == m) raise(ErrorKind::PivotFailure, "column vanishes mod c");
      bool others = false;
      for (std::size_t i = k; i < m; ++i) {
        if (i == piv || a(i, k) == 0) continue;
        others = true;
        apply(i, piv, Integer(-(a(i, k) / a(piv, k))));
      }
      if (!others) {
        if (piv != k) {
          // Move row piv into row k with determinant-one operations.
          apply(k, piv, 1);
          apply(piv, k, -1);
        }
        break;
      }
    }
    Integer g = a(k, k);
    if (g != 1) {
      if (k + 1 == m) raise(ErrorKind::PivotFailure, "last pivot is not 1 mod c");
      if (gcd(g, c) != 1) raise(ErrorKind::PivotFailure, "pivot not invertible mod c");
      // r+ = row k (entry g), then row k += x * row r with g + x g == 1.
      std::size_t r = k + 1;
      apply(r, k, 1);
      Integer x = mod((1 - g) * inverse_mod(g, c), c);
      apply(k, r, x);
    }
    for (std::size_t i = 0; i < m; ++i)
      if (i != k && a(i, k) != 0) apply(i, k, Integer(c - a(i, k)));
  }
  // E * A == I (mod c) with E the product of the recorded operations, so
  // U = E^{-1} is an integral matrix of determinant one congruent to A.
  IntMatrix u = IntMatrix::identity(m);
  for (const auto& op : ops)
    for (std::size_t i = 0; i < m; ++i) u(i, op.source) -= op.factor * u(i, op.target);
  return u;
}

TransformData transform_data(const QuadForm& q, const SL2& rho_in) {
  SL2 rho = rho_in;
  if (rho.a * rho.d - rho.b * rho.c != 1) raise(ErrorKind::InvalidArgument, "rho must have determinant 1");
  const Integer& N = q.level();
  if (rho.c == 0 || mpz_divisible_p(rho.c.get_mpz_t(), N.get_mpz_t()))
    raise(ErrorKind::GammaZeroN, "rho lies in Gamma_0(N)");
  if (rho.c < 0) rho = {-rho.a, -rho.b, -rho.c, -rho.d};
  const std::size_t m = q.dim();
  TransformData td;
  td.rho = rho;
  const Integer c = rho.c;
  td.t = valuation(c, Integer(2));
  td.c_odd = c >> td.t;

  // Local normal forms, glued by CRT into a matrix mod c.
  std::vector<std::pair<Integer, RatMatrix>> locals;
  for (const auto& [p, k] : factor(c)) locals.emplace_back(ipow(p, k), jordan_exact(q, p).T);
  IntMatrix u0(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::pair<Integer, Integer>> parts;
      for (const auto& [pk, T] : locals) {
        Integer p = factor(pk)[0].first;
        int k = valuation(pk, p);
        parts.emplace_back(residue(T(i, j), p, k), pk);
      }
      u0(i, j) = parts.empty() ? Integer(i == j ? 1 : 0) : crt(parts);
    }
  Integer det0 = mod(determinant(u0), c);
  if (c > 1 && det0 != 1) {
    Integer inv = inverse_mod(det0, c);
    for (std::size_t i = 0; i < m; ++i) u0(i, m - 1) = mod(u0(i, m - 1) * inv, c);
  }
  td.U = lift_to_sl(u0, c);
  td.Qt = congruent(q.gram(), td.U);
  for (std::size_t i = 0; i < m; ++i) {
    td.q_diag.push_back(td.Qt(i, i) / 2);
    td.d_tilde.push_back(gcd(gcd(td.q_diag.back(), td.c_odd), N));
  }

  td.nu2.assign(m, 0);
  td.t_exp.assign(m, 0);
  td.eta_rule.assign(m, "1");
  std::vector<bool> is_binary(m, false);
  if (td.t >= 1) {
    JordanDecomposition j2 = jordan_exact(q, Integer(2));
    std::size_t pos = 0;
    for (const auto& b : j2.blocks) {
      for (int k = 0; k < b.dim(); ++k) {
        td.nu2[pos] = std::min(b.scale, td.t);
        is_binary[pos] = b.binary();
        ++pos;
      }
      if (b.binary()) td.binary_coords += 2;
    }
    for (std::size_t i = 0; i < m; ++i) {
      int nu = td.nu2[i];
      if (is_binary[i]) {
        td.t_exp[i] = nu;
      } else {
        td.t_exp[i] = (td.t <= nu + 1) ? nu : nu + 1;
        if (td.t == nu + 1) td.eta_rule[i] = "sqrt2_odd_zero_even";
      }
    }
  }
  Integer detD = 1;
  for (std::size_t i = 0; i < m; ++i) {
    td.D.push_back(td.d_tilde[i] << td.t_exp[i]);
    detD *= td.D.back();
  }
  td.d = gcd(c, N);
  bool halve = valuation(N, Integer(2)) == 2 && valuation(td.d, Integer(2)) == 1 &&
               td.binary_coords < static_cast<int>(m);
  td.d_hat = halve ? Integer(td.d / 2) : td.d;

  RatMatrix inv = inverse(td.Qt);
  IntMatrix s(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational e = Rational(N) / Rational(td.d_hat) * Rational(td.D[i] * td.D[j]) * inv(i, j);
      if (e.get_den() != 1) raise(ErrorKind::PivotFailure, "S is not integral at entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      s(i, j) = e.get_num();
    }
  try {
    td.S = QuadForm::from_gram(s);
  } catch (const Error& e) {
    raise(ErrorKind::PivotFailure, std::string("S invalid: ") + e.what());
  }
  if (td.S.level() > N) raise(ErrorKind::PivotFailure, "level(S) exceeds N");
  td.amplitude = std::sqrt(to_ld(detD) / to_ld(q.det()));
  return td;
}

}  // namespace qform
