#include <algorithm>

#include "qform/padic.hpp"

namespace qform {

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::Unit: return "unit";
    case BlockKind::H: return "H";
    case BlockKind::Y: return "Y";
  }
  return "?";
}

std::vector<int> JordanDecomposition::scales() const {
  std::vector<int> s;
  for (const auto& b : blocks)
    for (int i = 0; i < b.dim(); ++i) s.push_back(b.scale);
  return s;
}

int JordanDecomposition::dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.dim();
  return d;
}

Integer residue(const Rational& x, const Integer& p, int k) {
  Integer mod_k = ipow(p, k);
  return mod(Integer(x.get_num()) * inverse_mod(Integer(x.get_den()), mod_k), mod_k);
}

namespace {

using Vec = std::vector<Rational>;

struct Piece {
  bool binary;
  int qval;  // valuation of the Gram entry that was pivoted
  Vec v1, v2;
};

Rational bilinear(const IntMatrix& g, const Vec& x, const Vec& y) {
  const std::size_t m = g.rows();
  Rational s = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (y[j] != 0) row += g(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

void axpy(Vec& y, const Rational& a, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// Greedy p-integral splitting. At p = 2 the odd part of every constituent is
// kept diagonal: a binary block never shares its scale with a unit block.
std::vector<Piece> split(const QuadForm& q, const Integer& p) {
  const std::size_t m = q.dim();
  const IntMatrix& g = q.gram();
  const bool two = (p == 2);
  std::vector<Vec> work;
  for (std::size_t i = 0; i < m; ++i) {
    Vec e(m, Rational(0));
    e[i] = 1;
    work.push_back(e);
  }
  std::vector<Piece> out;

  auto eliminate_unit = [&](std::size_t i) {
    Vec b = work[i];
    Rational gii = bilinear(g, b, b);
    work.erase(work.begin() + static_cast<long>(i));
    for (auto& w : work) {
      Rational c = bilinear(g, w, b) / gii;
      if (c != 0) axpy(w, -c, b);
    }
    out.push_back({false, valuation(gii, p), b, {}});
  };
  auto eliminate_binary = [&](std::size_t i, std::size_t j) {
    Vec b1 = work[i], b2 = work[j];
    Rational g11 = bilinear(g, b1, b1), g12 = bilinear(g, b1, b2), g22 = bilinear(g, b2, b2);
    Rational det = g11 * g22 - g12 * g12;
    int s = valuation(g12, p);
    work.erase(work.begin() + static_cast<long>(std::max(i, j)));
    work.erase(work.begin() + static_cast<long>(std::min(i, j)));
    for (auto& w : work) {
      Rational h1 = bilinear(g, w, b1), h2 = bilinear(g, w, b2);
      Rational c1 = (g22 * h1 - g12 * h2) / det;
      Rational c2 = (g11 * h2 - g12 * h1) / det;
      if (c1 != 0) axpy(w, -c1, b1);
      if (c2 != 0) axpy(w, -c2, b2);
    }
    out.push_back({true, s, b1, b2});
  };

  const std::size_t cap = 20 * m * m + 20;
  for (std::size_t iter = 0; !work.empty(); ++iter) {
    if (iter > cap) raise(ErrorKind::PivotFailure, "Jordan splitting did not terminate");
    const std::size_t k = work.size();
    std::vector<Rational> gram(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) gram[i * k + j] = gram[j * k + i] = bilinear(g, work[i], work[j]);
    int s = 1 << 30;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j)
        if (gram[i * k + j] != 0) s = std::min(s, valuation(gram[i * k + j], p));
    if (s == (1 << 30)) raise(ErrorKind::PivotFailure, "degenerate remainder in Jordan splitting");

    std::size_t di = k;
    for (std::size_t i = 0; i < k && di == k; ++i)
      if (gram[i * k + i] != 0 && valuation(gram[i * k + i], p) == s) di = i;
    if (di < k) {
      if (two) {
        // Fold an earlier binary of the same scale into this odd constituent.
        auto it = std::find_if(out.begin(), out.end(), [&](const Piece& pc) { return pc.binary && pc.qval == s; });
        if (it != out.end()) {
          Vec c1 = it->v1, c2 = it->v2;
          out.erase(it);
          axpy(c1, 1, work[di]);
          work.push_back(c2);
          work.push_back(c1);
          eliminate_unit(work.size() - 1);
          continue;
        }
      }
      eliminate_unit(di);
      continue;
    }
    std::size_t bi = k, bj = k;
    for (std::size_t i = 0; i < k && bi == k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (gram[i * k + j] != 0 && valuation(gram[i * k + j], p) == s) {
          bi = i;
          bj = j;
          break;
        }
    if (bi == k) raise(ErrorKind::PivotFailure, "no pivot at minimal valuation");
    if (!two) {
      axpy(work[bi], 1, work[bj]);
      continue;
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const Piece& pc) { return !pc.binary && pc.qval == s; });
    if (it != out.end()) {
      Vec w = it->v1;
      out.erase(it);
      axpy(work[bi], 1, w);
      Vec mixed = work[bi];
      work.erase(work.begin() + static_cast<long>(bi));
      work.push_back(w);
      work.push_back(mixed);
      eliminate_unit(work.size() - 1);
      continue;
    }
    eliminate_binary(bi, bj);
  }
  return out;
}

}  // namespace

JordanDecomposition jordan_exact(const QuadForm& q, const Integer& p) {
  if (!is_prime(p)) raise(ErrorKind::InvalidArgument, "p must be prime");
  const std::size_t m = q.dim();
  std::vector<Piece> pieces = split(q, p);
  const IntMatrix& g = q.gram();
  struct Tagged {
    JordanBlock block;
    Vec v1, v2;
  };
  std::vector<Tagged> tagged;
  for (const auto& pc : pieces) {
    Tagged t;
    t.v1 = pc.v1;
    t.v2 = pc.v2;
    if (!pc.binary) {
      Rational gii = bilinear(g, pc.v1, pc.v1);
      t.block.kind = BlockKind::Unit;
      Rational qcoef = gii / 2;
      t.block.scale = valuation(qcoef, p);
      t.block.u = qcoef / Rational(ipow(p, t.block.scale));
    } else {
      Rational g11 = bilinear(g, pc.v1, pc.v1), g12 = bilinear(g, pc.v1, pc.v2), g22 = bilinear(g, pc.v2, pc.v2);
      int s = pc.qval;
      Rational scale = ipow(p, s);
      t.block.scale = s;
      t.block.alpha = g11 / (2 * scale);
      t.block.beta = g12 / scale;
      t.block.gamma = g22 / (2 * scale);
      bool a_odd = valuation(t.block.alpha == 0 ? Rational(2) : t.block.alpha, p) == 0;
      bool c_odd = valuation(t.block.gamma == 0 ? Rational(2) : t.block.gamma, p) == 0;
      t.block.kind = (a_odd && c_odd) ? BlockKind::Y : BlockKind::H;
    }
    tagged.push_back(std::move(t));
  }
  // Binary blocks first, then units; each group by scale (stable).
  std::stable_sort(tagged.begin(), tagged.end(), [](const Tagged& x, const Tagged& y) {
    if (x.block.binary() != y.block.binary()) return x.block.binary();
    if (x.block.scale != y.block.scale) return x.block.scale < y.block.scale;
    return static_cast<int>(x.block.kind) < static_cast<int>(y.block.kind);
  });
  JordanDecomposition d;
  d.p = p;
  d.T = RatMatrix(m, m);
  std::size_t col = 0;
  for (const auto& t : tagged) {
    for (std::size_t i = 0; i < m; ++i) d.T(i, col) = t.v1[i];
    ++col;
    if (t.block.binary()) {
      for (std::size_t i = 0; i < m; ++i) d.T(i, col) = t.v2[i];
      ++col;
      ++d.r2;
      if (t.block.kind == BlockKind::Y) ++d.r1;
    }
    d.blocks.push_back(t.block);
  }
  return d;
}

JordanDecomposition jordan_decompose(const QuadForm& q, const Integer& p, int precision) {
  if (!is_prime(p)) raise(ErrorKind::InvalidArgument, "p must be prime");
  int need = valuation(Integer(2 * q.det()), p) + 3;
  if (precision < need)
    raise(ErrorKind::PrecisionTooLow, "precision " + std::to_string(precision) + " < " + std::to_string(need));
  JordanDecomposition d = jordan_exact(q, p);
  d.precision = precision;
  for (auto& b : d.blocks)
    if (!b.binary()) b.unit_residue = residue(b.u, p, precision);
  const std::size_t m = q.dim();
  d.witness = IntMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) d.witness(i, j) = residue(d.T(i, j), p, precision);
  return d;
}

Integer level_from_local(const QuadForm& q, const std::vector<JordanDecomposition>& decomps) {
  Integer level = 1;
  for (const Integer& p : prime_divisors(Integer(2 * q.det()))) {
    auto it = std::find_if(decomps.begin(), decomps.end(), [&](const JordanDecomposition& d) { return d.p == p; });
    if (it == decomps.end()) raise(ErrorKind::MissingPrime, "no decomposition at p=" + p.get_str());
    int nu = 0;
    for (const auto& b : it->blocks) {
      int e = b.scale;
      if (p == 2 && !b.binary()) e += 2;
      nu = std::max(nu, e);
    }
    level *= ipow(p, nu);
  }
  return level;
}

}  // namespace qform
