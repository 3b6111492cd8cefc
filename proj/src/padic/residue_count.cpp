// Residue counting mod p^k by convolving per-block value distributions. The
// running histogram is constant on orbits of multiplication by unit squares,
// so it is stored per orbit class instead of per residue.
#include <cmath>
#include <cstdint>
#include <type_traits>

#include "qform/padic.hpp"

namespace qform {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kMaxModulus = u64(1) << 25;

struct Classes {
  std::vector<std::uint16_t> id;  // residue -> class
  std::vector<u64> rep;           // class -> representative residue
};

Classes build_classes(u64 p, int k, u64 M) {
  Classes c;
  c.id.assign(M, 0);
  // class ids: 0 for residue 0; then per valuation v a small block of ids.
  const int per_v = (p == 2) ? 4 : 2;
  c.rep.assign(1 + static_cast<std::size_t>(per_v) * k, ~u64(0));
  c.rep[0] = 0;
  for (u64 r = 1; r < M; ++r) {
    u64 w = r;
    int v = 0;
    while (w % p == 0) {
      w /= p;
      ++v;
    }
    int slot;
    if (p == 2) {
      int b = k - v;
      u64 modw = (b >= 3) ? 8 : (u64(1) << b);
      slot = static_cast<int>((w % modw) / 2);
    } else {
      // Euler criterion mod p decides the square class of w mod p^(k-v).
      u64 base = w % p, e = (p - 1) / 2, acc = 1;
      while (e) {
        if (e & 1) acc = static_cast<u64>(static_cast<u128>(acc) * base % p);
        base = static_cast<u64>(static_cast<u128>(base) * base % p);
        e >>= 1;
      }
      slot = (acc == 1) ? 0 : 1;
    }
    std::size_t cid = 1 + static_cast<std::size_t>(per_v) * v + slot;
    c.id[r] = static_cast<std::uint16_t>(cid);
    if (c.rep[cid] == ~u64(0)) c.rep[cid] = r;
  }
  return c;
}

u64 umod(const Integer& x, u64 M) { return mpz_fdiv_ui(x.get_mpz_t(), M); }

// Distribution of a single unit block value p^scale * a * x^2 over x mod M.
std::vector<u64> unit_distribution(const CountBlock& b, u64 p, u64 M) {
  std::vector<u64> d(M, 0);
  u64 coef = static_cast<u64>(static_cast<u128>(umod(b.a, M)) * umod(ipow(Integer(static_cast<unsigned long>(p)), b.scale), M) % M);
  for (u64 x = 0; x < M; ++x) {
    bool unit = (x % p) != 0;
    if (b.domain == Domain::Multiple && unit) continue;
    if (b.domain == Domain::Unit && !unit) continue;
    u64 v = static_cast<u64>(static_cast<u128>(x) * x % M * coef % M);
    ++d[v];
  }
  return d;
}

// Distribution of 2^scale * B(x, y), B = a x^2 + b x y + c y^2 with b odd, over
// pairs mod 2^k. Primitive pairs (not both even) have odd gradient, so their
// counts lift by Hensel: #{prim, B == r mod 2^e} = N1(r mod 2) * 2^(e-1).
std::vector<u64> binary_distribution(const CountBlock& b, int k, u64 M) {
  u64 a2 = umod(b.a, 2), b2 = umod(b.b, 2), c2 = umod(b.c, 2);
  u64 n1[2] = {0, 0};
  for (u64 x = 0; x < 2; ++x)
    for (u64 y = 0; y < 2; ++y) {
      if (x == 0 && y == 0) continue;
      ++n1[(a2 * x * x + b2 * x * y + c2 * y * y) % 2];
    }
  std::vector<u64> dist(M, 0);  // distribution of B itself mod 2^k
  for (int j = 0; 2 * j < k; ++j) {
    if (b.domain == Domain::Unit && j > 0) break;
    if (b.domain == Domain::Multiple && j == 0) continue;
    int e = k - 2 * j;
    u64 me = u64(1) << e;
    u64 lift = u64(1) << (e - 1);
    u64 mult = u64(1) << (2 * j);  // pairs mod 2^(k-j) per pair mod 2^(k-2j)
    for (u64 t = 0; t < me; ++t) dist[(t << (2 * j)) % M] += n1[t & 1] * lift * mult;
  }
  if (b.domain != Domain::Unit) {
    int J = (k + 1) / 2;
    dist[0] += u64(1) << (2 * (k - J));
  }
  if (b.scale == 0) return dist;
  std::vector<u64> scaled(M, 0);
  for (u64 t = 0; t < M; ++t)
    if (dist[t]) scaled[(t << b.scale) % M] += dist[t];
  return scaled;
}

template <class Count>
Count to_count(u64 v) {
  if constexpr (std::is_same_v<Count, Integer>)
    return Integer(static_cast<unsigned long>(v));
  else
    return static_cast<Count>(v);
}

template <class Count>
Integer convolve(const Classes& cls, u64 M, const std::vector<std::vector<u64>>& dists, u64 n) {
  const std::size_t K = cls.rep.size();
  std::vector<Count> h(K, to_count<Count>(0));
  h[0] = to_count<Count>(1);
  std::vector<u64> support;
  for (const auto& d : dists) {
    support.clear();
    for (u64 s = 0; s < M; ++s)
      if (d[s]) support.push_back(s);
    std::vector<Count> next(K, to_count<Count>(0));
    for (std::size_t c = 0; c < K; ++c) {
      if (cls.rep[c] == ~u64(0)) continue;
      const u64 r = cls.rep[c];
      Count acc = to_count<Count>(0);
      for (u64 s : support) {
        u64 diff = (r >= s) ? r - s : r + M - s;
        const Count& hv = h[cls.id[diff]];
        if (hv == 0) continue;
        acc += to_count<Count>(d[s]) * hv;
      }
      next[c] = acc;
    }
    h.swap(next);
  }
  const Count& res = h[cls.id[n % M]];
  if constexpr (std::is_same_v<Count, Integer>) {
    return res;
  } else {
    Integer out = 0;
    u128 v = res;
    Integer base = 1;
    while (v) {
      out += base * static_cast<unsigned long>(static_cast<u64>(v & 0xffffffffu));
      base <<= 32;
      v >>= 32;
    }
    return out;
  }
}

}  // namespace

Integer count_residues(const Integer& p_in, int k, const std::vector<CountBlock>& blocks, const Integer& n) {
  if (k < 1) raise(ErrorKind::InvalidArgument, "count_residues needs k >= 1");
  Integer Mz = ipow(p_in, k);
  if (Mz > kMaxModulus) raise(ErrorKind::OverflowBudget, "residue modulus " + Mz.get_str() + " too large");
  const u64 p = p_in.get_ui(), M = Mz.get_ui();
  Classes cls = build_classes(p, k, M);
  std::vector<std::vector<u64>> dists;
  int coords = 0;
  for (const auto& b : blocks) {
    if (b.binary) {
      if (p != 2) raise(ErrorKind::InvalidArgument, "binary count blocks only at p = 2");
      dists.push_back(binary_distribution(b, k, M));
      coords += 2;
    } else {
      dists.push_back(unit_distribution(b, p, M));
      coords += 1;
    }
  }
  // Histogram entries are bounded by M^coords; the products before summation
  // by M^(coords+1).
  double bits = (coords + 1) * std::log2(static_cast<double>(M)) + 1;
  u64 target = umod(n, M);
  if (bits < 126) return convolve<u128>(cls, M, dists, target);
  return convolve<Integer>(cls, M, dists, target);
}

std::vector<CountBlock> count_blocks(const QuadForm& q, const Integer& p, int k) {
  std::vector<CountBlock> out;
  if (q.is_diagonal()) {
    for (const Integer& c : q.diagonal_coeffs()) {
      CountBlock b;
      b.a = c;
      out.push_back(b);
    }
    return out;
  }
  JordanDecomposition d = jordan_exact(q, p);
  for (const auto& jb : d.blocks) {
    CountBlock b;
    b.scale = jb.scale;
    if (jb.binary()) {
      b.binary = true;
      b.a = residue(jb.alpha, p, k);
      b.b = residue(jb.beta, p, k);
      b.c = residue(jb.gamma, p, k);
    } else {
      b.a = residue(jb.u, p, k);
    }
    out.push_back(b);
  }
  return out;
}

}  // namespace qform
