#include "qform/enumerate.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace qform {

namespace {

using i128 = __int128;

i128 isqrt128(i128 x) {
  i128 s = static_cast<i128>(std::sqrt(static_cast<long double>(x)));
  while (s > 0 && s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

constexpr std::int64_t kMaxEntry = std::int64_t(1) << 40;
constexpr std::int64_t kMaxBound = std::int64_t(1) << 50;

}  // namespace

Enumerator::Enumerator(const QuadForm& q, EnumOptions opts)
    : form_(q), opts_(opts), red_(siegel_reduce(q)), m_(q.dim()) {
  g_.resize(static_cast<std::size_t>(m_ * m_));
  a_.resize(m_);
  v_.resize(static_cast<std::size_t>(m_ * m_));
  for (int i = 0; i < m_; ++i) {
    a_[i] = red_.a[i].get_d();
    for (int j = 0; j < m_; ++j) {
      const Integer& e = red_.gram(i, j);
      if (abs(e) >= kMaxEntry) raise(ErrorKind::OverflowBudget, "reduced gram entry too large for enumeration");
      g_[i * m_ + j] = e.get_si();
      v_[i * m_ + j] = red_.V(i, j).get_d();
    }
  }
}

// One depth-first walk. The leaf callback receives the exact coefficients of
// q restricted to the line y_0 = t: A t^2 + B t + C, and a (widened) real range
// for t that contains every t with q <= bound.
struct Enumerator::Walk {
  const Enumerator& e;
  std::int64_t bound;
  std::atomic<std::uint64_t>& nodes;
  std::vector<std::int64_t> y;
  std::vector<double> partial;
  std::vector<i128> qpart;

  Walk(const Enumerator& en, std::int64_t b, std::atomic<std::uint64_t>& counter)
      : e(en), bound(b), nodes(counter), y(en.m_, 0), partial(en.m_ + 1, 0.0), qpart(en.m_ + 1, 0) {}

  void charge(std::uint64_t k) {
    if (nodes.fetch_add(k, std::memory_order_relaxed) + k > e.opts_.node_budget)
      raise(ErrorKind::BudgetExceeded, "enumeration node budget exhausted");
  }

  void range(int i, std::int64_t& lo, std::int64_t& hi, double& s) const {
    const int m = e.m_;
    s = 0;
    for (int j = i + 1; j < m; ++j) s += e.v_[i * m + j] * static_cast<double>(y[j]);
    double rem = 2.0 * static_cast<double>(bound) - partial[i + 1];
    double r = std::sqrt(std::max(rem, 0.0) / e.a_[i]);
    double eps = 1e-7 * (1.0 + std::fabs(s) + r);
    lo = static_cast<std::int64_t>(std::ceil(-s - r - eps));
    hi = static_cast<std::int64_t>(std::floor(-s + r + eps));
  }

  template <class Leaf>
  bool descend(int i, Leaf& leaf, std::int64_t phase, std::int64_t stride) {
    const int m = e.m_;
    std::int64_t lo, hi;
    double s;
    range(i, lo, hi, s);
    if (i == 0) {
      i128 B = 0;
      for (int j = 1; j < m; ++j) B += static_cast<i128>(e.g_[j]) * y[j];
      charge(1);
      return leaf(*this, static_cast<i128>(e.g_[0] / 2), B, qpart[1], lo, hi);
    }
    std::int64_t start = lo;
    if (stride > 1) {
      std::int64_t off = ((phase - lo) % stride + stride) % stride;
      start = lo + off;
    }
    for (std::int64_t yi = start; yi <= hi; yi += stride) {
      charge(1);
      y[i] = yi;
      double t = static_cast<double>(yi) + s;
      partial[i] = partial[i + 1] + e.a_[i] * t * t;
      if (partial[i] > 2.0 * static_cast<double>(bound) * (1 + 1e-9) + 1e-9) continue;
      i128 L = 0;
      for (int j = i + 1; j < m; ++j) L += static_cast<i128>(e.g_[i * m + j]) * y[j];
      qpart[i] = qpart[i + 1] + static_cast<i128>(e.g_[i * m + i] / 2) * yi * yi + L * yi;
      if (!descend(i - 1, leaf, 0, 1)) return false;
    }
    y[i] = 0;
    return true;
  }
};

namespace {

// Runs `make_leaf(thread_index)`-built leaves over interleaved slices of the
// outermost coordinate.
template <class LeafFactory>
void run_parallel(int m, int threads, LeafFactory&& body) {
  if (threads <= 1 || m < 2) {
    body(0, 1);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        body(t, threads);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void Enumerator::for_each(std::int64_t bound,
                          const std::function<bool(const std::vector<std::int64_t>&, std::int64_t)>& visit) {
  if (bound > kMaxBound) raise(ErrorKind::OverflowBudget, "enumeration bound too large");
  std::atomic<std::uint64_t> counter{0};
  Walk w(*this, bound, counter);
  auto leaf = [&](Walk& wk, i128 A, i128 B, i128 C, std::int64_t lo, std::int64_t hi) {
    if (hi >= lo) wk.charge(static_cast<std::uint64_t>(hi - lo + 1));
    for (std::int64_t t = lo; t <= hi; ++t) {
      i128 v = (A * t + B) * t + C;
      if (v <= 0 || v > bound) continue;
      wk.y[0] = t;
      if (!visit(wk.y, static_cast<std::int64_t>(v))) return false;
    }
    return true;
  };
  w.descend(m_ - 1, leaf, 0, 1);
  nodes_ += counter.load();
}

Integer Enumerator::count(std::int64_t n) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "count requires n >= 1");
  if (n > kMaxBound) raise(ErrorKind::OverflowBudget, "enumeration bound too large");
  std::atomic<std::uint64_t> counter{0};
  const int threads = std::max(1, opts_.threads);
  std::vector<std::uint64_t> totals(threads, 0);
  run_parallel(m_, threads, [&](int t, int stride) {
    Walk w(*this, n, counter);
    std::uint64_t found = 0;
    auto leaf = [&](Walk&, i128 A, i128 B, i128 C, std::int64_t, std::int64_t) {
      i128 c = C - n;
      i128 disc = B * B - 4 * A * c;
      if (disc < 0) return true;
      i128 r = isqrt128(disc);
      if (r * r != disc) return true;
      for (i128 num : {-B - r, -B + r}) {
        if (num % (2 * A) == 0) ++found;
        if (r == 0) break;
      }
      return true;
    };
    w.descend(m_ - 1, leaf, t, stride);
    totals[t] = found;
  });
  nodes_ += counter.load();
  Integer sum = 0;
  for (auto v : totals) sum += static_cast<unsigned long>(v);
  return sum;
}

std::vector<Integer> Enumerator::bin_upto(std::int64_t X) {
  if (X < 1) raise(ErrorKind::InvalidArgument, "bin_upto requires X >= 1");
  if (X > kMaxBound) raise(ErrorKind::OverflowBudget, "enumeration bound too large");
  std::atomic<std::uint64_t> counter{0};
  const int threads = std::max(1, opts_.threads);
  std::vector<std::vector<std::uint64_t>> bins(threads);
  run_parallel(m_, threads, [&](int t, int stride) {
    Walk w(*this, X, counter);
    std::vector<std::uint64_t>& b = bins[t];
    b.assign(static_cast<std::size_t>(X + 1), 0);
    auto leaf = [&](Walk& wk, i128 A, i128 B, i128 C, std::int64_t lo, std::int64_t hi) {
      if (hi < lo) return true;
      wk.charge(static_cast<std::uint64_t>(hi - lo + 1));
      i128 v = (A * lo + B) * lo + C;
      for (std::int64_t s = lo; s <= hi; ++s) {
        if (v > 0 && v <= X) ++b[static_cast<std::size_t>(v)];
        v += A * (2 * static_cast<i128>(s) + 1) + B;
      }
      return true;
    };
    w.descend(m_ - 1, leaf, t, stride);
  });
  nodes_ += counter.load();
  std::vector<Integer> r(static_cast<std::size_t>(X), 0);
  for (std::int64_t k = 1; k <= X; ++k) {
    std::uint64_t s = 0;
    for (const auto& b : bins) s += b[static_cast<std::size_t>(k)];
    r[static_cast<std::size_t>(k - 1)] = static_cast<unsigned long>(s);
  }
  return r;
}

std::vector<std::vector<std::int64_t>> Enumerator::solutions(std::int64_t n, std::size_t limit) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "solutions requires n >= 1");
  if (n > kMaxBound) raise(ErrorKind::OverflowBudget, "enumeration bound too large");
  std::vector<std::vector<std::int64_t>> out;
  if (limit == 0) return out;
  std::atomic<std::uint64_t> counter{0};
  Walk w(*this, n, counter);
  auto leaf = [&](Walk& wk, i128 A, i128 B, i128 C, std::int64_t, std::int64_t) {
    i128 c = C - n;
    i128 disc = B * B - 4 * A * c;
    if (disc < 0) return true;
    i128 r = isqrt128(disc);
    if (r * r != disc) return true;
    for (i128 num : {-B - r, -B + r}) {
      if (num % (2 * A) == 0) {
        wk.y[0] = static_cast<std::int64_t>(num / (2 * A));
        out.push_back(wk.y);
        if (out.size() >= limit) return false;
      }
      if (r == 0) break;
    }
    return true;
  };
  w.descend(m_ - 1, leaf, 0, 1);
  nodes_ += counter.load();
  return out;
}

std::vector<Integer> Enumerator::to_original(const std::vector<std::int64_t>& y) const {
  std::vector<Integer> x(m_, 0);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) x[i] += red_.U(i, j) * static_cast<long>(y[j]);
  return x;
}

Integer count_representations(const QuadForm& q, const Integer& n, const EnumOptions& opts) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "count_representations requires n >= 1");
  if (!n.fits_slong_p()) raise(ErrorKind::OverflowBudget, "n too large");
  Enumerator e(q, opts);
  return e.count(n.get_si());
}

ThetaCoefficients theta_coefficients(const QuadForm& q, std::int64_t X, const EnumOptions& opts) {
  Enumerator e(q, opts);
  ThetaCoefficients t;
  t.X = X;
  t.r = e.bin_upto(X);
  t.nodes = e.nodes();
  return t;
}

std::vector<std::vector<Integer>> representations_list(const QuadForm& q, const Integer& n,
                                                       std::size_t limit, const EnumOptions& opts) {
  if (!n.fits_slong_p()) raise(ErrorKind::OverflowBudget, "n too large");
  Enumerator e(q, opts);
  std::vector<std::vector<Integer>> out;
  for (const auto& y : e.solutions(n.get_si(), limit)) out.push_back(e.to_original(y));
  return out;
}

}  // namespace qform
