#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <thread>

#include "qform/eisenstein.hpp"
#include "qform/modular.hpp"

namespace qform {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Solves a d - b c = 1 for coprime (c, d).
SL2 complete_row(std::int64_t c, std::int64_t d) {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), Integer(d).get_mpz_t(), Integer(c).get_mpz_t());
  if (g < 0) g = -g, s = -s, t = -t;
  if (g != 1) raise(ErrorKind::InvalidArgument, "bottom row is not coprime");
  // s d + t c = 1  ->  a = s, b = -t
  SL2 r;
  r.a = s;
  r.b = -t;
  r.c = c;
  r.d = d;
  return r;
}

struct GaussLegendre {
  std::vector<long double> x, w;  // on [-1, 1]
  explicit GaussLegendre(int n) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      long double z = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
      for (int it = 0; it < 100; ++it) {
        long double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
          long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        if (n == 1) p0 = 1, p1 = z;
        long double dp = n * (z * p1 - p0) / (z * z - 1);
        long double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-19L) {
          x[i] = z;
          w[i] = 2 / ((1 - z * z) * dp * dp);
          break;
        }
      }
    }
  }
};

// Moves z within its Gamma_0(N) orbit to the point of largest imaginary part.
Complex raise_in_orbit(Complex z, std::int64_t N) {
  long double best = 1;  // |c z + d|^2 for the identity
  std::int64_t bc = 0, bd = 1;
  const long double x = z.real(), y = z.imag();
  for (std::int64_t k = 1;; ++k) {
    long double c = static_cast<long double>(N * k);
    long double cy2 = c * c * y * y;
    if (cy2 >= best) break;
    long double r = std::sqrt(best - cy2);
    auto lo = static_cast<std::int64_t>(std::ceil(-c * x - r));
    auto hi = static_cast<std::int64_t>(std::floor(-c * x + r));
    for (std::int64_t d = lo; d <= hi; ++d) {
      if (gcd64(N * k, d) != 1) continue;
      long double re = c * x + d;
      long double v = re * re + cy2;
      if (v < best) best = v, bc = N * k, bd = d;
    }
  }
  if (bc == 0) return Complex(x - std::round(x), y);
  SL2 g = complete_row(bc, bd);
  Complex w = (to_ld(g.a) * z + to_ld(g.b)) / (to_ld(g.c) * z + to_ld(g.d));
  return Complex(w.real() - std::round(w.real()), w.imag());
}

struct SamplePoint {
  Complex z;            // orbit-raised image point
  long double weight;   // quadrature weight
};

std::vector<SamplePoint> sample_points(const std::vector<SL2>& cosets, std::int64_t N, int nx, int ny,
                                       long double ymax) {
  GaussLegendre gx(nx), gu(ny);
  std::vector<SamplePoint> pts;
  pts.reserve(cosets.size() * nx * ny);
  for (const SL2& g : cosets) {
    const long double a = to_ld(g.a), b = to_ld(g.b), c = to_ld(g.c), d = to_ld(g.d);
    for (int i = 0; i < nx; ++i) {
      long double x = 0.5L * gx.x[i];
      long double wx = 0.5L * gx.w[i];
      long double u0 = 1 / ymax, u1 = 1 / std::sqrt(1 - x * x);
      for (int j = 0; j < ny; ++j) {
        long double u = 0.5L * (u1 + u0) + 0.5L * (u1 - u0) * gu.x[j];
        long double wu = 0.5L * (u1 - u0) * gu.w[j];
        Complex w(x, 1 / u);
        Complex cw = c * w + d;
        Complex gw = (a * w + b) / cw;
        // dx dy / y^2 = dx du; |f|^2 Im^(m/2) is constant on Gamma_0(N) orbits.
        pts.push_back({raise_in_orbit(gw, N), wx * wu});
      }
    }
  }
  return pts;
}

struct Integrand {
  QSeries series;  // coefficients of f
  std::vector<long double> adiag;
  long double tail_scale = 2;
  long double tail_tol = 1e-10;
};

long double integrate(const std::vector<SamplePoint>& pts, const Integrand& f, long double half_m, int threads,
                      std::uint64_t& evaluations) {
  threads = std::max(1, threads);
  std::vector<long double> partial(threads, 0);
  std::vector<std::thread> pool;
  std::atomic<std::uint64_t> evals{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      long double acc = 0;
      std::uint64_t ev = 0;
      for (std::size_t k = t; k < pts.size(); k += threads) {
        const SamplePoint& sp = pts[k];
        std::int64_t X = truncation_for(f.adiag, f.tail_scale, sp.z.imag(), f.tail_tol, f.series.size());
        Complex v = f.series.eval(sp.z, X);
        acc += sp.weight * std::norm(v) * std::pow(sp.z.imag(), half_m);
        ++ev;
      }
      partial[t] = acc;
      evals += ev;
    });
  }
  for (auto& th : pool) th.join();
  evaluations += evals.load();
  long double sum = 0;
  for (long double p : partial) sum += p;
  return sum;
}

}  // namespace

Integer gamma0_index(const Integer& N) {
  if (N < 1) raise(ErrorKind::InvalidArgument, "level must be positive");
  Integer mu = N;
  for (const Integer& p : prime_divisors(N)) mu = mu / p * (p + 1);
  return mu;
}

namespace {

// Smallest lift (c', d') of the class of (c : d) in P^1(Z/N), preferring small c'.
SL2 class_representative(std::int64_t c, std::int64_t d, std::int64_t N, const std::vector<std::int64_t>& units,
                         std::vector<char>* seen) {
  std::int64_t bc = -1, bd = 0;
  for (std::int64_t u : units) {
    std::int64_t cc = (c * u) % N, dd = (d * u) % N;
    if (seen) (*seen)[cc * N + dd] = 1;
    for (std::int64_t k = -2; k <= 2; ++k) {
      std::int64_t dl = dd + k * N;
      if (std::gcd(cc, dl) != 1) continue;
      bool better = bc < 0 || cc < bc || (cc == bc && std::llabs(dl) < std::llabs(bd));
      if (better) bc = cc, bd = dl;
    }
    if (bc < 0) {
      // Some d + kN is coprime to c.
      for (std::int64_t k = 3;; ++k) {
        if (std::gcd(cc, dd + k * N) == 1) {
          bc = cc, bd = dd + k * N;
          break;
        }
      }
    }
  }
  return complete_row(bc, bd);
}

std::vector<std::int64_t> units_mod(std::int64_t N) {
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u <= N; ++u)
    if (gcd64(u, N) == 1) units.push_back(u % N);
  return units;
}

}  // namespace

SL2 small_coset_representative(const SL2& rho, const Integer& Nz) {
  if (Nz < 1 || Nz > 100000) raise(ErrorKind::InvalidArgument, "level out of range for coset reduction");
  const std::int64_t N = Nz.get_si();
  if (N == 1) return SL2{};
  Integer c = mod(rho.c, Nz), d = mod(rho.d, Nz);
  return class_representative(c.get_si(), d.get_si(), N, units_mod(N), nullptr);
}

std::vector<SL2> coset_representatives(const Integer& Nz) {
  if (Nz < 1 || Nz > 100000) raise(ErrorKind::InvalidArgument, "level out of range for coset enumeration");
  const std::int64_t N = Nz.get_si();
  std::vector<SL2> out;
  if (N == 1) {
    out.push_back(SL2{});
    return out;
  }
  const std::vector<std::int64_t> units = units_mod(N);
  std::vector<char> seen(static_cast<std::size_t>(N * N), 0);
  for (std::int64_t c = 0; c < N; ++c)
    for (std::int64_t d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1 || seen[c * N + d]) continue;
      out.push_back(class_representative(c, d, N, units, &seen));
    }
  if (Integer(static_cast<long>(out.size())) != gamma0_index(Nz))
    raise(ErrorKind::InvalidArgument, "coset count does not match the index");
  return out;
}

void check_same_genus(const QuadForm& q, const QuadForm& q2) {
  if (q.dim() != q2.dim()) raise(ErrorKind::GenusMismatch, "dimensions differ");
  if (q.det() != q2.det()) raise(ErrorKind::GenusMismatch, "determinants differ");
  if (q.level() != q2.level()) raise(ErrorKind::GenusMismatch, "levels differ");
  for (const Integer& p : prime_divisors(Integer(2 * q.det()))) {
    JordanDecomposition a = jordan_exact(q, p), b = jordan_exact(q2, p);
    if (a.scales() != b.scales() || a.r2 != b.r2)
      raise(ErrorKind::GenusMismatch, "Jordan scales differ at p=" + p.get_str());
    for (int n = 1; n <= 20; ++n)
      if (density(q, p, n).value != density(q2, p, n).value)
        raise(ErrorKind::GenusMismatch, "local densities differ at p=" + p.get_str() + ", n=" + std::to_string(n));
  }
}

namespace {

NormEstimate run(const QuadForm& q, const char* mode, const NormOptions& opts,
                 const std::function<std::vector<long double>(std::int64_t)>& coeffs) {
  if (opts.nx < 2 || opts.ny < 2) raise(ErrorKind::InvalidArgument, "grid needs at least 2x2 nodes");
  if (!(opts.ymax > 1)) raise(ErrorKind::InvalidArgument, "ymax must exceed 1");
  const std::int64_t N = q.level().get_si();
  const long double half_m = q.dim() / 2.0L;
  std::vector<SL2> cosets = coset_representatives(q.level());
  NormEstimate out;
  out.mode = mode;
  out.cosets = static_cast<int>(cosets.size());
  std::vector<SamplePoint> coarse = sample_points(cosets, N, opts.nx, opts.ny, opts.ymax);
  std::vector<SamplePoint> fine;
  if (opts.refine) fine = sample_points(cosets, N, 2 * opts.nx, 2 * opts.ny, opts.ymax);
  long double min_im = std::numeric_limits<long double>::infinity();
  for (const auto* set : {&coarse, &fine})
    for (const SamplePoint& sp : *set) min_im = std::min(min_im, sp.z.imag());
  out.min_im = min_im;
  if (min_im < opts.im_floor)
    raise(ErrorKind::DepthBudget, "minimum Im " + std::to_string(static_cast<double>(min_im)) + " below floor " +
                                      std::to_string(static_cast<double>(opts.im_floor)));
  Integrand f;
  f.adiag = reduced_diagonal(q);
  f.tail_tol = opts.tail_tol;
  const std::int64_t xmax = 4000000;
  std::int64_t X = truncation_for(f.adiag, f.tail_scale, min_im, opts.tail_tol, xmax);
  if (X > xmax) raise(ErrorKind::DepthBudget, "q-expansion truncation above 4e6 terms");
  X = std::max<std::int64_t>(X, 1);
  out.X = X;
  f.series = QSeries(0, coeffs(X));
  long double v1 = integrate(coarse, f, half_m, opts.threads, out.evaluations);
  out.nx = opts.nx;
  out.ny = opts.ny;
  out.value = v1;
  if (opts.refine) {
    long double v2 = integrate(fine, f, half_m, opts.threads, out.evaluations);
    out.nx *= 2;
    out.ny *= 2;
    out.value = v2;
    long double scale = std::max(std::fabs(v2), std::fabs(v1));
    out.refinement_delta = scale > 0 ? std::fabs(v2 - v1) / scale : 0;
  }
  return out;
}

}  // namespace

NormEstimate petersson_norm_g(const QuadForm& q, const QuadForm& q2, const NormOptions& opts) {
  check_same_genus(q, q2);
  return run(q, "g_pair", opts, [&](std::int64_t X) {
    ThetaCoefficients a = theta_coefficients(q, X), b = theta_coefficients(q2, X);
    std::vector<long double> out(static_cast<std::size_t>(X));
    for (std::int64_t n = 0; n < X; ++n) out[n] = to_ld(Integer(a.r[n] - b.r[n]));
    return out;
  });
}

NormEstimate petersson_norm_f(const QuadForm& q, const NormOptions& opts) {
  return run(q, "f_eisenstein", opts, [&](std::int64_t X) {
    ThetaCoefficients a = theta_coefficients(q, X);
    std::vector<long double> gen = genus_coefficients(q, X, opts.cutoff);
    std::vector<long double> out(static_cast<std::size_t>(X));
    for (std::int64_t n = 0; n < X; ++n) out[n] = to_ld(a.r[n]) - gen[n];
    return out;
  });
}

}  // namespace qform
