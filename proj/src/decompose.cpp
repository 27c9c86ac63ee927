#include "polyagev/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "polyagev/errors.hpp"
#include "polyagev/linalg.hpp"

namespace polyagev {

namespace {
constexpr long double kPi = 3.141592653589793238462643383279502884L;

bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

std::vector<LComplex> dft_direct(const std::vector<Complex>& v) {
  int m = static_cast<int>(v.size());
  std::vector<LComplex> x(static_cast<size_t>(m));
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m; ++k) {
    LComplex acc(0.0L);
    for (int j = 0; j < m; ++j) {
      long double th = -2.0L * kPi * (static_cast<long long>(j) * k % m) / m;
      acc += LComplex(v[static_cast<size_t>(j)]) * LComplex(std::cos(th), std::sin(th));
    }
    x[static_cast<size_t>(k)] = acc;
  }
  return x;
}

void fft_radix2(std::vector<LComplex>& a) {
  int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[static_cast<size_t>(i)], a[static_cast<size_t>(j)]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    long double ang = -2.0L * kPi / len;
    LComplex wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      LComplex w(1.0L);
      for (int j = 0; j < len / 2; ++j) {
        LComplex u = a[static_cast<size_t>(i + j)];
        LComplex t = a[static_cast<size_t>(i + j + len / 2)] * w;
        a[static_cast<size_t>(i + j)] = u + t;
        a[static_cast<size_t>(i + j + len / 2)] = u - t;
        w *= wl;
      }
    }
  }
}
}  // namespace

CircleSamples sample_circle(const Evaluable& f, double radius, int m) {
  if (radius <= 0.0) throw error(errc::domain, "radius must be positive");
  if (m < 4) throw error(errc::domain, "need at least 4 samples");
  CircleSamples s;
  s.radius = radius;
  s.values.resize(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    long double th = 2.0L * kPi * j / m;
    Complex z(static_cast<double>(radius * std::cos(th)),
              static_cast<double>(radius * std::sin(th)));
    s.values[static_cast<size_t>(j)] = f(z);
  }
  return s;
}

std::vector<LComplex> dft(const std::vector<Complex>& values, bool allow_fast) {
  if (allow_fast && is_pow2(static_cast<int>(values.size()))) {
    std::vector<LComplex> a(values.begin(), values.end());
    fft_radix2(a);
    return a;
  }
  return dft_direct(values);
}

std::map<int, Complex> fourier_modes(const CircleSamples& s) {
  int m = s.count();
  if (m < 4) throw error(errc::domain, "too few samples");
  auto x = dft(s.values);
  std::map<int, Complex> out;
  for (int mode = -(m / 2 - 1); mode <= m / 2 - 1; ++mode) {
    LComplex v = x[static_cast<size_t>(((mode % m) + m) % m)] / static_cast<long double>(m);
    out[mode] = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  return out;
}

DecomposeResult components_from_circles(const std::vector<CircleSamples>& circles, int q_max) {
  int n = static_cast<int>(circles.size());
  if (n < 1) throw error(errc::domain, "need at least one circle");
  int m = circles[0].count();
  for (const auto& c : circles)
    if (c.count() != m) throw error(errc::domain, "circles must share the sample count");
  for (int j = 0; j + 1 < n; ++j)
    if (!(circles[static_cast<size_t>(j)].radius < circles[static_cast<size_t>(j + 1)].radius))
      throw error(errc::singular_system, "radii must be strictly increasing");
  if (m < 2 * q_max + 2 * n + 1)
    throw error(errc::domain, "sample count too small for the requested truncation");

  std::vector<std::vector<LComplex>> spectra(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) spectra[static_cast<size_t>(j)] = dft(circles[static_cast<size_t>(j)].values);

  DecomposeResult res{CoefficientTable(n, q_max)};
  int lo_mode = -(n - 1);
  int mode_count = q_max - lo_mode + 1;
  std::vector<double> residuals(static_cast<size_t>(mode_count), 0.0);
  std::vector<double> conds(static_cast<size_t>(mode_count), 0.0);

#pragma omp parallel for schedule(static)
  for (int mi = 0; mi < mode_count; ++mi) {
    int mode = lo_mode + mi;
    int p_lo = std::max(0, -mode);
    int p_hi = std::min(n - 1, q_max - mode);
    if (p_hi < p_lo) continue;
    int kdim = p_hi - p_lo + 1;
    // Use the kdim largest radii; powers of small radii amplify sample noise.
    std::vector<LComplex> a(static_cast<size_t>(kdim) * kdim);
    std::vector<LComplex> b(static_cast<size_t>(kdim));
    for (int i = 0; i < kdim; ++i) {
      int ci = n - kdim + i;
      long double r = circles[static_cast<size_t>(ci)].radius;
      long double rm = std::pow(r, static_cast<long double>(mode));
      long double r2 = r * r;
      long double rp = rm * std::pow(r2, static_cast<long double>(p_lo));
      for (int c = 0; c < kdim; ++c) {
        a[static_cast<size_t>(i) * kdim + c] = LComplex(rp);
        rp *= r2;
      }
      b[static_cast<size_t>(i)] =
          spectra[static_cast<size_t>(ci)][static_cast<size_t>(((mode % m) + m) % m)] /
          static_cast<long double>(m);
    }
    std::vector<LComplex> a0 = a, b0 = b;
    long double cond = lu_solve(a, b, kdim);
    long double resid = 0.0L;
    for (int i = 0; i < kdim; ++i) {
      LComplex s(0.0L);
      for (int c = 0; c < kdim; ++c) s += a0[static_cast<size_t>(i) * kdim + c] * b[static_cast<size_t>(c)];
      resid = std::max(resid, std::abs(s - b0[static_cast<size_t>(i)]));
    }
    residuals[static_cast<size_t>(mi)] = static_cast<double>(resid);
    conds[static_cast<size_t>(mi)] = static_cast<double>(cond);
    for (int c = 0; c < kdim; ++c) {
      int p = p_lo + c;
      LComplex v = b[static_cast<size_t>(c)];
      res.table.set(p, mode + p,
                    Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())));
    }
  }

  for (int mi = 0; mi < mode_count; ++mi) {
    res.max_residual = std::max(res.max_residual, residuals[static_cast<size_t>(mi)]);
    res.max_condition = std::max(res.max_condition, conds[static_cast<size_t>(mi)]);
  }
  res.ill_conditioned = res.max_condition > 1e10;
  return res;
}

DecomposeResult decompose_function(const Evaluable& f, int order, const std::vector<double>& radii,
                                   int m, int q_max) {
  if (static_cast<int>(radii.size()) != order)
    throw error(errc::domain, "need one radius per component");
  std::vector<CircleSamples> circles;
  circles.reserve(radii.size());
  for (double r : radii) circles.push_back(sample_circle(f, r, m));
  return components_from_circles(circles, q_max);
}

HoloPoly kp_extract(const NAnalyticPoly& f, int p) { return f.component(p); }

std::vector<double> default_radii(int order) {
  std::vector<double> r(static_cast<size_t>(order));
  const double r_max = 0.95;
  if (order == 1) {
    r[0] = r_max;
    return r;
  }
  for (int j = 0; j < order; ++j)
    r[static_cast<size_t>(j)] = r_max * (0.5 + 0.5 * j / (order - 1));
  return r;
}

}  // namespace polyagev
