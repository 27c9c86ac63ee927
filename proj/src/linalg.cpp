#include "polyagev/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "polyagev/errors.hpp"

namespace polyagev {

long double lu_solve(std::vector<LComplex>& a, std::vector<LComplex>& b, int n) {
  auto at = [&](int i, int j) -> LComplex& { return a[static_cast<size_t>(i) * n + j]; };
  long double pmax = 0.0L, pmin = 0.0L;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    long double best = std::abs(at(c, c));
    for (int r = c + 1; r < n; ++r) {
      long double m = std::abs(at(r, c));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (best == 0.0L) throw error(errc::singular_system, "zero pivot in elimination");
    if (piv != c) {
      for (int j = c; j < n; ++j) std::swap(at(c, j), at(piv, j));
      std::swap(b[static_cast<size_t>(c)], b[static_cast<size_t>(piv)]);
    }
    pmax = std::max(pmax, best);
    pmin = (c == 0) ? best : std::min(pmin, best);
    for (int r = c + 1; r < n; ++r) {
      LComplex f = at(r, c) / at(c, c);
      if (f == LComplex(0.0L)) continue;
      for (int j = c; j < n; ++j) at(r, j) -= f * at(c, j);
      b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(c)];
    }
  }
  for (int c = n - 1; c >= 0; --c) {
    LComplex s = b[static_cast<size_t>(c)];
    for (int j = c + 1; j < n; ++j) s -= at(c, j) * b[static_cast<size_t>(j)];
    b[static_cast<size_t>(c)] = s / at(c, c);
  }
  return pmin > 0.0L ? pmax / pmin : std::numeric_limits<long double>::infinity();
}

std::vector<Complex> weighted_lsq(const std::vector<Complex>& a, int rows, int cols,
                                  const std::vector<Complex>& b,
                                  const std::vector<double>& w) {
  // Normal equations G x = h with G = A^H W A (Hermitian), assembled in
  // extended precision.
  std::vector<LComplex> g(static_cast<size_t>(cols) * cols, LComplex(0.0L));
  std::vector<LComplex> h(static_cast<size_t>(cols), LComplex(0.0L));
  for (int i = 0; i < rows; ++i) {
    long double wi = w[static_cast<size_t>(i)];
    if (wi == 0.0L) continue;
    const Complex* row = &a[static_cast<size_t>(i) * cols];
    for (int j = 0; j < cols; ++j) {
      LComplex aj = std::conj(LComplex(row[j])) * wi;
      for (int l = j; l < cols; ++l) g[static_cast<size_t>(j) * cols + l] += aj * LComplex(row[l]);
      h[static_cast<size_t>(j)] += aj * LComplex(b[static_cast<size_t>(i)]);
    }
  }
  for (int j = 0; j < cols; ++j)
    for (int l = 0; l < j; ++l)
      g[static_cast<size_t>(j) * cols + l] = std::conj(g[static_cast<size_t>(l) * cols + j]);
  lu_solve(g, h, cols);
  std::vector<Complex> x(static_cast<size_t>(cols));
  for (int j = 0; j < cols; ++j)
    x[static_cast<size_t>(j)] = Complex(static_cast<double>(h[static_cast<size_t>(j)].real()),
                                        static_cast<double>(h[static_cast<size_t>(j)].imag()));
  return x;
}

namespace {
template <class T>
T pairwise_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T s{};
    for (const T& t : v) s += t;
    return s;
  }
  size_t half = v.size() / 2;
  return pairwise_impl(v.first(half)) + pairwise_impl(v.subspan(half));
}
}  // namespace

Complex pairwise_sum(std::span<const Complex> terms) { return pairwise_impl(terms); }
double pairwise_sum(std::span<const double> terms) { return pairwise_impl(terms); }

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw error(errc::insufficient_data, "fit_line needs >= 2 points");
  long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  long double det = n * sxx - sx * sx;
  if (det == 0.0L) throw error(errc::insufficient_data, "degenerate abscissae");
  LineFit f;
  f.slope = static_cast<double>((n * sxy - sx * sy) / det);
  f.intercept = static_cast<double>((sy * sxx - sx * sxy) / det);
  double mr = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < x.size(); ++i) mr = std::max(mr, y[i] - (f.intercept + f.slope * x[i]));
  f.max_residual = mr;
  return f;
}

double quad_coefficient(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw error(errc::insufficient_data, "quad_coefficient needs >= 3 points");
  // normal equations for y ~ a + b x + c x^2, assembled in long double
  long double s[5] = {static_cast<long double>(x.size()), 0, 0, 0, 0};
  long double t[3] = {0, 0, 0};
  for (size_t i = 0; i < x.size(); ++i) {
    long double xi = x[i], p = xi;
    for (int d = 1; d <= 4; ++d) {
      s[d] += p;
      p *= xi;
    }
    t[0] += y[i];
    t[1] += y[i] * xi;
    t[2] += y[i] * xi * xi;
  }
  std::vector<LComplex> a{s[0], s[1], s[2], s[1], s[2], s[3], s[2], s[3], s[4]};
  std::vector<LComplex> b{t[0], t[1], t[2]};
  lu_solve(a, b, 3);
  return static_cast<double>(b[2].real());
}

}  // namespace polyagev
