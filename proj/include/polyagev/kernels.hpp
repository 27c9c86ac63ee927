#ifndef POLYAGEV_KERNELS_HPP
#define POLYAGEV_KERNELS_HPP

#include <complex>
#include <vector>

#include "polyagev/poly.hpp"

// Data-parallel sampling kernels. The OpenMP versions are the default path;
// polyagev::ref holds serial reference implementations that the tests compare
// against (results must match bit for bit: per-point work is pure and the
// max reduction is order-independent).

namespace polyagev {

// max of |P| at `angles` equispaced points of the circle |z - center| = radius.
double sup_on_circle(const NAnalyticPoly& p, Complex center, double radius, int angles);

// max of |P| over the closed disk: boundary circle plus `interior` interior
// radii (j+1)/(interior+1) * radius, each sampled at `angles` points.
double sup_on_disk(const NAnalyticPoly& p, Complex center, double radius, int interior,
                   int angles);

// max of |P| over the annulus r0 < |z - center| <= r, sampled on `levels`
// radii ending at r.
double sup_on_annulus(const NAnalyticPoly& p, Complex center, double r0, double r, int levels,
                      int angles);

// Applies f(ix, iy, z) over the m x m midpoint grid of the square
// [-half_width, half_width]^2, row-major (ix slow).
template <class F>
std::vector<Complex> map_cells(int m, double half_width, F&& f) {
  std::vector<Complex> out(static_cast<size_t>(m) * m);
  double h = 2.0 * half_width / m;
#pragma omp parallel for schedule(static)
  for (int ix = 0; ix < m; ++ix) {
    for (int iy = 0; iy < m; ++iy) {
      Complex z(-half_width + (ix + 0.5) * h, -half_width + (iy + 0.5) * h);
      out[static_cast<size_t>(ix) * m + iy] = f(ix, iy, z);
    }
  }
  return out;
}

namespace ref {

double sup_on_circle(const NAnalyticPoly& p, Complex center, double radius, int angles);
double sup_on_disk(const NAnalyticPoly& p, Complex center, double radius, int interior,
                   int angles);

template <class F>
std::vector<Complex> map_cells(int m, double half_width, F&& f) {
  std::vector<Complex> out(static_cast<size_t>(m) * m);
  double h = 2.0 * half_width / m;
  for (int ix = 0; ix < m; ++ix) {
    for (int iy = 0; iy < m; ++iy) {
      Complex z(-half_width + (ix + 0.5) * h, -half_width + (iy + 0.5) * h);
      out[static_cast<size_t>(ix) * m + iy] = f(ix, iy, z);
    }
  }
  return out;
}

}  // namespace ref

// Circle node shared by the samplers: center + radius * e^{2 pi i j / m}.
inline Complex circle_node(Complex center, double radius, int j, int m) {
  double th = 2.0 * 3.14159265358979323846 * j / m;
  return center + radius * Complex(std::cos(th), std::sin(th));
}

}  // namespace polyagev

#endif
