#include "polyagev/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace polyagev {

double sup_on_circle(const NAnalyticPoly& p, Complex center, double radius, int angles) {
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int j = 0; j < angles; ++j) {
    double v = std::abs(p.eval(circle_node(center, radius, j, angles)));
    best = std::max(best, v);
  }
  return best;
}

double sup_on_disk(const NAnalyticPoly& p, Complex center, double radius, int interior,
                   int angles) {
  double best = std::abs(p.eval(center));
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int i = 0; i <= interior; ++i) {
    double r = (i == interior) ? radius : radius * (i + 1) / (interior + 1);
    for (int j = 0; j < angles; ++j)
      best = std::max(best, std::abs(p.eval(circle_node(center, r, j, angles))));
  }
  return best;
}

double sup_on_annulus(const NAnalyticPoly& p, Complex center, double r0, double r, int levels,
                      int angles) {
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int i = 0; i < levels; ++i) {
    double rr = r0 + (r - r0) * (i + 1) / levels;
    for (int j = 0; j < angles; ++j)
      best = std::max(best, std::abs(p.eval(circle_node(center, rr, j, angles))));
  }
  return best;
}

namespace ref {

double sup_on_circle(const NAnalyticPoly& p, Complex center, double radius, int angles) {
  double best = 0.0;
  for (int j = 0; j < angles; ++j)
    best = std::max(best, std::abs(p.eval(circle_node(center, radius, j, angles))));
  return best;
}

double sup_on_disk(const NAnalyticPoly& p, Complex center, double radius, int interior,
                   int angles) {
  double best = std::abs(p.eval(center));
  for (int i = 0; i <= interior; ++i) {
    double r = (i == interior) ? radius : radius * (i + 1) / (interior + 1);
    for (int j = 0; j < angles; ++j)
      best = std::max(best, std::abs(p.eval(circle_node(center, r, j, angles))));
  }
  return best;
}

}  // namespace ref

}  // namespace polyagev
