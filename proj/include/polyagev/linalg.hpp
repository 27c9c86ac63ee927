#ifndef POLYAGEV_LINALG_HPP
#define POLYAGEV_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

#include "polyagev/poly.hpp"

namespace polyagev {

// Solves A x = b by Gaussian elimination with partial pivoting. A is n x n
// row-major and is destroyed. Returns the estimated condition number proxy
// (ratio of largest to smallest pivot magnitude).
// Throws errc::singular_system when a pivot vanishes.
long double lu_solve(std::vector<LComplex>& a, std::vector<LComplex>& b, int n);

// Weighted complex least squares min_x sum_i w_i |A_i x - b_i|^2 via the
// normal equations, for small well-scaled systems (Lawson inner loops).
std::vector<Complex> weighted_lsq(const std::vector<Complex>& a, int rows, int cols,
                                  const std::vector<Complex>& b,
                                  const std::vector<double>& w);

// Deterministic pairwise summation: the reduction tree depends only on the
// length, never on thread count.
Complex pairwise_sum(std::span<const Complex> terms);
double pairwise_sum(std::span<const double> terms);

// Least-squares line y ~ intercept + slope * x, plus the largest one-sided
// residual max_i (y_i - fit(x_i)).
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double max_residual = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Quadratic coefficient of the least-squares parabola through (x, y). Its
// sign tells convex decay-slowdown apart from concave faster-than-model
// decay when a line underfits.
double quad_coefficient(std::span<const double> x, std::span<const double> y);

}  // namespace polyagev

#endif
