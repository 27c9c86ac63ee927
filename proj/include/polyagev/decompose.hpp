#ifndef POLYAGEV_DECOMPOSE_HPP
#define POLYAGEV_DECOMPOSE_HPP

#include <functional>
#include <map>
#include <vector>

#include "polyagev/table.hpp"

namespace polyagev {

// Values of a function at the M equispaced angles of a circle.
struct CircleSamples {
  double radius = 0.0;
  std::vector<Complex> values;  // values[j] = f(radius * e^{2 pi i j / M})
  int count() const { return static_cast<int>(values.size()); }
};

using Evaluable = std::function<Complex(Complex)>;

CircleSamples sample_circle(const Evaluable& f, double radius, int m);

// Full DFT X[k] = sum_j v_j e^{-2 pi i jk/M}, k = 0..M-1, accumulated in
// extended precision. Direct O(M^2) summation, with a radix-2 fast path when
// M is a power of two (the direct path is the oracle for the fast one).
std::vector<LComplex> dft(const std::vector<Complex>& values, bool allow_fast = true);

// Normalized Fourier modes phi_m = (1/M) sum_j v_j e^{-2 pi i j m / M} for
// |m| <= M/2 - 1.
std::map<int, Complex> fourier_modes(const CircleSamples& s);

struct DecomposeResult {
  CoefficientTable table;
  double max_residual = 0.0;     // worst per-mode linear-system residual
  double max_condition = 0.0;    // pivot-ratio estimate over all modes
  bool ill_conditioned = false;  // condition estimate exceeded 1e10
};

// Recovers the holomorphic components of an order-N polyanalytic function
// from samples on N concentric circles with strictly increasing radii. For
// each Fourier mode m the N x N system sum_p a_{p,m+p} r_j^{m+2p} = phi_m(r_j)
// is solved by partial-pivoting elimination (the matrix is r_j^m times a
// Vandermonde matrix in r_j^2). Modes with m+p < 0 shrink the unknown set.
DecomposeResult components_from_circles(const std::vector<CircleSamples>& circles, int q_max);

// Convenience front-end: sample N circles of f, then recover.
DecomposeResult decompose_function(const Evaluable& f, int order, const std::vector<double>& radii,
                                   int m, int q_max);

// Holomorphic component of order p (the K_p operator).
HoloPoly kp_extract(const NAnalyticPoly& f, int p);

// r_j = r_max (1/2 + j/(2(N-1))) with r_max = 0.95; spreads the Vandermonde
// nodes to control conditioning.
std::vector<double> default_radii(int order);

}  // namespace polyagev

#endif
