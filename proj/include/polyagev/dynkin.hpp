#ifndef POLYAGEV_DYNKIN_HPP
#define POLYAGEV_DYNKIN_HPP

#include <functional>
#include <string>
#include <vector>

#include "polyagev/cutoff.hpp"
#include "polyagev/decompose.hpp"
#include "polyagev/expansion.hpp"

namespace polyagev {

// Midpoint-rule grid on the square [-half_width, half_width]^2, nodes at cell
// centers.
struct Grid2D {
  double half_width = 0.0;
  int resolution = 0;
  double cell() const { return 2.0 * half_width / resolution; }
  double cell_area() const { return cell() * cell(); }
  Complex node(int ix, int iy) const {
    return Complex(-half_width + (ix + 0.5) * cell(), -half_width + (iy + 0.5) * cell());
  }
  void validate() const;
};

// Fundamental solution of (d/dzbar)^N: zbar^{N-1} / (pi (N-1)! z).
Complex vN_kernel(Complex z, int order);

struct PompeiuResult {
  Complex estimate;
  double indicator = 0.0;  // |estimate - half-resolution estimate|
};

// Midpoint quadrature of integral V_N(z - zeta) dbarN_phi(zeta) dnu(zeta).
// The cell containing z is excluded: the analytic integral of V_N over the
// equal-area disk centered at z vanishes (the e^{-iN theta} average is zero),
// so the excluded cell contributes nothing. Throws GRID_TOO_COARSE when the
// refinement indicator exceeds 10 * tol.
PompeiuResult pompeiu_reconstruct(const Evaluable& dbarN_phi, Complex z, const Grid2D& grid,
                                  int order, double tol = 5e-3);

// Smooth compactly supported extension F = sum_n h_n f_n of a certified block
// expansion, with h_n the radial cutoff that is 1 on D_{k,A/4,max(n,1)} and 0
// off D_{k,A/3,max(n,1)}. Evaluates F and (d/dzbar)^N F anywhere; dbarN uses
// the Leibniz expansion with symbolic block derivatives and finite-difference
// cutoff derivatives.
class ExtensionEvaluator {
 public:
  ExtensionEvaluator(BlockExpansion exp, double a_scale, double sharpness = 1.0,
                     double fd_step_hint = 0.0);

  Complex value(Complex z) const;
  Complex dbarN(Complex z) const;

  int order() const { return exp_.order; }
  double k() const { return exp_.k; }
  double a_scale() const { return a_; }
  double support_radius() const { return 1.0 + a_; }
  int shell_count() const { return exp_.count(); }
  // Transition shell of block n (plateau edge, support edge).
  std::pair<double, double> shell(int n) const;
  // Distance scale of the innermost resolved shell: A/4 n_last^{-1/k}.
  double shell_min_distance() const;
  const BlockExpansion& expansion() const { return exp_; }

 private:
  BlockExpansion exp_;
  double a_;
  double sharp_;
  double fd_step_;
  std::vector<NAnalyticPoly> prefix_;                  // prefix_[n] = sum of blocks 0..n
  std::vector<std::vector<NAnalyticPoly>> dbar_pows_;  // [i][n] = dbar^i of block n, i < order
};

struct ExtensionField {
  Grid2D grid;
  int order = 1;
  double k = 1.0;
  double support_radius = 0.0;
  std::vector<Complex> values;  // row-major, ix slow
  std::vector<Complex> dbar;    // (d/dzbar)^N F at the nodes
};

// Evaluates the extension on the grid. Requires a certificate, 0 < A < 1 and
// a grid square containing D_{1+A}.
ExtensionField build_extension(const BlockExpansion& exp, double a_scale, const Grid2D& grid,
                               double sharpness = 1.0);

struct DbarDecayFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  // one-sided, of the bin envelope against the fit
  int bins = 0;
};

// Fits ln|dbarN| ~ ln C1 - C2 (|z|-1)^{-k} on the envelope of radial samples
// (per-bin maxima over log-spaced distance bins). The sampling window covers
// two octaves above the innermost shell, where the decay law is asymptotic.
DbarDecayFit dbar_decay_fit(const ExtensionEvaluator& ev, double k, int bins = 24,
                            double octaves = 2.0);
// Grid-node variant for deserialized fields; limited to distances the grid
// resolves.
DbarDecayFit dbar_decay_fit(const ExtensionField& field, double k, int bins = 24);

// sup over sampled (z, zeta) in D x (D_{1+2R0/3} \ closed D) of
//   exp(-B(|zeta|-1)^{-k}) l! max(|z-zeta|,1)^{N-1} / (pi |z-zeta|^{l+1}).
double psi_kernel_bound(int l, double b, double k, double r0, int order = 1,
                        int u_samples = 256, int t_samples = 256);

struct DerivativeRecord {
  int l = 0;
  int m = 0;
  Complex quadrature;  // d^{l+m} f / dz^l dzbar^m via the Pompeiu kernel
};

struct ConverseMembership {
  bool kernel_gate_ok = false;  // psi envelope finite before interchange
  double fitted_p = 0.0;        // P with |deriv| <= P^{l+m+1} (l+m)^{(1+1/k)(l+m)}
  std::vector<DerivativeRecord> derivatives;
  double probe_error = 0.0;  // max |F(z) - reconstruct(z)| over the probe set
  bool accepted = false;
};

// Converse direction: differentiates the Pompeiu integral under the integral
// sign (kernel derivatives in closed form, zero for m >= N off the diagonal)
// with shell-adapted polar quadrature, after the psi kernel envelope gate.
// Derivatives are taken at `at` for all l + m <= max_total.
ConverseMembership converse_membership(const ExtensionEvaluator& ev, Complex at,
                                       int max_total = 6, int radial_nodes = 48,
                                       int angular_nodes = 256);

void write_extension_field(const std::string& path, const ExtensionField& f);
ExtensionField read_extension_field(const std::string& path);

}  // namespace polyagev

#endif
