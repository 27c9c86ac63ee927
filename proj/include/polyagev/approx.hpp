#ifndef POLYAGEV_APPROX_HPP
#define POLYAGEV_APPROX_HPP

#include <vector>

#include "polyagev/decompose.hpp"
#include "polyagev/expansion.hpp"

namespace polyagev {

// Boundary-biased sampling grid on the closed unit disk: half the radii lie
// in (0.9, 1] where the sup-norm behavior of these classes concentrates.
struct DiskGrid {
  int radii = 24;
  int angles = 256;
};
std::vector<Complex> disk_grid_nodes(const DiskGrid& g);

enum class ApproxMethod { constructive, minimax, lower_bound };

struct ApproxRecord {
  int n = 0;
  double e_value = 0.0;
  ApproxMethod method = ApproxMethod::constructive;
  NAnalyticPoly approximant{1};
  double bound = 0.0;     // constructive: certified tail bound C delta^{n^{k/(k+1)}}/(1-delta)
  bool converged = true;  // minimax: Lawson stabilized within the iteration cap
};

// Q_n = sum of blocks with j^{(k+1)/k} <= n; degree <= n by the expansion's
// degree law. e_value is the sampled sup of |f - Q_n| over the disk grid.
ApproxRecord constructive_approximant(const BlockExpansion& exp, int n,
                                      const DiskGrid& grid = {});

// Discrete minimax min over P in Pi_{N,n} of max_grid |f - P| by Lawson's
// iteratively reweighted least squares on the complex monomial basis
// z^q zbar^p. Returns the best iterate; `converged` is false when 200
// iterations did not stabilize the discrete optimum.
ApproxRecord minimax_estimate(const Evaluable& f, int order, int n, const DiskGrid& grid = {},
                              int max_iter = 200);

// Certified lower estimates of E_{N,n}: above degree n every P in Pi_{N,n}
// leaves the circle Fourier modes m > n of f untouched, so
// E_{N,n}(f) >= max_{m>n} |sum_p a_{p,m+p}|. A Theta-envelope breach on these
// records rules out membership without a minimax solve.
std::vector<ApproxRecord> coefficient_lower_records(const CoefficientTable& table, int n_max);

struct ThetaFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  double curvature = 0.0;
  bool accepted = false;
};

// Log-linear fit of e-values against -n^{k/(k+1)} (the Theta_{alpha,beta}
// envelope family).
ThetaFit fit_theta(const std::vector<ApproxRecord>& records, double k);

struct ConverseBlocksReport {
  std::vector<double> y_norms;     // measured ||Y_n|| on D_{k,beta/3,n}
  std::vector<double> bw_bounds;   // Bernstein-Walsh extrapolated bounds
  bool two_method_ok = false;      // direct sampling never exceeds the BW route
  double p_envelope = 0.0;         // max ||Y_n|| e^{beta n / 4}
  double decay_ratio = 0.0;        // fitted per-step ratio of ||Y_n||
  ConverseReport inner;            // expansion-side converse on the Y blocks
  bool accepted = false;
};

// Converse of the approximation corollary: from near-best approximants W_n
// with certified errors P16 exp(-beta n^{k/(k+1)}), forms the telescoped
// blocks Y_n = sum_{n^{(k+1)/k} <= j < (n+1)^{(k+1)/k}} (W_j - W_{j-1}),
// certifies their geometric decay on the dilated disks, and runs the main
// theorem's converse on the certified sequence.
ConverseBlocksReport converse_blocks(const std::vector<NAnalyticPoly>& w, double k, double beta);

}  // namespace polyagev

#endif
