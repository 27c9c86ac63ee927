#ifndef POLYAGEV_GEVREY_HPP
#define POLYAGEV_GEVREY_HPP

#include <span>
#include <vector>

#include "polyagev/table.hpp"

namespace polyagev {

// Fitted coefficient-decay model |a_p| <= alpha exp(-beta p^{k/(k+1)}).
// residual is the largest one-sided violation of the fitted line in
// log-space; curvature is the quadratic coefficient of the same data.
struct GevreyDecayModel {
  double k = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  int p_min = 0;
  int p_max = 0;
  double residual = 0.0;
  double curvature = 0.0;
  bool trivial = false;  // finitely supported component, no fit needed
  bool accepted = false;
};

// Acceptance: beta > 0 and (residual <= 0.5 or curvature <= 0). Faster decay
// than the model (geometric coefficients) bends the line concavely and still
// certifies membership; decay slowdown bends it convexly and is rejected.
inline constexpr double kGevreyResidualTol = 0.5;

// Least-squares line of ln|a_p| against -p^{k/(k+1)} over p >= p_min (default
// drops the first 8 coefficients; zeros are skipped).
GevreyDecayModel fit_decay(std::span<const double> moduli, double k, int p_min = 8);

// The two-candidate minimum from the decay lemma:
//   inf_{n>=1} n^{n(1+1/k)} ((1+e P0)/p)^n
// attained at n in {r_p, r_p+1}, r_p = floor(e^{-1} (1+e P0)^{-k/(k+1)} p^{k/(k+1)}).
double lemma_infimum(long long p, double p0, double k);

struct MembershipReport {
  std::vector<GevreyDecayModel> components;
  bool accepted = false;
  int first_rejected = -1;
};

// Componentwise membership in H_N^k(D) via coefficient decay: every
// holomorphic component must fit the decay model.
MembershipReport membership_report(const CoefficientTable& table, double k, int p_min = 8);

}  // namespace polyagev

#endif
