#ifndef POLYAGEV_CUTOFF_HPP
#define POLYAGEV_CUTOFF_HPP

#include <vector>

#include "polyagev/poly.hpp"

namespace polyagev {

// Standard smooth transition g(t)/(g(t)+g(1-t)) with g(t) = exp(-c/t): 0 for
// t <= 0, 1 for t >= 1, C-infinity in between. c is the sharpness parameter.
double smooth_step(double t, double sharpness = 1.0);

// Radial plateau cutoff: identically 1 for r <= inner, identically 0 for
// r >= outer, values in [0,1].
struct CutoffSpec {
  double inner = 0.0;
  double outer = 0.0;
  double sharpness = 1.0;
};

class RadialCutoff {
 public:
  explicit RadialCutoff(CutoffSpec spec);

  double value(double r) const;

  // j-th radial derivative by centered differences with two-level Richardson
  // extrapolation, j <= 4. The step follows the caller's grid resolution but
  // is capped at width/16 so sub-grid transition shells stay resolved.
  double derivative(int j, double r, double step_hint = 0.0) const;

  const CutoffSpec& spec() const { return spec_; }

 private:
  CutoffSpec spec_;
};

// dbar^m of a radial function u(|z|) factors as z^m g_m(r) where g_m is the
// m-fold application of w -> w'/(2r). Returns g_m(r) given the cutoff.
double radial_dbar_factor(const RadialCutoff& u, int m, double r, double step_hint = 0.0);

}  // namespace polyagev

#endif
