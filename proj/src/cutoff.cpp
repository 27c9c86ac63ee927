#include "polyagev/cutoff.hpp"

#include <cmath>

#include "polyagev/errors.hpp"

namespace polyagev {

double smooth_step(double t, double sharpness) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-sharpness / t);
  double b = std::exp(-sharpness / (1.0 - t));
  return a / (a + b);
}

RadialCutoff::RadialCutoff(CutoffSpec spec) : spec_(spec) {
  if (!(spec.inner > 0.0) || !(spec.outer > spec.inner) || !(spec.sharpness > 0.0))
    throw error(errc::domain, "cutoff needs 0 < inner < outer");
}

double RadialCutoff::value(double r) const {
  // 1 on the inner plateau, 0 outside.
  return smooth_step((spec_.outer - r) / (spec_.outer - spec_.inner), spec_.sharpness);
}

namespace {

double stencil(const RadialCutoff& u, int j, double r, double h) {
  switch (j) {
    case 1:
      return (u.value(r + h) - u.value(r - h)) / (2.0 * h);
    case 2:
      return (u.value(r + h) - 2.0 * u.value(r) + u.value(r - h)) / (h * h);
    case 3:
      return (u.value(r + 2 * h) - 2.0 * u.value(r + h) + 2.0 * u.value(r - h) -
              u.value(r - 2 * h)) /
             (2.0 * h * h * h);
    case 4:
      return (u.value(r + 2 * h) - 4.0 * u.value(r + h) + 6.0 * u.value(r) -
              4.0 * u.value(r - h) + u.value(r - 2 * h)) /
             (h * h * h * h);
    default:
      throw error(errc::domain, "cutoff derivative order must be 1..4");
  }
}

}  // namespace

double RadialCutoff::derivative(int j, double r, double step_hint) const {
  if (j == 0) return value(r);
  double width = spec_.outer - spec_.inner;
  // Entirely on a plateau (two stencil widths clear of the transition): all
  // derivatives vanish exactly.
  double h = step_hint > 0.0 ? std::min(step_hint, width / 16.0) : width / 512.0;
  if (r + 2 * h <= spec_.inner || r - 2 * h >= spec_.outer) return 0.0;
  double coarse = stencil(*this, j, r, h);
  double fine = stencil(*this, j, r, h / 2.0);
  double p2 = 4.0;  // the stencils above are all second order
  return (p2 * fine - coarse) / (p2 - 1.0);
}

double radial_dbar_factor(const RadialCutoff& u, int m, double r, double step_hint) {
  if (m < 0) throw error(errc::domain, "m must be >= 0");
  if (m == 0) return u.value(r);
  if (!(r > 0.0)) throw error(errc::domain, "r must be positive off the plateau");
  // g_m = sum_j c_j u^{(j)} r^{-a_j}, built by iterating w -> w'/(2r).
  struct Term {
    double c;
    int j;
    int a;
  };
  std::vector<Term> terms{{0.5, 1, 1}};
  for (int step = 1; step < m; ++step) {
    std::vector<Term> next;
    next.reserve(terms.size() * 2);
    for (const Term& t : terms) {
      next.push_back({t.c / 2.0, t.j + 1, t.a + 1});
      next.push_back({-t.c * t.a / 2.0, t.j, t.a + 2});
    }
    // merge duplicates (same derivative order and power)
    std::vector<Term> merged;
    for (const Term& t : next) {
      bool found = false;
      for (Term& mte : merged)
        if (mte.j == t.j && mte.a == t.a) {
          mte.c += t.c;
          found = true;
          break;
        }
      if (!found) merged.push_back(t);
    }
    terms = std::move(merged);
  }
  double acc = 0.0;
  for (const Term& t : terms)
    acc += t.c * u.derivative(t.j, r, step_hint) * std::pow(r, -static_cast<double>(t.a));
  return acc;
}

}  // namespace polyagev
