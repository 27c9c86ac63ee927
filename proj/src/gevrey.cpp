#include "polyagev/gevrey.hpp"

#include <algorithm>
#include <cmath>

#include "polyagev/errors.hpp"
#include "polyagev/linalg.hpp"

namespace polyagev {

GevreyDecayModel fit_decay(std::span<const double> moduli, double k, int p_min) {
  if (!(k > 0.0)) throw error(errc::domain, "k must be positive");
  std::vector<double> xs, ys;
  int last = -1;
  for (int p = p_min; p < static_cast<int>(moduli.size()); ++p) {
    double m = moduli[static_cast<size_t>(p)];
    if (!(m > 0.0)) continue;
    xs.push_back(std::pow(static_cast<double>(p), k / (k + 1.0)));
    ys.push_back(std::log(m));
    last = p;
  }
  if (xs.size() < 8) throw error(errc::insufficient_data, "need at least 8 nonzero moduli");
  LineFit f = fit_line(xs, ys);  // y ~ intercept + slope * x
  GevreyDecayModel m;
  m.k = k;
  m.alpha = std::exp(f.intercept);
  m.beta = -f.slope;
  m.p_min = p_min;
  m.p_max = last;
  m.residual = f.max_residual;
  m.curvature = quad_coefficient(xs, ys);
  if (m.beta <= 0.0) throw error(errc::negative_beta, "fitted decay rate is not positive");
  m.accepted = (m.residual <= kGevreyResidualTol) || (m.curvature <= 0.0);
  return m;
}

double lemma_infimum(long long p, double p0, double k) {
  if (p < 1 || !(p0 >= 1.0) || !(k > 0.0)) throw error(errc::domain, "lemma_infimum parameters");
  double c = (1.0 + std::exp(1.0) * p0) / static_cast<double>(p);
  double kk = k / (k + 1.0);
  long long rp = static_cast<long long>(
      std::floor(std::exp(-1.0) * std::pow(1.0 + std::exp(1.0) * p0, -kk) *
                 std::pow(static_cast<double>(p), kk)));
  auto ln_value = [&](long long n) {
    // (c^{k/(k+1)} n)^{(1+1/k) n} = c^n n^{(1+1/k) n}
    return (1.0 + 1.0 / k) * n * (kk * std::log(c) + std::log(static_cast<double>(n)));
  };
  long long n1 = std::max<long long>(1, rp);
  long long n2 = std::max<long long>(1, rp + 1);
  return std::exp(std::min(ln_value(n1), ln_value(n2)));
}

MembershipReport membership_report(const CoefficientTable& table, double k, int p_min) {
  if (table.q_max() < 32)
    throw error(errc::domain, "membership needs a truncation of at least 32 powers");
  MembershipReport rep;
  rep.accepted = true;
  for (int p = 0; p < table.order(); ++p) {
    auto mods = table.moduli(p);
    // A component whose tail half is exactly zero is a polynomial: trivially
    // in the class, nothing to fit.
    bool tail_zero = true;
    for (int q = (table.q_max() + 1) / 2; q <= table.q_max(); ++q)
      if (mods[static_cast<size_t>(q)] != 0.0) {
        tail_zero = false;
        break;
      }
    if (tail_zero) {
      GevreyDecayModel m;
      m.k = k;
      m.trivial = true;
      m.accepted = true;
      rep.components.push_back(m);
      continue;
    }
    GevreyDecayModel m;
    try {
      m = fit_decay(mods, k, p_min);
    } catch (const error& e) {
      if (e.code() == errc::negative_beta) {
        m.k = k;
        m.beta = -1.0;
        m.accepted = false;
      } else {
        throw;
      }
    }
    if (!m.accepted && rep.first_rejected < 0) rep.first_rejected = p;
    rep.accepted = rep.accepted && m.accepted;
    rep.components.push_back(m);
  }
  return rep;
}

}  // namespace polyagev
