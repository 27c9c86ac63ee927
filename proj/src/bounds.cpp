#include "polyagev/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "polyagev/errors.hpp"
#include "polyagev/kernels.hpp"
#include "polyagev/linalg.hpp"

namespace polyagev {

namespace {
constexpr double kRelSlack = 1e-12;
}

BoundReport make_report(std::string name, std::vector<std::pair<std::string, double>> params,
                        double lhs, double rhs) {
  BoundReport r;
  r.name = std::move(name);
  r.parameters = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.holds = (rhs == 0.0) ? (lhs <= 0.0) : (lhs <= rhs * (1.0 + kRelSlack));
  return r;
}

double DilatedDiskSpec::radius() const {
  if (k <= 0.0 || r_scale <= 0.0 || n < 1) throw error(errc::domain, "dilated disk parameters");
  return 1.0 + r_scale * std::pow(static_cast<double>(n), -1.0 / k);
}

double lm(std::span<const double> s) {
  size_t n = s.size();  // m - 1 nodes
  if (n == 0) return 1.0;
  double prev = 1.0;
  for (size_t j = 0; j < n; ++j) {
    if (!(s[j] > 1.0) || !(s[j] > prev)) throw error(errc::domain, "nodes must satisfy 1 < s_1 < ... < s_{m-1}");
    prev = s[j];
  }
  long double prod = 1.0L;
  for (size_t j = 0; j < n; ++j) {
    long double s2 = static_cast<long double>(s[j]) * s[j];
    prod *= (s2 + 1.0L) / (s2 - 1.0L);
  }
  long double sum = 0.0L;
  for (size_t p = 0; p < n; ++p) {
    long double term = std::pow(static_cast<long double>(s[p]), static_cast<long double>(n));
    long double sp2 = static_cast<long double>(s[p]) * s[p];
    for (size_t j = 0; j < n; ++j) {
      if (j == p) continue;
      long double sj2 = static_cast<long double>(s[j]) * s[j];
      term *= (sj2 + 1.0L) / std::abs(sj2 - sp2);
    }
    sum += term;
  }
  return static_cast<double>(prod * sum);
}

double jm(int m, double r0, double r) {
  if (m < 1) throw error(errc::domain, "m must be >= 1");
  if (!(r > r0) || !(r0 > 0.0)) throw error(errc::domain, "need r > r0 > 0");
  if (m == 1) return 1.0;
  std::vector<double> s(static_cast<size_t>(m) - 1);
  for (int j = 1; j < m; ++j) s[static_cast<size_t>(j) - 1] = 1.0 + j * (r - r0) / (m * r0);
  return lm(s);
}

BoundReport check_estm1(int m, double eps) {
  if (m < 2) throw error(errc::domain, "the L_m formula needs m >= 2");
  if (!(eps > 0.0)) throw error(errc::domain, "eps must be positive");
  double lhs = jm(m, 1.0 + eps / 2.0, 1.0 + eps);
  double rhs = (m - 1) *
               std::pow(2.5 * m, 2.0 * m - 2.0) *
               std::pow(1.0 + 2.0 / eps, 2.0 * m - 2.0);
  return make_report("estm1", {{"m", static_cast<double>(m)}, {"eps", eps}}, lhs, rhs);
}

double ln_sup_power_decay(int l, double k, double rho) {
  if (l < 0 || !(k > 0.0) || !(rho > 0.0) || !(rho < 1.0))
    throw error(errc::domain, "sup_power_decay parameters");
  if (l == 0) return 0.0;
  double lg = std::log(1.0 / rho);
  return (l / k) *
         (std::log(2.0 / (std::exp(1.0) * k * lg)) + std::log(static_cast<double>(l)));
}

double sup_power_decay(int l, double k, double rho) {
  return std::exp(ln_sup_power_decay(l, k, rho));
}

namespace {

NAnalyticPoly component_poly(const NAnalyticPoly& f, int p) {
  NAnalyticPoly g(1);
  g.set_component(0, f.component(p));
  return g;
}

}  // namespace

BoundReport check_max_modulus(const NAnalyticPoly& f, Complex center, double r0, double r,
                              MaxModVariant variant, const GridSpec& grid,
                              std::span<const double> interior_radii) {
  if (!(0.0 < r0) || !(r0 < r)) throw error(errc::domain, "need 0 < r0 < r");
  int n = f.order();
  std::vector<std::pair<std::string, double>> params{{"N", static_cast<double>(n)},
                                                     {"r0", r0},
                                                     {"r", r}};
  switch (variant) {
    case MaxModVariant::maxp0: {
      std::vector<double> radii(interior_radii.begin(), interior_radii.end());
      if (radii.empty())
        for (int j = 1; j < n; ++j) radii.push_back(r0 + j * (r - r0) / n);
      if (static_cast<int>(radii.size()) != n - 1)
        throw error(errc::domain, "maxp0 needs N-1 interior radii");
      std::vector<double> nodes(radii.size());
      for (size_t j = 0; j < radii.size(); ++j) {
        if (!(radii[j] > r0) || !(radii[j] < r) || (j > 0 && !(radii[j] > radii[j - 1])))
          throw error(errc::domain, "maxp0 radii must satisfy r0 < r_1 < ... < r");
        nodes[j] = radii[j] / r0;
      }
      double circles_max = sup_on_circle(f, center, r0, grid.angles);
      for (double rp : radii)
        circles_max = std::max(circles_max, sup_on_circle(f, center, rp, grid.angles));
      double lhs = sup_on_disk(f, center, r0, grid.radial, grid.angles);
      double rhs = lm(nodes) * circles_max;
      return make_report("maxp0", std::move(params), lhs, rhs);
    }
    case MaxModVariant::maxp1: {
      double lhs = sup_on_disk(f, center, r0, grid.radial, grid.angles);
      double rhs = jm(n, r0, r) * sup_on_annulus(f, center, r0, r, grid.radial, grid.angles);
      return make_report("maxp1", std::move(params), lhs, rhs);
    }
    case MaxModVariant::maxp2: {
      double annulus = sup_on_annulus(f, center, r0, r, grid.radial, grid.angles);
      double jn = jm(n, r0, r);
      double worst_margin = std::numeric_limits<double>::infinity();
      double worst_lhs = 0.0, worst_rhs = 0.0;
      int worst_p = 0;
      for (int p = 0; p < n; ++p) {
        double lhs = sup_on_disk(component_poly(f, p), center, r0, grid.radial, grid.angles);
        double rhs = jn * annulus / std::pow(r0, p);
        if (rhs - lhs < worst_margin) {
          worst_margin = rhs - lhs;
          worst_lhs = lhs;
          worst_rhs = rhs;
          worst_p = p;
        }
      }
      params.emplace_back("p_worst", static_cast<double>(worst_p));
      return make_report("maxp2", std::move(params), worst_lhs, worst_rhs);
    }
  }
  throw error(errc::domain, "unknown variant");
}

double bw_constant(int order) {
  if (order < 1) throw error(errc::domain, "order must be >= 1");
  return (std::pow(2.0, order + 1) - 1.0) * jm(order, 0.5, 1.0);
}

BoundReport check_bw(const NAnalyticPoly& p, int n, Complex z, const GridSpec& grid) {
  if (!(std::abs(z) > 1.0)) throw error(errc::domain, "need |z| > 1");
  Degree d = p.degree();
  if (!d.is_neg_inf() && d.value() > n) throw error(errc::domain, "degree exceeds n");
  int order = p.order();
  double disk = sup_on_disk(p, Complex(0.0), 1.0, grid.radial, grid.angles);
  double lhs = std::abs(p.eval(z));
  double pow_z = std::pow(std::abs(z), n + order - 1);
  double rhs = bw_constant(order) * disk * pow_z;
  double tighter = (std::pow(2.0, order) - 1.0) * jm(order, 0.5, 1.0) * disk * pow_z;
  BoundReport rep = make_report(
      "bernstein_walsh",
      {{"N", static_cast<double>(order)}, {"n", static_cast<double>(n)}, {"abs_z", std::abs(z)}},
      lhs, rhs);
  rep.parameters.emplace_back("tighter_rhs", tighter);
  rep.parameters.emplace_back("tighter_holds", lhs <= tighter * (1.0 + kRelSlack) ? 1.0 : 0.0);
  return rep;
}

namespace {

// ln of g(n) from the first appendix estimate.
double ln_g81(double b, double k, double n) {
  double e = (k + 1.0) / k;
  double width = std::pow(n + 1.0, e) - std::pow(n, e) + 1.0;
  return -b * n + std::log(width) + std::pow(n, e) * std::log1p(0.5 * b * std::pow(n, -1.0 / k));
}

struct EnvelopeScan {
  double overall_max = -std::numeric_limits<double>::infinity();  // logs
  double early_max = -std::numeric_limits<double>::infinity();
  double late_max = -std::numeric_limits<double>::infinity();
  int argmax = 0;
};

}  // namespace

BoundReport check_appendix_81(double b, double k, int n_max) {
  if (!(b > 0.0) || !(k > 0.0) || n_max < 10) throw error(errc::domain, "appendix 8.1 parameters");
  int decade_start = n_max / 10;
  EnvelopeScan sc;
  for (int n = 1; n <= n_max; ++n) {
    double s = ln_g81(b, k, static_cast<double>(n)) + 0.25 * b * n;
    if (s > sc.overall_max) {
      sc.overall_max = s;
      sc.argmax = n;
    }
    if (n >= decade_start)
      sc.late_max = std::max(sc.late_max, s);
    else
      sc.early_max = std::max(sc.early_max, s);
  }
  BoundReport rep = make_report("appendix81",
                                {{"B", b}, {"k", k}, {"n_max", static_cast<double>(n_max)}},
                                std::exp(sc.late_max), std::exp(sc.early_max));
  rep.parameters.emplace_back("D1", std::exp(sc.overall_max));
  rep.parameters.emplace_back("argmax_n", static_cast<double>(sc.argmax));
  return rep;
}

BoundReport check_appendix_82(double b, double r_shell, double k, int l_max, int u_samples,
                              int t_samples) {
  if (!(b > 0.0) || !(r_shell > 0.0) || !(k > 0.0) || l_max < 0)
    throw error(errc::domain, "appendix 8.2 parameters");
  double u_hi = 2.0 * r_shell / 3.0;
  double u_lo = u_hi * 1e-6;
  double worst_ratio = 0.0;  // grid max / closed-form bound
  double ln_d2 = -std::numeric_limits<double>::infinity();
  for (int l = 0; l <= l_max; ++l) {
    double ln_lfact = std::lgamma(l + 1.0);
    double grid_max = -std::numeric_limits<double>::infinity();
    for (int iu = 0; iu < u_samples; ++iu) {
      double u = u_lo * std::pow(u_hi / u_lo, static_cast<double>(iu) / (u_samples - 1));
      double damp = -b * std::pow(u, -k);
      // |z - zeta| >= u for z in the closed disk; nearest sampled z lies on
      // the segment from the origin towards zeta.
      for (int it = 0; it < t_samples; ++it) {
        double t = static_cast<double>(it) / (t_samples - 1);  // z = t * zeta/|zeta|
        double dist = 1.0 + u - t;
        double v = damp + ln_lfact - (l + 1.0) * std::log(dist);
        grid_max = std::max(grid_max, v);
      }
    }
    // Closed-form dominating route: B^{-(l+1)/k} l! sup_t t^{(l+1)/k} e^{-t},
    // the sup evaluated through the power-decay formula at rho = e^{-2}.
    double ln_bound = -((l + 1.0) / k) * std::log(b) + ln_lfact +
                      ln_sup_power_decay(l + 1, k, std::exp(-2.0));
    worst_ratio = std::max(worst_ratio, std::exp(grid_max - ln_bound));
    double ln_shape = (l > 0) ? (1.0 + 1.0 / k) * l * std::log(static_cast<double>(l)) : 0.0;
    ln_d2 = std::max(ln_d2, (grid_max - ln_shape) / (l + 1.0));
  }
  BoundReport rep = make_report(
      "appendix82",
      {{"B", b}, {"R", r_shell}, {"k", k}, {"l_max", static_cast<double>(l_max)}},
      worst_ratio, 1.0);
  rep.parameters.emplace_back("D2", std::exp(ln_d2));
  return rep;
}

BoundReport check_appendix_83(double b, double k, int order, int n_max) {
  if (!(b > 0.0) || !(k > 0.0) || order < 1 || n_max < 10)
    throw error(errc::domain, "appendix 8.3 parameters");
  double e = (k + 1.0) / k;
  int decade_start = n_max / 10;
  std::vector<double> s(static_cast<size_t>(n_max) + 1,
                        -std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(dynamic, 16)
  for (int n = 1; n <= n_max; ++n) {
    long long j_lo = static_cast<long long>(std::ceil(std::pow(static_cast<double>(n), e)));
    long long j_hi = static_cast<long long>(std::ceil(std::pow(static_cast<double>(n + 1), e)));
    if (j_lo < 1) j_lo = 1;
    if (j_hi <= j_lo) continue;
    double ln_dil = std::log1p(b / 3.0 * std::pow(static_cast<double>(n), -1.0 / k));
    // streaming log-sum-exp over the block
    double m = -std::numeric_limits<double>::infinity(), acc = 0.0;
    double kexp = k / (k + 1.0);
    double prev_pow = std::pow(static_cast<double>(j_lo - 1), kexp);
    for (long long j = j_lo; j < j_hi; ++j) {
      double cur_pow = std::pow(static_cast<double>(j), kexp);
      double t = std::log1p(std::exp(b * (cur_pow - prev_pow))) + (j + order) * ln_dil;
      prev_pow = cur_pow;
      if (t > m) {
        acc = acc * std::exp(m - t) + 1.0;
        m = t;
      } else {
        acc += std::exp(t - m);
      }
    }
    double ln_h = -b * n + m + std::log(acc);
    s[static_cast<size_t>(n)] = ln_h + 0.25 * b * n;
  }
  EnvelopeScan sc;
  for (int n = 1; n <= n_max; ++n) {
    double v = s[static_cast<size_t>(n)];
    if (v > sc.overall_max) {
      sc.overall_max = v;
      sc.argmax = n;
    }
    if (n >= decade_start)
      sc.late_max = std::max(sc.late_max, v);
    else
      sc.early_max = std::max(sc.early_max, v);
  }
  BoundReport rep = make_report(
      "appendix83",
      {{"B", b}, {"k", k}, {"N", static_cast<double>(order)}, {"n_max", static_cast<double>(n_max)}},
      std::exp(sc.late_max), std::exp(sc.early_max));
  rep.parameters.emplace_back("D3", std::exp(sc.overall_max));
  rep.parameters.emplace_back("argmax_n", static_cast<double>(sc.argmax));
  return rep;
}

std::vector<BoundReport> sweep_estm1() {
  std::vector<BoundReport> out;
  for (int m = 2; m <= 8; ++m)
    for (double eps : {0.1, 0.2, 0.5, 1.0, 2.0}) out.push_back(check_estm1(m, eps));
  return out;
}

std::vector<BoundReport> sweep_max_modulus(int count, std::uint64_t seed, const GridSpec& grid) {
  std::vector<BoundReport> out;
  out.reserve(static_cast<size_t>(count) * 3);
  for (int i = 0; i < count; ++i) {
    int order = 1 + static_cast<int>(i % 4);
    int deg = 1 + static_cast<int>((7 * i + 3) % 12);
    NAnalyticPoly f = random_poly(order, deg, seed + static_cast<std::uint64_t>(i));
    double r0 = 0.3 + 0.2 * (i % 3);
    for (auto variant : {MaxModVariant::maxp0, MaxModVariant::maxp1, MaxModVariant::maxp2}) {
      BoundReport rep = check_max_modulus(f, Complex(0.0), r0, 1.0, variant, grid);
      rep.parameters.emplace_back("instance", static_cast<double>(i));
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<BoundReport> sweep_bw(int count, std::uint64_t seed, const GridSpec& grid) {
  std::vector<BoundReport> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    int order = 1 + static_cast<int>(i % 4);
    int deg = static_cast<int>((5 * i + 1) % 13);
    NAnalyticPoly f = random_poly(order, deg, seed + 1000003ULL * static_cast<std::uint64_t>(i));
    // |z| in (1, 3], deterministic angle/modulus pattern
    double rho = 1.0 + 2.0 * ((i % 97) + 1) / 97.0;
    double th = 2.0 * 3.14159265358979323846 * ((i * 31) % 64) / 64.0;
    Complex z = rho * Complex(std::cos(th), std::sin(th));
    BoundReport rep = check_bw(f, deg, z, grid);
    rep.parameters.emplace_back("instance", static_cast<double>(i));
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<BoundReport> sweep_appendix(int n_max, int l_max) {
  std::vector<BoundReport> out;
  for (double b : {1.0, 4.0})
    for (double k : {0.5, 1.0, 2.0}) out.push_back(check_appendix_81(b, k, n_max));
  for (double b : {0.5, 1.0})
    for (double k : {1.0, 2.0}) out.push_back(check_appendix_82(b, 0.5, k, l_max));
  for (double b : {0.5, 1.0})
    for (double k : {1.0, 2.0})
      for (int order : {1, 2}) out.push_back(check_appendix_83(b, k, order, n_max));
  return out;
}

}  // namespace polyagev
