#include "polyagev/dynkin.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "polyagev/bounds.hpp"
#include "polyagev/errors.hpp"
#include "polyagev/kernels.hpp"
#include "polyagev/linalg.hpp"

#include "json.hpp"

namespace polyagev {

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex ipow_conj(Complex z, int e) {
  Complex zb = std::conj(z);
  Complex acc(1.0);
  for (int i = 0; i < e; ++i) acc *= zb;
  return acc;
}
}  // namespace

void Grid2D::validate() const {
  if (resolution < 64) throw error(errc::domain, "grid resolution must be >= 64");
  if (!(half_width > 0.0)) throw error(errc::domain, "grid half width must be positive");
}

Complex vN_kernel(Complex z, int order) {
  if (order < 1) throw error(errc::domain, "order must be >= 1");
  if (z == Complex(0.0)) throw error(errc::singular, "kernel pole at z = 0");
  if (order <= 20) return ipow_conj(z, order - 1) / (kPi * std::tgamma(order) * z);
  // log-space modulus, exact phase: V_N = r^{N-2} e^{-iN theta} / (pi (N-1)!)
  double r = std::abs(z), th = std::arg(z);
  double ln_mod = (order - 2.0) * std::log(r) - std::lgamma(order);
  double mod = std::exp(ln_mod) / kPi;
  return mod * Complex(std::cos(-order * th), std::sin(-order * th));
}

namespace {

Complex pompeiu_sum(const Evaluable& dbar_phi, Complex z, const Grid2D& grid, int order) {
  double hw = grid.half_width;
  double h = grid.cell();
  int zi = static_cast<int>(std::floor((z.real() + hw) / h));
  int zj = static_cast<int>(std::floor((z.imag() + hw) / h));
  // The cell holding z is replaced by the analytic integral of V_N over the
  // equal-area centered disk, which is zero for every N >= 1.
  auto terms = map_cells(grid.resolution, hw, [&](int ix, int iy, Complex zeta) {
    if (ix == zi && iy == zj) return Complex(0.0);
    return vN_kernel(z - zeta, order) * dbar_phi(zeta);
  });
  return pairwise_sum(std::span<const Complex>(terms)) * grid.cell_area();
}

}  // namespace

PompeiuResult pompeiu_reconstruct(const Evaluable& dbarN_phi, Complex z, const Grid2D& grid,
                                  int order, double tol) {
  grid.validate();
  if (grid.resolution % 2 != 0) throw error(errc::domain, "resolution must be even");
  PompeiuResult res;
  res.estimate = pompeiu_sum(dbarN_phi, z, grid, order);
  Grid2D half{grid.half_width, grid.resolution / 2};
  Complex coarse = pompeiu_sum(dbarN_phi, z, half, order);
  res.indicator = std::abs(res.estimate - coarse);
  if (res.indicator > 10.0 * tol)
    throw error(errc::grid_too_coarse, "refinement indicator " + std::to_string(res.indicator));
  return res;
}

ExtensionEvaluator::ExtensionEvaluator(BlockExpansion exp, double a_scale, double sharpness,
                                       double fd_step_hint)
    : exp_(std::move(exp)), a_(a_scale), sharp_(sharpness), fd_step_(fd_step_hint) {
  if (!exp_.cert) throw error(errc::uncertified, "extension needs a certified expansion");
  if (!(a_ > 0.0) || !(a_ < 1.0)) throw error(errc::domain, "A must lie in (0,1)");
  if (exp_.count() == 0) throw error(errc::insufficient_data, "empty expansion");
  prefix_.reserve(static_cast<size_t>(exp_.count()));
  for (int n = 0; n < exp_.count(); ++n) {
    if (n == 0)
      prefix_.push_back(exp_.blocks[0]);
    else
      prefix_.push_back(prefix_.back() + exp_.blocks[static_cast<size_t>(n)]);
  }
  dbar_pows_.resize(static_cast<size_t>(std::max(exp_.order - 1, 0)));
  for (int i = 1; i < exp_.order; ++i) {
    auto& level = dbar_pows_[static_cast<size_t>(i - 1)];
    level.reserve(static_cast<size_t>(exp_.count()));
    for (int n = 0; n < exp_.count(); ++n)
      level.push_back(dbar_pow(exp_.blocks[static_cast<size_t>(n)], i));
  }
}

std::pair<double, double> ExtensionEvaluator::shell(int n) const {
  double f = std::pow(static_cast<double>(std::max(n, 1)), -1.0 / exp_.k);
  return {1.0 + 0.25 * a_ * f, 1.0 + a_ * f / 3.0};
}

double ExtensionEvaluator::shell_min_distance() const {
  return 0.25 * a_ *
         std::pow(static_cast<double>(std::max(exp_.count() - 1, 1)), -1.0 / exp_.k);
}

Complex ExtensionEvaluator::value(Complex z) const {
  double r = std::abs(z);
  auto [inner0, outer0] = shell(0);
  if (r >= outer0) return Complex(0.0);
  // Blocks whose plateau still covers r contribute through the prefix sum.
  int n_pl;
  if (r <= inner0) {
    double t = (r - 1.0) * 4.0 / a_;
    n_pl = exp_.count() - 1;
    if (t > 0.0) {
      double bound = std::pow(t, -exp_.k);
      if (bound < static_cast<double>(exp_.count() - 1))
        n_pl = static_cast<int>(std::floor(bound));
    }
  } else {
    n_pl = -1;
  }
  LComplex acc(0.0L);
  if (n_pl >= 0) acc = prefix_[static_cast<size_t>(n_pl)].eval_l(LComplex(z));
  for (int n = n_pl + 1; n < exp_.count(); ++n) {
    auto [inner, outer] = shell(n);
    if (outer <= r) break;  // outer radii decrease with n
    if (r <= inner) continue;  // n = 0 and n = 1 share a shell
    RadialCutoff h({inner, outer, sharp_});
    double hv = h.value(r);
    if (hv > 0.0) acc += static_cast<long double>(hv) * exp_.blocks[static_cast<size_t>(n)].eval_l(LComplex(z));
  }
  return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

Complex ExtensionEvaluator::dbarN(Complex z) const {
  double r = std::abs(z);
  auto [inner0, outer0] = shell(0);
  if (r >= outer0) return Complex(0.0);
  int order = exp_.order;
  LComplex acc(0.0L);
  LComplex lz(z);
  for (int n = 0; n < exp_.count(); ++n) {
    auto [inner, outer] = shell(n);
    if (outer <= r && n >= 1) break;
    double width = outer - inner;
    double h = fd_step_ > 0.0 ? std::min(fd_step_, width / 16.0) : width / 64.0;
    if (r + 2.0 * h <= inner || r - 2.0 * h >= outer) continue;  // plateau: exact zero
    RadialCutoff cut({inner, outer, sharp_});
    // Leibniz: (dbar)^N (h f) = sum_{j>=1} C(N,j) (dbar^j h)(dbar^{N-j} f);
    // the j = 0 term dies because f is polyanalytic of order N.
    double binom = 1.0;
    LComplex zj(1.0L);
    for (int j = 1; j <= order; ++j) {
      binom = binom * (order - j + 1) / j;
      zj *= lz;
      double gj = radial_dbar_factor(cut, j, r, fd_step_);
      if (gj == 0.0) continue;
      const NAnalyticPoly& rest =
          (order - j == 0) ? exp_.blocks[static_cast<size_t>(n)]
                           : dbar_pows_[static_cast<size_t>(order - j - 1)][static_cast<size_t>(n)];
      acc += static_cast<long double>(binom * gj) * zj * rest.eval_l(lz);
    }
  }
  return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

ExtensionField build_extension(const BlockExpansion& exp, double a_scale, const Grid2D& grid,
                               double sharpness) {
  grid.validate();
  if (!(grid.half_width >= 1.0 + a_scale))
    throw error(errc::domain, "grid square must contain D_{1+A}");
  ExtensionEvaluator ev(exp, a_scale, sharpness, grid.cell());
  ExtensionField f;
  f.grid = grid;
  f.order = exp.order;
  f.k = exp.k;
  f.support_radius = 1.0 + a_scale;
  f.values = map_cells(grid.resolution, grid.half_width,
                       [&](int, int, Complex z) { return ev.value(z); });
  f.dbar = map_cells(grid.resolution, grid.half_width,
                     [&](int, int, Complex z) { return ev.dbarN(z); });
  return f;
}

namespace {

DbarDecayFit fit_envelope(std::vector<std::pair<double, double>>& samples, double k, int bins,
                          double d_lo, double d_hi) {
  // per-bin maxima over log-spaced distance bins, then a least-squares line
  // of ln(max) against -(distance)^{-k}
  std::vector<double> xs, ys;
  double lr = std::log(d_hi / d_lo);
  std::vector<double> best(static_cast<size_t>(bins), 0.0);
  std::vector<double> best_d(static_cast<size_t>(bins), 0.0);
  for (auto& [d, v] : samples) {
    if (d < d_lo || d > d_hi) continue;
    int b = std::min(bins - 1, static_cast<int>(std::floor(std::log(d / d_lo) / lr * bins)));
    if (v > best[static_cast<size_t>(b)]) {
      best[static_cast<size_t>(b)] = v;
      best_d[static_cast<size_t>(b)] = d;
    }
  }
  for (int b = 0; b < bins; ++b) {
    if (best[static_cast<size_t>(b)] <= 1e-300) continue;
    xs.push_back(-std::pow(best_d[static_cast<size_t>(b)], -k));
    ys.push_back(std::log(best[static_cast<size_t>(b)]));
  }
  if (xs.size() < 8) throw error(errc::insufficient_data, "too few populated distance bins");
  LineFit f = fit_line(xs, ys);
  DbarDecayFit out;
  out.c1 = std::exp(f.intercept);
  out.c2 = f.slope;  // y ~ intercept + slope * (-(d^-k)) so slope is C2
  out.residual = f.max_residual;
  out.bins = static_cast<int>(xs.size());
  return out;
}

}  // namespace

DbarDecayFit dbar_decay_fit(const ExtensionEvaluator& ev, double k, int bins, double octaves) {
  double d_lo = ev.shell_min_distance() * 1.02;
  double d_hi = d_lo * std::pow(2.0, octaves);
  d_hi = std::min(d_hi, ev.a_scale() / 3.0 * 0.999);
  const double rays[] = {0.0, 0.77, 2.1, 3.9};
  int per_ray = static_cast<int>(160 * octaves);
  std::vector<std::pair<double, double>> samples;
  samples.reserve(sizeof(rays) / sizeof(rays[0]) * static_cast<size_t>(per_ray));
  for (double th : rays) {
    Complex dir(std::cos(th), std::sin(th));
    for (int i = 0; i < per_ray; ++i) {
      double d = d_lo * std::pow(d_hi / d_lo, (i + 0.5) / per_ray);
      double v = std::abs(ev.dbarN((1.0 + d) * dir));
      if (v > 1e-300) samples.emplace_back(d, v);
    }
  }
  return fit_envelope(samples, k, bins, d_lo, d_hi);
}

DbarDecayFit dbar_decay_fit(const ExtensionField& field, double k, int bins) {
  double cell = field.grid.cell();
  double d_lo = 2.0 * cell;
  double d_hi = std::min(8.0 * cell, field.support_radius - 1.0);
  std::vector<std::pair<double, double>> samples;
  int m = field.grid.resolution;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy) {
      double d = std::abs(field.grid.node(ix, iy)) - 1.0;
      if (d <= 0.0) continue;
      double v = std::abs(field.dbar[static_cast<size_t>(ix) * m + iy]);
      if (v > 1e-300) samples.emplace_back(d, v);
    }
  return fit_envelope(samples, k, bins, d_lo, d_hi);
}

double psi_kernel_bound(int l, double b, double k, double r0, int order, int u_samples,
                        int t_samples) {
  if (l < 0 || !(b > 0.0) || !(k > 0.0) || !(r0 > 0.0) || order < 1)
    throw error(errc::domain, "psi_kernel_bound parameters");
  double u_hi = 2.0 * r0 / 3.0;
  double u_lo = u_hi * 1e-6;
  double ln_lfact = std::lgamma(l + 1.0);
  double best = -std::numeric_limits<double>::infinity();
  for (int iu = 0; iu < u_samples; ++iu) {
    double u = u_lo * std::pow(u_hi / u_lo, static_cast<double>(iu) / (u_samples - 1));
    double damp = -b * std::pow(u, -k);
    for (int it = 0; it < t_samples; ++it) {
      // z runs along the diameter through zeta; |z - zeta| spans [u, 2+u]
      double t = -1.0 + 2.0 * static_cast<double>(it) / (t_samples - 1);
      double dist = 1.0 + u - t;
      double v = damp + ln_lfact - std::log(kPi) - (l + 1.0) * std::log(dist) +
                 (order - 1.0) * std::log(std::max(dist, 1.0));
      best = std::max(best, v);
    }
  }
  return std::exp(best);
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1], tabulated for small counts via
// Newton iteration on the Legendre polynomial.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<size_t>(n));
  w.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p0 = 1.0, p1 = t;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[static_cast<size_t>(i)] = t;
    w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

// d^{l+m}/dz^l dzbar^m of V_N(w), valid away from w = 0; vanishes for m >= N.
Complex kernel_derivative(Complex w, int order, int l, int m) {
  if (m >= order) return Complex(0.0);
  double sign = (l % 2 == 0) ? 1.0 : -1.0;
  double scale = sign * std::tgamma(l + 1.0) / (kPi * std::tgamma(order - m));
  Complex num = ipow_conj(w, order - 1 - m);
  Complex den(1.0);
  for (int i = 0; i < l + 1; ++i) den *= w;
  return scale * num / den;
}

}  // namespace

ConverseMembership converse_membership(const ExtensionEvaluator& ev, Complex at, int max_total,
                                       int radial_nodes, int angular_nodes) {
  if (std::abs(at) >= 1.0) throw error(errc::domain, "derivatives are taken inside D");
  ConverseMembership out;

  // Gate: the interchange of derivative and integral is backed by the psi
  // kernel envelope (finite, dominated by the appendix estimate) before any
  // derivative is trusted.
  double b_decay;
  bool gate = true;
  try {
    b_decay = dbar_decay_fit(ev, ev.k()).c2;
    gate = b_decay > 0.0;
  } catch (const error& e) {
    if (e.code() != errc::insufficient_data) throw;
    // finite expansions: the density vanishes near the circle, so every
    // positive rate certifies the decay
    b_decay = 1.0;
  }
  double r0 = ev.a_scale() / 2.0;
  for (int l = 0; l <= max_total && gate; ++l) {
    double sup = psi_kernel_bound(l, b_decay, ev.k(), r0, ev.order());
    BoundReport dom = check_appendix_82(b_decay, r0, ev.k(), l);
    double d2 = 0.0;
    for (const auto& [key, val] : dom.parameters)
      if (key == "D2") d2 = val;
    double shape = (l > 0) ? std::pow(static_cast<double>(l), (1.0 + 1.0 / ev.k()) * l) : 1.0;
    double envelope = std::pow(2.0 * (1.0 + 2.0 * r0 / 3.0), ev.order() - 1.0) / kPi *
                      std::pow(d2, l + 1.0) * shape;
    if (!(sup <= envelope * (1.0 + 1e-6)) || !std::isfinite(sup)) gate = false;
  }
  out.kernel_gate_ok = gate;
  if (!gate) return out;

  // Polar quadrature over the annulus where the density lives, on panels cut
  // at every shell boundary so each panel sees a fixed set of active cutoffs.
  // Radial Gauss-Legendre per panel, trapezoid in the angle.
  std::vector<double> edges;
  for (int n = 0; n < ev.shell_count(); ++n) {
    auto [inner, outer] = ev.shell(n);
    edges.push_back(inner);
    edges.push_back(outer);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<double> gx, gw;
  gauss_legendre(radial_nodes, gx, gw);
  struct QNode {
    Complex zeta;
    Complex psi;
    double weight;  // r * w_r * dtheta
  };
  std::vector<QNode> nodes;
  for (size_t e = 0; e + 1 < edges.size(); ++e) {
    double mid = 0.5 * (edges[e] + edges[e + 1]), half = 0.5 * (edges[e + 1] - edges[e]);
    if (half <= 0.0) continue;
    for (int i = 0; i < radial_nodes; ++i) {
      double r = mid + half * gx[static_cast<size_t>(i)];
      double wr = half * gw[static_cast<size_t>(i)];
      for (int a = 0; a < angular_nodes; ++a) {
        double th = 2.0 * kPi * a / angular_nodes;
        Complex zeta = r * Complex(std::cos(th), std::sin(th));
        Complex psi = ev.dbarN(zeta);
        if (psi == Complex(0.0)) continue;
        nodes.push_back({zeta, psi, r * wr * 2.0 * kPi / angular_nodes});
      }
    }
  }

  double ln_p = -std::numeric_limits<double>::infinity();
  std::vector<Complex> terms;
  terms.reserve(nodes.size());
  for (int total = 0; total <= max_total; ++total) {
    for (int m = 0; m <= total; ++m) {
      int l = total - m;
      DerivativeRecord rec{l, m, Complex(0.0)};
      if (m < ev.order()) {
        terms.clear();
        for (const QNode& q : nodes)
          terms.push_back(kernel_derivative(at - q.zeta, ev.order(), l, m) * q.psi * q.weight);
        rec.quadrature = pairwise_sum(std::span<const Complex>(terms));
      }
      double mag = std::abs(rec.quadrature);
      if (mag > 0.0) {
        double shape = (total > 0)
                           ? (1.0 + 1.0 / ev.k()) * total * std::log(static_cast<double>(total))
                           : 0.0;
        ln_p = std::max(ln_p, (std::log(mag) - shape) / (total + 1.0));
      }
      out.derivatives.push_back(rec);
    }
  }
  out.fitted_p = std::exp(ln_p);

  // Pompeiu self-consistency on a small interior probe ring.
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    double th = 2.0 * kPi * i / 16.0;
    Complex z = 0.5 * Complex(std::cos(th), std::sin(th));
    terms.clear();
    for (const QNode& q : nodes)
      terms.push_back(vN_kernel(z - q.zeta, ev.order()) * q.psi * q.weight);
    Complex rec = pairwise_sum(std::span<const Complex>(terms));
    worst = std::max(worst, std::abs(rec - ev.value(z)));
  }
  out.probe_error = worst;
  out.accepted = gate && worst <= 5e-3;
  return out;
}

void write_extension_field(const std::string& path, const ExtensionField& f) {
  std::ofstream os(path);
  if (!os) throw error(errc::domain, "cannot open " + path);
  nlohmann::json header{{"half_width", f.grid.half_width},
                        {"resolution", f.grid.resolution},
                        {"support_radius", f.support_radius},
                        {"N", f.order},
                        {"k", f.k}};
  os << header.dump() << "\n";
  os << "ix,iy,re,im,dbar_re,dbar_im\n";
  char buf[160];
  int m = f.grid.resolution;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy) {
      size_t idx = static_cast<size_t>(ix) * m + iy;
      Complex v = f.values[idx], d = f.dbar[idx];
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g\n", ix, iy, v.real(),
                    v.imag(), d.real(), d.imag());
      os << buf;
    }
}

ExtensionField read_extension_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw error(errc::domain, "cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw error(errc::insufficient_data, "empty field file");
  nlohmann::json header = nlohmann::json::parse(line);
  ExtensionField f;
  f.grid.half_width = header.at("half_width").get<double>();
  f.grid.resolution = header.at("resolution").get<int>();
  f.support_radius = header.at("support_radius").get<double>();
  f.order = header.at("N").get<int>();
  f.k = header.at("k").get<double>();
  int m = f.grid.resolution;
  f.values.assign(static_cast<size_t>(m) * m, Complex(0.0));
  f.dbar.assign(static_cast<size_t>(m) * m, Complex(0.0));
  std::getline(is, line);  // column header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int ix, iy;
    double re, im, dre, dim;
    char c;
    std::istringstream ls(line);
    if (!(ls >> ix >> c >> iy >> c >> re >> c >> im >> c >> dre >> c >> dim))
      throw error(errc::domain, "bad field row: " + line);
    size_t idx = static_cast<size_t>(ix) * m + iy;
    f.values[idx] = Complex(re, im);
    f.dbar[idx] = Complex(dre, dim);
  }
  return f;
}

}  // namespace polyagev
