#include "polyagev/approx.hpp"

#include <algorithm>
#include <cmath>

#include "polyagev/bounds.hpp"
#include "polyagev/errors.hpp"
#include "polyagev/kernels.hpp"
#include "polyagev/linalg.hpp"

namespace polyagev {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<Complex> disk_grid_nodes(const DiskGrid& g) {
  if (g.radii < 2 || g.angles < 8) throw error(errc::domain, "disk grid too small");
  std::vector<Complex> nodes;
  nodes.reserve(static_cast<size_t>(g.radii) * g.angles);
  int inner = g.radii / 2;
  int outer = g.radii - inner;
  for (int i = 0; i < g.radii; ++i) {
    double r = (i < inner) ? 0.9 * (i + 1) / inner : 0.9 + 0.1 * (i - inner + 1) / outer;
    for (int a = 0; a < g.angles; ++a) {
      double th = 2.0 * kPi * a / g.angles;
      nodes.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  return nodes;
}

ApproxRecord constructive_approximant(const BlockExpansion& exp, int n, const DiskGrid& grid) {
  if (!exp.cert) throw error(errc::uncertified, "constructive approximant needs a certificate");
  if (n < 0) throw error(errc::domain, "n must be >= 0");
  double e = (exp.k + 1.0) / exp.k;
  NAnalyticPoly q(exp.order);
  NAnalyticPoly tail(exp.order);
  for (int j = 0; j < exp.count(); ++j) {
    if (std::pow(static_cast<double>(j), e) <= static_cast<double>(n) * (1.0 + 1e-12))
      q += exp.blocks[static_cast<size_t>(j)];
    else
      tail += exp.blocks[static_cast<size_t>(j)];
  }
  ApproxRecord rec;
  rec.n = n;
  rec.method = ApproxMethod::constructive;
  rec.approximant = q;
  double sup = 0.0;
  auto nodes = disk_grid_nodes(grid);
#pragma omp parallel for schedule(static) reduction(max : sup)
  for (size_t i = 0; i < nodes.size(); ++i)
    sup = std::max(sup, std::abs(tail.eval(nodes[i])));
  rec.e_value = sup;
  const auto& c = *exp.cert;
  rec.bound = c.c_env * std::pow(c.delta, std::pow(static_cast<double>(n), 1.0 / e)) /
              (1.0 - c.delta);
  return rec;
}

ApproxRecord minimax_estimate(const Evaluable& f, int order, int n, const DiskGrid& grid,
                              int max_iter) {
  if (order < 1 || n < 0) throw error(errc::domain, "minimax parameters");
  auto nodes = disk_grid_nodes(grid);
  int rows = static_cast<int>(nodes.size());
  int cols = order * (n + 1);
  std::vector<Complex> basis(static_cast<size_t>(rows) * cols);
  std::vector<Complex> rhs(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    Complex z = nodes[static_cast<size_t>(i)];
    rhs[static_cast<size_t>(i)] = f(z);
    Complex zbp(1.0);
    int c = 0;
    for (int p = 0; p < order; ++p) {
      Complex zq(1.0);
      for (int q = 0; q <= n; ++q) {
        basis[static_cast<size_t>(i) * cols + c++] = zq * zbp;
        zq *= z;
      }
      zbp *= std::conj(z);
    }
  }
  std::vector<double> w(static_cast<size_t>(rows), 1.0 / rows);
  double best_e = std::numeric_limits<double>::infinity();
  std::vector<Complex> best_c;
  int stable = 0;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<Complex> coef = weighted_lsq(basis, rows, cols, rhs, w);
    double e = 0.0;
    std::vector<double> res(static_cast<size_t>(rows));
    for (int i = 0; i < rows; ++i) {
      Complex acc(0.0);
      for (int c = 0; c < cols; ++c)
        acc += basis[static_cast<size_t>(i) * cols + c] * coef[static_cast<size_t>(c)];
      res[static_cast<size_t>(i)] = std::abs(rhs[static_cast<size_t>(i)] - acc);
      e = std::max(e, res[static_cast<size_t>(i)]);
    }
    if (e < best_e - 1e-13 * (1.0 + e)) {
      best_e = e;
      best_c = std::move(coef);
      stable = 0;
    } else {
      if (best_c.empty()) best_c = std::move(coef);
      ++stable;
    }
    if (best_e < 1e-13 || stable >= 8) {
      converged = true;
      break;
    }
    // Lawson update: w <- w * r, renormalized.
    double total = 0.0;
    for (int i = 0; i < rows; ++i) {
      w[static_cast<size_t>(i)] *= res[static_cast<size_t>(i)];
      total += w[static_cast<size_t>(i)];
    }
    if (total <= 0.0) {
      converged = true;
      break;
    }
    for (auto& wi : w) wi /= total;
  }
  ApproxRecord rec;
  rec.n = n;
  rec.method = ApproxMethod::minimax;
  rec.e_value = best_e;
  rec.converged = converged;
  NAnalyticPoly p(order);
  int c = 0;
  for (int pp = 0; pp < order; ++pp) {
    std::vector<Complex> coeffs(static_cast<size_t>(n) + 1);
    for (int q = 0; q <= n; ++q) coeffs[static_cast<size_t>(q)] = best_c[static_cast<size_t>(c++)];
    p.set_component(pp, HoloPoly(std::move(coeffs)));
  }
  rec.approximant = std::move(p);
  return rec;
}

std::vector<ApproxRecord> coefficient_lower_records(const CoefficientTable& table, int n_max) {
  if (n_max < 1 || n_max >= table.q_max()) throw error(errc::domain, "n_max out of range");
  int order = table.order();
  // mode sums s_m = sum_p a_{p,m+p} on the unit circle
  std::vector<double> mode_abs(static_cast<size_t>(table.q_max()) + 1, 0.0);
  for (int m = 0; m <= table.q_max(); ++m) {
    Complex s(0.0);
    for (int p = 0; p < order && m + p <= table.q_max(); ++p) s += table.at(p, m + p);
    mode_abs[static_cast<size_t>(m)] = std::abs(s);
  }
  // suffix maxima give the best single-mode bound for each n
  std::vector<double> suffix(mode_abs.size() + 1, 0.0);
  for (size_t m = mode_abs.size(); m-- > 0;)
    suffix[m] = std::max(mode_abs[m], suffix[m + 1]);
  std::vector<ApproxRecord> out;
  for (int n = 1; n <= n_max; ++n) {
    ApproxRecord r;
    r.n = n;
    r.method = ApproxMethod::lower_bound;
    r.e_value = suffix[static_cast<size_t>(n) + 1];
    out.push_back(std::move(r));
  }
  return out;
}

ThetaFit fit_theta(const std::vector<ApproxRecord>& records, double k) {
  if (!(k > 0.0)) throw error(errc::domain, "k must be positive");
  std::vector<double> xs, ys;
  for (const auto& r : records) {
    if (!(r.e_value > 0.0)) continue;
    xs.push_back(std::pow(static_cast<double>(r.n), k / (k + 1.0)));
    ys.push_back(std::log(r.e_value));
  }
  if (xs.size() < 12) throw error(errc::insufficient_data, "need >= 12 positive records");
  LineFit f = fit_line(xs, ys);
  ThetaFit t;
  t.alpha = std::exp(f.intercept);
  t.beta = -f.slope;
  t.residual = f.max_residual;
  t.curvature = quad_coefficient(xs, ys);
  if (t.beta <= 0.0) throw error(errc::negative_beta, "fitted theta rate is not positive");
  t.accepted = (t.residual <= kGevreyResidualTol) || (t.curvature <= 0.0);
  return t;
}

ConverseBlocksReport converse_blocks(const std::vector<NAnalyticPoly>& w, double k, double beta) {
  if (w.empty()) throw error(errc::insufficient_data, "need approximants");
  if (!(k > 0.0) || !(beta > 0.0)) throw error(errc::domain, "converse_blocks parameters");
  if (!(beta / 3.0 < 1.0)) throw error(errc::domain, "dilation beta/3 must stay below 1");
  int order = 1;
  for (const auto& wi : w) order = std::max(order, wi.order());
  double e = (k + 1.0) / k;

  // Y_n telescopes W over the power window [n^{(k+1)/k}, (n+1)^{(k+1)/k}).
  auto ceil_pow = [&](int n) {
    double b = std::pow(static_cast<double>(n), e);
    double r = std::round(b);
    if (std::abs(b - r) < 1e-9 * std::max(1.0, b)) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(b));
  };
  std::vector<NAnalyticPoly> ys;
  std::vector<BlockRange> ranges;
  int n_max = 0;
  while (ceil_pow(n_max + 2) <= static_cast<long long>(w.size())) ++n_max;
  if (n_max < 1) throw error(errc::insufficient_data, "approximant sequence too short");
  double bw = bw_constant(order);
  ConverseBlocksReport rep;
  std::vector<double> disk_norms(w.size(), 0.0);  // ||W_j - W_{j-1}|| on the closed disk
  for (size_t j = 0; j < w.size(); ++j) {
    NAnalyticPoly d = w[j];
    d -= w[j == 0 ? 0 : j - 1];  // W_{-1} := W_0, the telescoping base
    disk_norms[j] = sup_on_disk(d, Complex(0.0), 1.0, 8, 512);
  }
  for (int n = 1; n <= n_max; ++n) {
    long long j_lo = std::max<long long>(ceil_pow(n), 1);
    long long j_hi = std::min<long long>(ceil_pow(n + 1), static_cast<long long>(w.size()));
    NAnalyticPoly y(order);
    for (long long j = j_lo; j < j_hi; ++j) {
      y += w[static_cast<size_t>(j)];
      y -= w[static_cast<size_t>(j - 1)];
    }
    double rho = 1.0 + beta / 3.0 * std::pow(static_cast<double>(n), -1.0 / k);
    double direct = sup_on_disk(y, Complex(0.0), rho, 8, 512);
    double route = 0.0;
    for (long long j = j_lo; j < j_hi; ++j)
      route += bw * disk_norms[static_cast<size_t>(j)] *
               std::pow(rho, static_cast<double>(j) + order - 1.0);
    rep.y_norms.push_back(direct);
    rep.bw_bounds.push_back(route);
    Degree dg = y.degree();
    ranges.push_back(BlockRange{0, dg.is_neg_inf() ? 1 : dg.value() + 1});
    ys.push_back(std::move(y));
  }
  rep.two_method_ok = true;
  for (size_t i = 0; i < rep.y_norms.size(); ++i)
    if (rep.y_norms[i] > rep.bw_bounds[i] * (1.0 + 1e-9)) rep.two_method_ok = false;

  // Geometric decay of the Y blocks at rate e^{-beta/4}, the appendix route.
  double p_env = 0.0;
  std::vector<double> xs, ls;
  for (size_t i = 0; i < rep.y_norms.size(); ++i) {
    double norm = rep.y_norms[i];
    int n = static_cast<int>(i) + 1;
    if (norm > 1e-300) {
      p_env = std::max(p_env, norm * std::exp(beta * n / 4.0));
      xs.push_back(static_cast<double>(n));
      ls.push_back(std::log(norm));
    }
  }
  rep.p_envelope = p_env;
  if (xs.size() >= 3) {
    LineFit f = fit_line(xs, ls);
    rep.decay_ratio = std::exp(f.slope);
  } else {
    rep.decay_ratio = 0.0;  // trivially decaying (all Y vanish)
  }
  if (rep.decay_ratio > std::exp(-beta / 4.0) * 1.25)
    throw error(errc::no_geometric_decay, "Y-block decay slower than exp(-beta/4)");

  if (xs.empty()) {
    // all blocks vanish: trivially accepted, nothing to feed downstream
    rep.accepted = rep.two_method_ok;
    return rep;
  }

  // Package the certified sequence for the main theorem's converse.
  BlockExpansion bexp;
  bexp.k = k;
  bexp.order = order;
  bexp.blocks = std::move(ys);
  bexp.ranges = std::move(ranges);
  int qm = 0;
  for (const auto& r : bexp.ranges) qm = std::max(qm, static_cast<int>(r.hi) - 1);
  bexp.q_max = qm;
  NormCertificate cert;
  cert.r_scale = beta / 3.0;
  cert.delta = std::exp(-beta / 4.0);
  cert.c_fit = cert.c_env = std::max(p_env, 1e-300);
  cert.residual = 0.0;
  cert.fit_first = 1;
  cert.norms.assign(1, 0.0);  // index 0 placeholder; measured norms follow
  cert.norms.insert(cert.norms.end(), rep.y_norms.begin(), rep.y_norms.end());
  // blocks vector lacks an n = 0 entry; shift in a zero block so indices align
  bexp.blocks.insert(bexp.blocks.begin(), NAnalyticPoly(order));
  bexp.ranges.insert(bexp.ranges.begin(), BlockRange{0, 0});
  bexp.cert = cert;
  rep.inner = converse_verify(bexp, k);
  rep.accepted = rep.two_method_ok && rep.inner.accepted;
  return rep;
}

}  // namespace polyagev
