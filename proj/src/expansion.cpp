#include "polyagev/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "polyagev/bounds.hpp"
#include "polyagev/decompose.hpp"
#include "polyagev/errors.hpp"
#include "polyagev/linalg.hpp"

namespace polyagev {

long long block_boundary(int n, double k) {
  if (n < 0 || !(k > 0.0)) throw error(errc::domain, "block_boundary parameters");
  double e = (k + 1.0) / k;
  double b = std::pow(n / 2.0, e);  // 2^{-e} n^e
  double r = std::round(b);
  if (std::abs(b - r) < 1e-9 * std::max(1.0, b)) return static_cast<long long>(r);
  return static_cast<long long>(std::ceil(b));
}

BlockRange block_range(int n, double k) {
  return BlockRange{block_boundary(n, k), block_boundary(n + 1, k)};
}

BlockExpansion build_blocks(const CoefficientTable& table, double k) {
  if (!(k > 0.0)) throw error(errc::domain, "k must be positive");
  BlockExpansion exp;
  exp.k = k;
  exp.order = table.order();
  exp.q_max = table.q_max();
  for (int n = 0;; ++n) {
    BlockRange r = block_range(n, k);
    if (r.lo > table.q_max()) break;
    NAnalyticPoly block(table.order());
    for (int p = 0; p < table.order(); ++p) {
      long long hi = std::min<long long>(r.hi - 1, table.q_max());
      std::vector<Complex> c(static_cast<size_t>(std::max<long long>(hi + 1, 0)), Complex(0.0));
      for (long long q = r.lo; q <= hi; ++q)
        c[static_cast<size_t>(q)] = table.at(p, static_cast<int>(q));
      block.set_component(p, HoloPoly(std::move(c)));
    }
    exp.blocks.push_back(std::move(block));
    exp.ranges.push_back(r);
  }
  return exp;
}

CoefficientTable reassemble(const BlockExpansion& exp) {
  // Accumulates, so it is the exact inverse on partitioned ranges and the
  // coefficientwise sum when ranges overlap (the converse Y-block path).
  CoefficientTable t(exp.order, exp.q_max);
  for (int n = 0; n < exp.count(); ++n) {
    const auto& r = exp.ranges[static_cast<size_t>(n)];
    long long hi = std::min<long long>(r.hi - 1, exp.q_max);
    for (int p = 0; p < exp.order; ++p)
      for (long long q = r.lo; q <= hi; ++q)
        t.set(p, static_cast<int>(q),
              t.at(p, static_cast<int>(q)) +
                  exp.blocks[static_cast<size_t>(n)].component(p).coeff(static_cast<int>(q)));
  }
  return t;
}

namespace {

constexpr double kCertResidualTol = 0.3;
constexpr long double kPi = 3.141592653589793238462643383279502884L;

// Sup of |block| over the closed disk of the given radius, evaluating only
// the block's power span (blocks of high order carry long runs of leading
// zeros that plain Horner would walk through).
double block_sup(const NAnalyticPoly& block, const BlockRange& range, double radius,
                 int interior, int angles) {
  long long lo = range.lo;
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (int i = 0; i <= interior; ++i) {
    double r = (i == interior) ? radius : radius * (i + 1) / (interior + 1);
    long double rl = r;
    long double rlo = std::pow(rl, static_cast<long double>(lo));
    for (int j = 0; j < angles; ++j) {
      long double th = 2.0L * kPi * j / angles;
      LComplex z(rl * std::cos(th), rl * std::sin(th));
      LComplex zlo = rlo * LComplex(std::cos(th * lo), std::sin(th * lo));
      LComplex zb = std::conj(z);
      LComplex zbp(1.0L);
      LComplex acc(0.0L);
      for (int p = 0; p < block.order(); ++p) {
        const auto& c = block.component(p).coeffs();
        if (static_cast<long long>(c.size()) > lo) {
          LComplex h(0.0L);
          for (size_t q = c.size(); q-- > static_cast<size_t>(lo);) h = h * z + LComplex(c[q]);
          acc += h * zlo * zbp;
        }
        zbp *= zb;
      }
      best = std::max(best, static_cast<double>(std::abs(acc)));
    }
  }
  return best;
}

}  // namespace

BlockExpansion certify_norms(BlockExpansion exp, double r_scale, int angles) {
  if (!(r_scale > 0.0)) throw error(errc::domain, "R must be positive");
  NormCertificate cert;
  cert.r_scale = r_scale;
  cert.norms.resize(static_cast<size_t>(exp.count()), 0.0);
  for (int n = 0; n < exp.count(); ++n) {
    double radius = 1.0 + r_scale * std::pow(static_cast<double>(std::max(n, 1)), -1.0 / exp.k);
    cert.norms[static_cast<size_t>(n)] =
        block_sup(exp.blocks[static_cast<size_t>(n)], exp.ranges[static_cast<size_t>(n)], radius,
                  8, angles);
  }

  // Regression over complete blocks with nonvanishing norms, skipping the
  // constant-dominated head.
  std::vector<int> full;
  for (int n = 0; n < exp.count(); ++n)
    if (!exp.truncated(n) && cert.norms[static_cast<size_t>(n)] > 1e-300) full.push_back(n);
  if (static_cast<int>(full.size()) < 16) {
    // A finite table (zero norms at the range tail) needs no regression: any
    // delta works, the tail is literally zero.
    bool zero_tail = exp.count() >= 2 && cert.norms[static_cast<size_t>(exp.count() - 1)] == 0.0 &&
                     cert.norms[static_cast<size_t>(exp.count() - 2)] == 0.0;
    if (!zero_tail)
      throw error(errc::insufficient_data, "need at least 16 nonzero full blocks");
    cert.trivial = true;
    cert.delta = 0.5;
    double env = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < exp.count(); ++n) {
      double m = cert.norms[static_cast<size_t>(n)];
      if (m > 0.0) env = std::max(env, std::log(m) - n * std::log(cert.delta));
    }
    cert.c_fit = cert.c_env = std::isfinite(env) ? std::exp(env) : 1e-300;
    cert.residual = 0.0;
    cert.fit_first = 0;
    exp.cert = cert;
    return exp;
  }
  int skip = std::min(16, std::max(1, static_cast<int>(full.size()) / 8));
  std::vector<double> xs, ys;
  for (int n : full) {
    if (n < skip) continue;
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log(cert.norms[static_cast<size_t>(n)]));
  }
  cert.fit_first = skip;
  LineFit f = fit_line(xs, ys);
  cert.c_fit = std::exp(f.intercept);
  cert.delta = std::exp(f.slope);
  cert.residual = f.max_residual;
  cert.curvature = quad_coefficient(xs, ys);
  if (cert.delta >= 1.0)
    throw error(errc::no_geometric_decay, "fitted delta >= 1");
  // Faster-than-geometric norms bend the regression concavely and still
  // certify; convex curvature means the decay is slowing below geometric.
  if (cert.residual > kCertResidualTol && cert.curvature > 0.0)
    throw error(errc::no_geometric_decay, "one-sided fit residual exceeds 0.3");
  // Envelope constant: m_n <= c_env delta^n over every measured block, which
  // is what the geometric tail bounds need.
  double env = f.intercept;
  for (int n = 0; n < exp.count(); ++n) {
    double m = cert.norms[static_cast<size_t>(n)];
    if (m > 0.0) env = std::max(env, std::log(m) - f.slope * n);
  }
  cert.c_env = std::exp(env);
  exp.cert = cert;
  return exp;
}

double default_r_scale(const CoefficientTable& table, double k) {
  double beta = std::numeric_limits<double>::infinity();
  for (int p = 0; p < table.order(); ++p) {
    auto mods = table.moduli(p);
    int nonzero = 0;
    for (double m : mods)
      if (m > 0.0) ++nonzero;
    if (nonzero < 16) continue;  // polynomial-like component, no rate to read
    GevreyDecayModel g = fit_decay(mods, k);
    beta = std::min(beta, g.beta);
  }
  if (!std::isfinite(beta)) return 0.25;
  return beta / 4.0;
}

SynthesisResult synthesize(const BlockExpansion& exp, Complex z, int n_terms) {
  if (!exp.cert) throw error(errc::uncertified, "synthesize needs a norm certificate");
  SynthesisResult out;
  LComplex acc(0.0L);
  for (int n = 0; n <= n_terms && n < exp.count(); ++n)
    acc += exp.blocks[static_cast<size_t>(n)].eval_l(LComplex(z));
  out.value = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  const auto& c = *exp.cert;
  out.tail_bound = c.c_env * std::pow(c.delta, n_terms + 1) / (1.0 - c.delta);
  return out;
}

ConverseReport converse_verify(const BlockExpansion& exp, double k) {
  if (!exp.cert) throw error(errc::uncertified, "converse_verify needs a certificate");
  const auto& cert = *exp.cert;
  if (!(cert.r_scale < 1.0))
    throw error(errc::domain, "the converse normalization requires R < 1");
  ConverseReport rep;

  // maxp2 + ESTM.I chain: on D_{k,R/2,n} each component of block n is bounded
  // by J_N(r0, r) m_n / r0^p with r0, r the half and full dilations.
  double sqrt_delta = std::sqrt(cert.delta);
  double fitted_q = 0.0;
  bool chain_ok = true;
  int order = exp.order;
  for (int n = 1; n < exp.count(); ++n) {
    double m_n = cert.norms[static_cast<size_t>(n)];
    if (m_n <= 1e-300) continue;
    double scale = std::pow(static_cast<double>(n), -1.0 / k);
    double r0 = 1.0 + 0.5 * cert.r_scale * scale;
    double r = 1.0 + cert.r_scale * scale;
    double jn = jm(order, r0, r);
    for (int p = 0; p < order; ++p) {
      NAnalyticPoly comp(1);
      comp.set_component(0, exp.blocks[static_cast<size_t>(n)].component(p));
      double lhs =
          block_sup(comp, exp.ranges[static_cast<size_t>(n)], r0, 8, 512);
      double rhs = jn * m_n / std::pow(r0, p);
      if (lhs > rhs * (1.0 + 1e-9)) chain_ok = false;
      fitted_q = std::max(fitted_q, lhs / std::pow(sqrt_delta, n));
    }
  }
  rep.component_chain_ok = chain_ok;
  rep.fitted_q = fitted_q;

  // Sum the blocks and recover the limit's coefficients from circle samples;
  // the components must pass the decay membership test. The sum is an entire
  // polynomial, so the circles may straddle |z| = 1, which keeps high modes
  // above the rounding floor.
  CoefficientTable summed = reassemble(exp);
  NAnalyticPoly f = summed.to_poly();
  int q_rec = std::min(exp.q_max, 256);
  std::vector<double> radii(static_cast<size_t>(order));
  for (int j = 0; j < order; ++j)
    radii[static_cast<size_t>(j)] =
        order == 1 ? 1.0 : std::exp(-0.03 + 0.06 * j / (order - 1));
  int m = 1;
  while (m < 2 * q_rec + 2 * order + 8) m <<= 1;
  DecomposeResult dec = decompose_function([&f](Complex z) { return f.eval(z); }, order, radii,
                                           m, q_rec);
  rep.membership = membership_report(dec.table, k);
  for (const auto& comp : rep.membership.components)
    rep.component_betas.push_back(comp.beta);
  rep.accepted = chain_ok && rep.membership.accepted;
  return rep;
}

}  // namespace polyagev
