// Acceptance suite: one test case per criterion, each printing a single
// pass/fail line. Tolerances are pinned in code; a red line here is a real
// finding, not a calibration knob.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "polyagev/approx.hpp"
#include "polyagev/bounds.hpp"
#include "polyagev/corpus.hpp"
#include "polyagev/decompose.hpp"
#include "polyagev/dynkin.hpp"
#include "polyagev/errors.hpp"
#include "polyagev/expansion.hpp"
#include "polyagev/gevrey.hpp"
#include "polyagev/kernels.hpp"

using namespace polyagev;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool announce(int num, const char* desc, bool ok) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, desc);
  std::fflush(stdout);
  return ok;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<double> straddle_radii(int order) {
  // circles straddling |z| = 1 (valid: the instances are entire) keep the
  // high-mode content above the double-rounding floor of the samples
  std::vector<double> r(static_cast<size_t>(order));
  for (int j = 0; j < order; ++j)
    r[static_cast<size_t>(j)] = order == 1 ? 1.0 : std::exp(-0.10 + 0.20 * j / (order - 1));
  return r;
}

BlockExpansion certified_corpus(const std::string& id, double k) {
  auto t = parse_corpus(id).table();
  return certify_norms(build_blocks(t, k), default_r_scale(t, k));
}

}  // namespace

TEST_CASE("criterion 1: decomposition round trip") {
  Timer timer;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    int order = 1 + i % 5;
    int deg = 1 + (7 * i + 11) % 64;
    auto f = random_poly(order, deg, 52000 + static_cast<std::uint64_t>(i));
    auto res = decompose_function([&f](Complex z) { return f.eval(z); }, order,
                                  straddle_radii(order), 512, deg);
    double scale = 0.0, err = 0.0;
    for (int p = 0; p < order; ++p) {
      const auto& c = f.component(p).coeffs();
      for (int q = 0; q <= deg; ++q) {
        Complex truth = q < static_cast<int>(c.size()) ? c[static_cast<size_t>(q)] : Complex(0.0);
        scale = std::max(scale, std::abs(truth));
        err = std::max(err, std::abs(res.table.at(p, q) - truth));
      }
    }
    worst = std::max(worst, err / scale);
  }
  double secs = timer.seconds();
  bool ok = worst <= 1e-9 && secs < 30.0;
  std::printf("    worst relative error %.3e, %.1f s\n", worst, secs);
  CHECK(announce(1, "100 random round trips recover coefficients to 1e-9", ok));
}

TEST_CASE("criterion 2: constant oracles") {
  double l2 = lm(std::vector<double>{2.0});
  double l3 = lm(std::vector<double>{2.0, 3.0});
  double j2 = jm(2, 0.5, 1.0);
  bool ok = std::abs(l2 - 10.0 / 3.0) <= 1e-12 * (10.0 / 3.0) &&
            std::abs(l3 - 425.0 / 12.0) <= 1e-12 * (425.0 / 12.0) &&
            std::abs(j2 - 3.9) <= 1e-12 * 3.9;
  CHECK(announce(2, "L2(2)=10/3, L3(2,3)=425/12, J2(1/2,1)=3.9 at 1e-12", ok));
}

TEST_CASE("criterion 3: proposition 2.1 sweep") {
  Timer timer;
  bool ok = true;
  for (int m = 2; m <= 8; ++m)
    for (double eps : {0.1, 0.2, 0.5, 1.0, 2.0}) ok = ok && check_estm1(m, eps).holds;
  double secs = timer.seconds();
  ok = ok && secs < 5.0;
  CHECK(announce(3, "J_m(1+eps/2,1+eps) bound holds for m in 2..8, five eps", ok));
}

TEST_CASE("criterion 4: power-decay supremum closed form vs grid") {
  bool ok = true;
  double worst = 0.0;
  for (int l = 0; l <= 50; ++l) {
    for (double k : {0.5, 1.0, 2.0}) {
      for (double rho : {0.1, 0.5, 0.9}) {
        // in log space: the values overflow a double near l = 50, k = 1/2
        double ln_closed = ln_sup_power_decay(l, k, rho);
        double ln_grid;
        if (l == 0) {
          ln_grid = 0.0;
        } else {
          double t_hi = 10.0 * l / (k * std::log(1.0 / rho)) + 10.0;
          auto ln_value = [&](double t) {
            return t > 0.0 ? (l / k) * std::log(t) + 0.5 * t * std::log(rho)
                           : -std::numeric_limits<double>::infinity();
          };
          double best = -std::numeric_limits<double>::infinity(), arg = 0.0;
          for (int i = 0; i <= 20000; ++i) {
            double t = t_hi * i / 20000.0;
            double v = ln_value(t);
            if (v > best) {
              best = v;
              arg = t;
            }
          }
          double lo = std::max(0.0, arg - 2.0 * t_hi / 20000.0);
          double hi = std::min(t_hi, arg + 2.0 * t_hi / 20000.0);
          for (int i = 0; i <= 20000; ++i) {
            double t = lo + (hi - lo) * i / 20000.0;
            best = std::max(best, ln_value(t));
          }
          ln_grid = best;
        }
        double rel = std::abs(ln_closed - ln_grid);  // log difference = relative gap
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-6;
      }
    }
  }
  std::printf("    worst relative disagreement %.3e\n", worst);
  CHECK(announce(4, "boundsup closed form matches grid maximization to 1e-6", ok));
}

TEST_CASE("criterion 5: theorem 3.1 verifiers on random polynomials") {
  GridSpec grid{1024, 32};
  auto reports = sweep_max_modulus(200, 73000, grid);
  int violations = 0;
  for (const auto& r : reports)
    if (!r.holds) ++violations;
  std::printf("    %zu checks, %d violations\n", reports.size(), violations);
  CHECK(announce(5, "maxp0/maxp1/maxp2 hold on 200 random polyanalytic polynomials",
                 violations == 0));
}

TEST_CASE("criterion 6: Bernstein-Walsh sweep") {
  auto reports = sweep_bw(1000, 91000, GridSpec{1024, 32});
  int violations = 0, tighter_holds = 0;
  for (const auto& r : reports) {
    if (!r.holds) ++violations;
    for (const auto& [key, val] : r.parameters)
      if (key == "tighter_holds" && val == 1.0) ++tighter_holds;
  }
  std::printf("    stated constant: %d violations; tighter constant held on %d/1000\n",
              violations, tighter_holds);
  CHECK(announce(6, "stated BW constant holds on 1000 instances, tighter recorded",
                 violations == 0));
}

TEST_CASE("criterion 7: main theorem direct part") {
  Timer timer;
  bool ok = true;
  for (double k : {1.0, 2.0}) {
    std::string id = "gevrey:c=1,k=" + std::to_string(static_cast<int>(k)) + ",N=1,Q=512";
    auto exp = certified_corpus(id, k);
    REQUIRE(exp.cert.has_value());
    std::printf("    k=%g: delta %.4f residual %.3f R %.4f\n", k, exp.cert->delta,
                exp.cert->residual, exp.cert->r_scale);
    ok = ok && exp.cert->delta < 1.0 && exp.cert->residual <= 0.3;
    if (k == 1.0) ok = ok && exp.cert->delta <= 0.93;
  }
  double secs = timer.seconds();
  ok = ok && secs < 60.0;
  std::printf("    %.1f s\n", secs);
  CHECK(announce(7, "block certificates: delta < 1, residual <= 0.3, delta(k=1) <= 0.93", ok));
}

TEST_CASE("criterion 8: main theorem converse part") {
  bool ok = true;
  for (const auto& [id, k] : std::vector<std::pair<std::string, double>>{
           {"gevrey:c=1,k=1,N=1,Q=512", 1.0},
           {"gevrey:c=1,k=2,N=1,Q=512", 2.0},
           {"gevrey:c=1,k=1,N=3,Q=256", 1.0}}) {
    auto exp = certified_corpus(id, k);
    auto rep = converse_verify(exp, k);
    bool betas_ok = !rep.component_betas.empty();
    for (double b : rep.component_betas) betas_ok = betas_ok && std::abs(b - 1.0) <= 0.2;
    std::printf("    %s: chain %d membership %d beta[0] %.3f\n", id.c_str(),
                rep.component_chain_ok ? 1 : 0, rep.membership.accepted ? 1 : 0,
                rep.component_betas.empty() ? -1.0 : rep.component_betas[0]);
    ok = ok && rep.accepted && betas_ok;
  }
  CHECK(announce(8, "converse accepts certified expansions, betas within 20%", ok));
}

TEST_CASE("criterion 9: lemma infimum two-candidate formula") {
  bool ok = true;
  for (double p0 : {1.0, 2.0, 5.0}) {
    for (double k : {0.5, 1.0, 2.0}) {
      for (long long p = 1; p <= 10000 && ok; ++p) {
        double two = lemma_infimum(p, p0, k);
        double c = (1.0 + std::exp(1.0) * p0) / static_cast<double>(p);
        // the optimizer reaches n = 72 at k = 2, p = 1e4, so the exhaustive
        // range goes to 200 (not the 50 a smaller sweep would suggest)
        double brute = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 200; ++n) {
          double ln_v =
              (1.0 + 1.0 / k) * n * std::log(static_cast<double>(n)) + n * std::log(c);
          brute = std::min(brute, std::exp(ln_v));
        }
        ok = ok && std::abs(two - brute) <= 1e-12 * brute;
      }
    }
  }
  CHECK(announce(9, "two-candidate minimum equals exhaustive minimization", ok));
}

TEST_CASE("criterion 10: Cauchy-Pompeiu quadrature on the bump corpus") {
  Timer timer;
  bool ok = true;
  RadialCutoff bump({0.5, 1.0, 1.0});
  for (int order = 1; order <= 3; ++order) {
    // phi = B(|z|) zbar^{N-1}; dbar^N phi via Leibniz with the radial factors
    auto density = [&](Complex z) {
      double r = std::abs(z);
      if (r < 1e-12) return Complex(0.0);
      Complex acc(0.0);
      for (int j = 0; j <= order - 1; ++j) {
        // C(N,j) (N-1)!/(N-1-j)!
        double coef = std::tgamma(order + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(order - j + 1.0)) *
                      std::tgamma(static_cast<double>(order)) / std::tgamma(static_cast<double>(order - j));
        int m = order - j;
        double g = radial_dbar_factor(bump, m, r, 1e-4);
        acc += coef * std::pow(std::conj(z), order - 1 - j) * std::pow(z, m) * g;
      }
      return acc;
    };
    Complex z0(0.3, 0.2);
    Complex expect = std::pow(std::conj(z0), order - 1);
    double prev = std::numeric_limits<double>::infinity();
    for (int res : {128, 256, 512}) {
      Grid2D grid{1.2, res};
      auto rec = pompeiu_reconstruct(density, z0, grid, order, 5e-3);
      double err = std::abs(rec.estimate - expect);
      std::printf("    N=%d res=%d err %.2e indicator %.2e\n", order, res, err, rec.indicator);
      ok = ok && err < prev;
      if (res == 512) ok = ok && err <= 5e-3;
      prev = err;
    }
  }
  double secs = timer.seconds();
  ok = ok && secs < 120.0;
  std::printf("    %.1f s\n", secs);
  CHECK(announce(10, "bump reconstruction within 5e-3 at 512^2, monotone refinement", ok));
}

TEST_CASE("criterion 11: Dyn'kin extension and converse membership") {
  bool ok = true;
  for (const auto& [id, k] : std::vector<std::pair<std::string, double>>{
           {"gevrey:c=1,k=1,N=1,Q=512", 1.0},
           {"gevrey:c=1,k=2,N=1,Q=512", 2.0},
           {"gevrey:c=1,k=1,N=2,Q=256", 1.0}}) {
    auto exp = certified_corpus(id, k);
    ExtensionEvaluator ev(exp, 0.5);
    auto fit = dbar_decay_fit(ev, k);
    std::printf("    %s: C2 %.4g residual %.3f\n", id.c_str(), fit.c2, fit.residual);
    ok = ok && fit.c2 > 0.0 && fit.residual <= 0.5;

    auto rep = converse_membership(ev, Complex(0.0), 4);
    NAnalyticPoly f = reassemble(exp).to_poly();
    double worst = 0.0;
    for (const auto& rec : rep.derivatives) {
      Complex series = dz_pow(dbar_pow(f, rec.m), rec.l).eval(Complex(0.0));
      worst = std::max(worst,
                       std::abs(rec.quadrature - series) / (1.0 + std::abs(series)));
    }
    std::printf("    %s: gate %d probe %.2e worst derivative mismatch %.2e\n", id.c_str(),
                rep.kernel_gate_ok ? 1 : 0, rep.probe_error, worst);
    ok = ok && rep.accepted && worst <= 1e-4;
  }
  CHECK(announce(11, "extension decay certified and derivatives match series to 1e-4", ok));
}

TEST_CASE("criterion 12: approximation degrees") {
  bool ok = true;
  auto exp = certified_corpus("gevrey:c=1,k=1,N=1,Q=512", 1.0);
  std::vector<ApproxRecord> records;
  bool bounded = true;
  for (int n = 0; n <= 128; ++n) {
    auto rec = constructive_approximant(exp, n);
    bounded = bounded && rec.e_value <= rec.bound * (1.0 + 1e-9);
    records.push_back(std::move(rec));
  }
  ok = ok && bounded;
  auto theta = fit_theta(records, 1.0);
  std::printf("    member: bounded %d, theta beta %.3f\n", bounded ? 1 : 0, theta.beta);
  ok = ok && theta.beta > 0.0;

  // the 1/(p+1) non-member: certified lower estimates of E over n <= 128
  // (minimax at desk-scale degrees is too flat to witness the breach)
  auto nm = parse_corpus("polynomial_decay:q=1,N=1,Q=512").table();
  auto nm_records = coefficient_lower_records(nm, 128);
  bool rejected = false;
  try {
    rejected = !fit_theta(nm_records, 1.0).accepted;
  } catch (const error& e) {
    rejected = e.code() == errc::negative_beta;
  }
  std::printf("    non-member rejected %d\n", rejected ? 1 : 0);
  ok = ok && rejected;

  auto zb = minimax_estimate([](Complex z) { return std::conj(z); }, 1, 4);
  std::printf("    minimax zbar e %.6f\n", zb.e_value);
  ok = ok && zb.e_value >= 0.95 && zb.e_value <= 1.0 + 1e-9;
  CHECK(announce(12, "constructive bounds, theta fits, minimax of zbar in [0.95,1]", ok));
}

TEST_CASE("criterion 13: appendix suite") {
  Timer timer;
  auto reports = sweep_appendix(10000, 10);
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.holds;
    for (const auto& [key, val] : r.parameters)
      if (key == "D1" || key == "D2" || key == "D3") ok = ok && std::isfinite(val) && val > 0.0;
  }
  std::printf("    %zu appendix reports, %.1f s\n", reports.size(), timer.seconds());
  CHECK(announce(13, "appendix 8.1/8.2/8.3 constants finite with no growth trend", ok));
}
