#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "polyagev/bounds.hpp"
#include "polyagev/corpus.hpp"
#include "polyagev/dynkin.hpp"
#include "polyagev/errors.hpp"

using namespace polyagev;

namespace {
constexpr double kPi = 3.14159265358979323846;

// analytic first derivative of the smooth transition, used as the oracle for
// the finite-difference path: s = a/(a+b), s' = (a'b - ab')/(a+b)^2 with
// a = exp(-1/t), b = exp(-1/(1-t))
double step_d1_exact(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  double ap = a / (t * t), bp = -b / ((1.0 - t) * (1.0 - t));
  double d = a + b;
  return (ap * b - a * bp) / (d * d);
}

BlockExpansion certified_corpus(const char* id, double k, double r_scale = 0.25) {
  auto t = parse_corpus(id).table();
  return certify_norms(build_blocks(t, k), r_scale);
}

}  // namespace

TEST_SUITE_BEGIN("dynkin");

TEST_CASE("fundamental solution values") {
  CHECK(std::abs(vN_kernel(Complex(1.0), 1) - Complex(1.0 / kPi)) < 1e-15);
  CHECK(std::abs(vN_kernel(Complex(0.0, 1.0), 2) - Complex(-1.0 / kPi)) < 1e-15);
  CHECK_THROWS_AS(vN_kernel(Complex(0.0), 3), error);
}

TEST_CASE("kernel modulus identity at random points") {
  std::mt19937_64 gen(7);
  auto u = [&gen] { return (gen() >> 11) * 0x1.0p-53 * 3.0 - 1.5; };
  for (int i = 0; i < 10000; ++i) {
    Complex z(u(), u());
    if (std::abs(z) < 1e-3) continue;
    int order = 1 + i % 5;
    double expect = std::pow(std::abs(z), order - 2.0) / (kPi * std::tgamma(order));
    double got = std::abs(vN_kernel(z, order));
    CHECK(std::abs(got - expect) <= 4 * std::numeric_limits<double>::epsilon() * expect);
  }
}

TEST_CASE("smooth step and cutoff basics") {
  CHECK(smooth_step(-0.5) == 0.0);
  CHECK(smooth_step(1.5) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  RadialCutoff cut({0.5, 1.0, 1.0});
  CHECK(cut.value(0.2) == 1.0);
  CHECK(cut.value(1.3) == 0.0);
  for (double r = 0.55; r < 1.0; r += 0.05) {
    CHECK(cut.value(r) >= 0.0);
    CHECK(cut.value(r) <= 1.0);
  }
  // FD derivative against the analytic transition derivative
  for (double r : {0.6, 0.7, 0.85, 0.95}) {
    double t = (1.0 - r) / 0.5;
    double exact = -step_d1_exact(t) / 0.5;
    CHECK(std::abs(cut.derivative(1, r) - exact) <= 1e-6 * (1.0 + std::abs(exact)));
  }
  // plateau clearance gives exact zeros
  CHECK(cut.derivative(1, 0.3) == 0.0);
  CHECK(cut.derivative(2, 1.2) == 0.0);
}

TEST_CASE("pompeiu quadrature of the zero density") {
  Grid2D grid{1.2, 64};
  auto r = pompeiu_reconstruct([](Complex) { return Complex(0.0); }, Complex(0.1, 0.2), grid, 1,
                               1.0);
  CHECK(r.estimate == Complex(0.0));
  CHECK(r.indicator == 0.0);
}

TEST_CASE("pompeiu reconstruction of a bump times zbar") {
  // phi = B(|z|) zbar with B == 1 on |z| <= 1/2: dbar phi = B + (r/2) B'
  RadialCutoff bump({0.5, 1.0, 1.0});
  auto dbar_phi = [&bump](Complex z) {
    double r = std::abs(z);
    return Complex(bump.value(r) + 0.5 * r * bump.derivative(1, r, 1e-4));
  };
  Complex z0(0.3, 0.2);
  Complex expect = std::conj(z0);  // on the plateau
  double prev = std::numeric_limits<double>::infinity();
  for (int res : {128, 256}) {
    Grid2D grid{1.2, res};
    auto r = pompeiu_reconstruct(dbar_phi, z0, grid, 1, 1.0);
    double err = std::abs(r.estimate - expect);
    CHECK(err < prev);
    CHECK(err < (res == 128 ? 2e-2 : 8e-3));
    prev = err;
  }
}

TEST_CASE("extension agrees with synthesis inside and vanishes outside") {
  auto exp = certified_corpus("gevrey:c=1,k=1,N=2,Q=128", 1.0);
  double a = 0.5;
  ExtensionEvaluator ev(exp, a);
  for (Complex z : {Complex(0.2, 0.1), Complex(-0.6, 0.3), Complex(0.0, -0.8)}) {
    auto s = synthesize(exp, z, exp.count() - 1);
    CHECK(std::abs(ev.value(z) - s.value) <= s.tail_bound + 1e-9);
  }
  CHECK(ev.value(Complex(1.0 + a / 3.0 + 1e-3, 0.0)) == Complex(0.0));
  CHECK(ev.value(Complex(0.0, 1.6)) == Complex(0.0));
  CHECK(ev.dbarN(Complex(1.6, 0.0)) == Complex(0.0));
}

TEST_CASE("extension field on the grid") {
  auto exp = certified_corpus("gevrey:c=1,k=1,N=1,Q=128", 1.0);
  double a = 0.5;
  Grid2D grid{1.6, 128};
  auto field = build_extension(exp, a, grid);
  CHECK(field.support_radius == doctest::Approx(1.5));
  int m = grid.resolution;
  double interior_cut = 1.0 - 2.0 / m;
  for (int ix = 0; ix < m; ++ix)
    for (int iy = 0; iy < m; ++iy) {
      Complex z = grid.node(ix, iy);
      size_t idx = static_cast<size_t>(ix) * m + iy;
      if (std::abs(z) > field.support_radius) {
        CHECK(field.values[idx] == Complex(0.0));
        CHECK(field.dbar[idx] == Complex(0.0));
      }
      if (std::abs(z) <= interior_cut) CHECK(std::abs(field.dbar[idx]) <= 1e-10);
    }

  // round trip through the serialized form
  std::string path = "test_field.tmp";
  write_extension_field(path, field);
  auto back = read_extension_field(path);
  CHECK(back.grid.resolution == field.grid.resolution);
  CHECK(back.values == field.values);
  CHECK(back.dbar == field.dbar);
  std::remove(path.c_str());
}

TEST_CASE("dbar decay fit on the corpus") {
  for (double k : {1.0, 2.0}) {
    auto exp =
        certified_corpus(k == 1.0 ? "gevrey:c=1,k=1,N=1,Q=512" : "gevrey:c=1,k=2,N=1,Q=512", k);
    ExtensionEvaluator ev(exp, 0.5);
    auto fit = dbar_decay_fit(ev, k);
    CHECK(fit.c2 > 0.0);
    CHECK(fit.residual <= 0.5);
  }
}

TEST_CASE("zero density annulus is insufficient data") {
  CoefficientTable z(1, 64);  // the zero table: dbarN vanishes identically
  auto zexp = certify_norms(build_blocks(z, 1.0), 0.25);
  ExtensionEvaluator zev(zexp, 0.5);
  CHECK_THROWS_AS(dbar_decay_fit(zev, 1.0), error);
}

TEST_CASE("psi kernel bound behaves") {
  double v = psi_kernel_bound(0, 1.0, 1.0, 0.5);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  // exponential damping in B
  CHECK(psi_kernel_bound(0, 50.0, 1.0, 0.5) < 1e-6 * v);
  // growth in l stays below the appendix envelope
  for (int l = 0; l <= 10; ++l) {
    double sup = psi_kernel_bound(l, 1.0, 1.0, 0.5);
    auto rep = check_appendix_82(1.0, 0.5, 1.0, l);
    double d2 = 0.0;
    for (auto& [key, val] : rep.parameters)
      if (key == "D2") d2 = val;
    double shape = l > 0 ? std::pow(static_cast<double>(l), 2.0 * l) : 1.0;
    CHECK(sup <= std::pow(2.0 + 2.0 / 3.0, 0.0) / kPi * std::pow(d2, l + 1.0) * shape * (1 + 1e-6));
  }
}

TEST_CASE("converse membership on a corpus member") {
  auto exp = certified_corpus("gevrey:c=1,k=1,N=1,Q=128", 1.0);
  ExtensionEvaluator ev(exp, 0.5);
  auto rep = converse_membership(ev, Complex(0.0), 4, 48, 192);
  CHECK(rep.kernel_gate_ok);
  CHECK(rep.accepted);
  CHECK(rep.probe_error <= 5e-3);

  // quadrature derivatives against symbolic series differentiation
  NAnalyticPoly f = reassemble(exp).to_poly();
  for (const auto& rec : rep.derivatives) {
    Complex series = dz_pow(dbar_pow(f, rec.m), rec.l).eval(Complex(0.0));
    // normalize: d^l/dz^l z^q at 0 equals l! coefficient
    CHECK(std::abs(rec.quadrature - series) <= 1e-4 * (1.0 + std::abs(series)));
  }
}

TEST_CASE("converse membership on a finite polynomial extension") {
  auto t = parse_corpus("finite:[1;1]").table();  // 1 + zbar, order 2
  auto exp = certify_norms(build_blocks(t, 1.0), 0.25);
  ExtensionEvaluator ev(exp, 0.5);
  auto rep = converse_membership(ev, Complex(0.0), 3, 48, 192);
  NAnalyticPoly f = t.to_poly();
  for (const auto& rec : rep.derivatives) {
    Complex series = dz_pow(dbar_pow(f, rec.m), rec.l).eval(Complex(0.0));
    CHECK(std::abs(rec.quadrature - series) <= 1e-4 * (1.0 + std::abs(series)));
  }
  CHECK(rep.probe_error <= 5e-3);
}

TEST_SUITE_END();
