#include <cmath>

#include "doctest.h"
#include "polyagev/decompose.hpp"
#include "polyagev/errors.hpp"

using namespace polyagev;

namespace {

double roundtrip_error(const NAnalyticPoly& f, const std::vector<double>& radii, int m,
                       int q_max) {
  auto res = decompose_function([&f](Complex z) { return f.eval(z); },
                                static_cast<int>(radii.size()), radii, m, q_max);
  double scale = 0.0, err = 0.0;
  for (int p = 0; p < f.order(); ++p) {
    const auto& c = f.component(p).coeffs();
    for (int q = 0; q <= q_max; ++q) {
      Complex truth = q < static_cast<int>(c.size()) ? c[static_cast<size_t>(q)] : Complex(0.0);
      scale = std::max(scale, std::abs(truth));
      err = std::max(err, std::abs(res.table.at(p, q) - truth));
    }
  }
  return err / std::max(scale, 1e-300);
}

std::vector<double> straddle_radii(int order) {
  std::vector<double> r(static_cast<size_t>(order));
  for (int j = 0; j < order; ++j)
    r[static_cast<size_t>(j)] = order == 1 ? 1.0 : std::exp(-0.05 + 0.10 * j / (order - 1));
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("decompose");

TEST_CASE("sample_circle hits the equispaced nodes") {
  auto ones = sample_circle([](Complex) { return Complex(1.0); }, 0.7, 8);
  CHECK(ones.count() == 8);
  for (auto v : ones.values) CHECK(v == Complex(1.0));

  auto ident = sample_circle([](Complex z) { return z; }, 1.0, 4);
  CHECK(std::abs(ident.values[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(ident.values[1] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(ident.values[2] - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(ident.values[3] - Complex(0, -1)) < 1e-15);

  CHECK_THROWS_AS(sample_circle([](Complex) { return Complex(0.0); }, 0.5, 3), error);
}

// conj(z) = r^2 / z on the circle
TEST_CASE("conjugate samples equal r^2 over z") {
  double r = 0.6;
  auto zs = sample_circle([](Complex z) { return z; }, r, 16);
  auto cs = sample_circle([](Complex z) { return std::conj(z); }, r, 16);
  for (int j = 0; j < 16; ++j)
    CHECK(std::abs(cs.values[static_cast<size_t>(j)] -
                   r * r / zs.values[static_cast<size_t>(j)]) < 1e-14);
}

TEST_CASE("fourier_modes picks out monomials") {
  auto c = sample_circle([](Complex) { return Complex(2.5, -1.0); }, 0.8, 32);
  auto modes = fourier_modes(c);
  CHECK(std::abs(modes[0] - Complex(2.5, -1.0)) < 1e-12);
  for (auto [m, v] : modes)
    if (m != 0) CHECK(std::abs(v) < 1e-12);

  double r = 0.7;
  auto zc = sample_circle([](Complex z) { return z; }, r, 32);
  auto zm = fourier_modes(zc);
  CHECK(std::abs(zm[1] - Complex(r)) < 1e-12);
  CHECK(std::abs(zm[-1]) < 1e-12);

  auto cc = sample_circle([](Complex z) { return std::conj(z); }, r, 32);
  auto cm = fourier_modes(cc);
  CHECK(std::abs(cm[-1] - Complex(r)) < 1e-12);
}

TEST_CASE("radix-2 fast path agrees with the direct oracle") {
  std::vector<Complex> v(64);
  for (size_t j = 0; j < v.size(); ++j)
    v[j] = Complex(std::sin(0.3 * static_cast<double>(j)), std::cos(1.1 * static_cast<double>(j)));
  auto fast = dft(v, true);
  auto direct = dft(v, false);
  for (size_t j = 0; j < v.size(); ++j)
    CHECK(std::abs(fast[j] - direct[j]) < 1e-12L * (1.0L + std::abs(direct[j])));
}

TEST_CASE("components_from_circles on exact low-degree input") {
  NAnalyticPoly f(2);
  f.add_monomial(0, 0, 1.0);
  f.add_monomial(1, 0, 1.0);  // 1 + zbar
  auto res = decompose_function([&f](Complex z) { return f.eval(z); }, 2, {0.5, 0.9}, 64, 12);
  CHECK(std::abs(res.table.at(0, 0) - Complex(1.0)) < 1e-10);
  CHECK(std::abs(res.table.at(1, 0) - Complex(1.0)) < 1e-10);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q <= 12; ++q)
      if (!(q == 0))
        CHECK(std::abs(res.table.at(p, q)) < 1e-10);
}

TEST_CASE("N=1 reduces to scaled Fourier modes") {
  auto f = random_poly(1, 10, 77);
  double r = 0.9;
  auto samples = sample_circle([&f](Complex z) { return f.eval(z); }, r, 64);
  auto modes = fourier_modes(samples);
  auto res = components_from_circles({samples}, 10);
  for (int q = 0; q <= 10; ++q)
    CHECK(std::abs(res.table.at(0, q) - modes[q] / std::pow(r, q)) < 1e-11);
}

TEST_CASE("round trip recovers random polynomials") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    int order = 3;
    int deg = 16;
    auto f = random_poly(order, deg, 4000 + s);
    int m = 2 * deg + 2 * order + 4;
    CHECK(roundtrip_error(f, straddle_radii(order), m, deg) <= 1e-9);
  }
}

TEST_CASE("recovery is radii-independent (uniqueness)") {
  auto f = random_poly(3, 16, 991);
  int m = 128;
  auto r1 = decompose_function([&f](Complex z) { return f.eval(z); }, 3, {0.85, 0.92, 0.99}, m, 16);
  auto r2 = decompose_function([&f](Complex z) { return f.eval(z); }, 3, {0.90, 0.97, 1.04}, m, 16);
  double scale = r1.table.max_abs();
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q <= 16; ++q)
      CHECK(std::abs(r1.table.at(p, q) - r2.table.at(p, q)) <= 1e-8 * scale);
}

TEST_CASE("truncation consistency in the sample count") {
  auto f = random_poly(2, 12, 555);
  auto radii = straddle_radii(2);
  auto a = decompose_function([&f](Complex z) { return f.eval(z); }, 2, radii, 64, 12);
  auto b = decompose_function([&f](Complex z) { return f.eval(z); }, 2, radii, 128, 12);
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q <= 12; ++q)
      CHECK(std::abs(a.table.at(p, q) - b.table.at(p, q)) <= 1e-10);
}

TEST_CASE("error paths") {
  auto f = [](Complex) { return Complex(1.0); };
  CHECK_THROWS_AS(decompose_function(f, 2, {0.9, 0.9}, 64, 8), error);   // radii not increasing
  CHECK_THROWS_AS(decompose_function(f, 2, {0.5, 0.9}, 16, 20), error);  // M too small
}

TEST_CASE("kp_extract") {
  NAnalyticPoly p(2);
  p.add_monomial(0, 0, 1.0);
  p.add_monomial(1, 1, 1.0);  // 1 + z zbar
  CHECK(kp_extract(p, 1).coeffs() == std::vector<Complex>{Complex(0.0), Complex(1.0)});

  NAnalyticPoly q(3);
  q.add_monomial(2, 0, 1.0);  // zbar^2
  CHECK(kp_extract(q, 0).is_zero());
  CHECK_THROWS_AS(kp_extract(q, 3), error);

  // components re-evaluate to the function
  auto r = random_poly(4, 8, 31);
  for (int i = 0; i < 100; ++i) {
    double th = 2 * 3.14159265358979 * i / 100.0;
    Complex z = 0.83 * Complex(std::cos(th), std::sin(th));
    Complex acc(0.0);
    Complex zbp(1.0);
    for (int p = 0; p < 4; ++p) {
      acc += kp_extract(r, p).eval(z) * zbp;
      zbp *= std::conj(z);
    }
    CHECK(std::abs(acc - r.eval(z)) < 1e-12);
  }
}

TEST_CASE("default radii follow the spread rule") {
  auto r1 = default_radii(1);
  CHECK(r1 == std::vector<double>{0.95});
  auto r3 = default_radii(3);
  CHECK(r3[0] == doctest::Approx(0.475));
  CHECK(r3[1] == doctest::Approx(0.7125));
  CHECK(r3[2] == doctest::Approx(0.95));
}

TEST_SUITE_END();
