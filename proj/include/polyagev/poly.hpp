#ifndef POLYAGEV_POLY_HPP
#define POLYAGEV_POLY_HPP

#include <compare>
#include <complex>
#include <cstdint>
#include <vector>

#include "polyagev/errors.hpp"

namespace polyagev {

using Complex = std::complex<double>;
// Internal accumulations run in extended precision; results are rounded to
// double at the interface.
using LComplex = std::complex<long double>;

// Degree of an N-analytic polynomial: a nonnegative integer, or -inf for the
// zero polynomial. The sentinel is order-theoretic, not a floating -inf, and
// compares <= every nonnegative value.
class Degree {
 public:
  static constexpr Degree neg_inf() { return Degree(-1); }
  static constexpr Degree of(int n) { return Degree(n); }
  constexpr bool is_neg_inf() const { return v_ < 0; }
  constexpr int value() const { return v_; }  // -1 when neg_inf
  friend constexpr auto operator<=>(Degree, Degree) = default;

 private:
  explicit constexpr Degree(int v) : v_(v) {}
  int v_;
};

// Holomorphic polynomial, dense coefficients indexed by the power of z.
// Normalized: either empty (the zero polynomial) or last coefficient nonzero.
class HoloPoly {
 public:
  HoloPoly() = default;
  explicit HoloPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  static HoloPoly monomial(int q, Complex a);

  bool is_zero() const { return c_.empty(); }
  Degree degree() const {
    return c_.empty() ? Degree::neg_inf() : Degree::of(static_cast<int>(c_.size()) - 1);
  }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(int q) const {
    return (q >= 0 && q < static_cast<int>(c_.size())) ? c_[q] : Complex(0.0);
  }

  Complex eval(Complex z) const;
  LComplex eval_l(LComplex z) const;

  HoloPoly derivative() const;

  HoloPoly& operator+=(const HoloPoly& o);
  HoloPoly& operator-=(const HoloPoly& o);
  HoloPoly& operator*=(Complex s);
  friend HoloPoly operator+(HoloPoly a, const HoloPoly& b) { return a += b; }
  friend HoloPoly operator-(HoloPoly a, const HoloPoly& b) { return a -= b; }
  friend HoloPoly operator*(Complex s, HoloPoly p) { return p *= s; }
  friend bool operator==(const HoloPoly& a, const HoloPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Complex> c_;
};

// N-analytic polynomial: sum over p < order of component(p)(z) * conj(z)^p.
class NAnalyticPoly {
 public:
  explicit NAnalyticPoly(int order);
  NAnalyticPoly(int order, std::vector<HoloPoly> components);

  int order() const { return static_cast<int>(comp_.size()); }
  const HoloPoly& component(int p) const;
  void set_component(int p, HoloPoly q);
  void add_monomial(int p, int q, Complex a);

  bool is_zero() const;
  Degree degree() const;

  Complex eval(Complex z) const;
  LComplex eval_l(LComplex z) const;

  NAnalyticPoly& operator+=(const NAnalyticPoly& o);
  NAnalyticPoly& operator-=(const NAnalyticPoly& o);
  NAnalyticPoly& operator*=(Complex s);
  friend NAnalyticPoly operator+(NAnalyticPoly a, const NAnalyticPoly& b) { return a += b; }
  friend NAnalyticPoly operator-(NAnalyticPoly a, const NAnalyticPoly& b) { return a -= b; }
  friend bool operator==(const NAnalyticPoly& a, const NAnalyticPoly& b) {
    return a.comp_ == b.comp_;
  }

 private:
  std::vector<HoloPoly> comp_;
};

// Exact symbolic (d/dzbar)^m: shifts components down, (d/dzbar)(Q_p zbar^p) =
// p Q_p zbar^{p-1}. Result order is max(order - m, 1).
NAnalyticPoly dbar_pow(const NAnalyticPoly& p, int m);

// Exact symbolic (d/dz)^m: differentiates each component in place.
NAnalyticPoly dz_pow(const NAnalyticPoly& p, int m);

// Deterministic test-instance generator, coefficients uniform in the complex
// square [-1,1]^2.
NAnalyticPoly random_poly(int order, int max_degree, std::uint64_t seed);

}  // namespace polyagev

#endif
