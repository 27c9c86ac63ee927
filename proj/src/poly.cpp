#include "polyagev/poly.hpp"

#include <random>

namespace polyagev {

void HoloPoly::trim() {
  while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
}

HoloPoly HoloPoly::monomial(int q, Complex a) {
  if (a == Complex(0.0)) return HoloPoly{};
  std::vector<Complex> c(static_cast<size_t>(q) + 1, Complex(0.0));
  c.back() = a;
  return HoloPoly(std::move(c));
}

LComplex HoloPoly::eval_l(LComplex z) const {
  LComplex acc(0.0L);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * z + LComplex(c_[i]);
  return acc;
}

Complex HoloPoly::eval(Complex z) const {
  LComplex v = eval_l(LComplex(z));
  return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

HoloPoly HoloPoly::derivative() const {
  if (c_.size() <= 1) return HoloPoly{};
  std::vector<Complex> d(c_.size() - 1);
  for (size_t q = 1; q < c_.size(); ++q) d[q - 1] = static_cast<double>(q) * c_[q];
  return HoloPoly(std::move(d));
}

HoloPoly& HoloPoly::operator+=(const HoloPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0.0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

HoloPoly& HoloPoly::operator-=(const HoloPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex(0.0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

HoloPoly& HoloPoly::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    c_.clear();
    return *this;
  }
  for (auto& a : c_) a *= s;
  trim();
  return *this;
}

NAnalyticPoly::NAnalyticPoly(int order) {
  if (order < 1) throw error(errc::domain, "order must be >= 1");
  comp_.resize(static_cast<size_t>(order));
}

NAnalyticPoly::NAnalyticPoly(int order, std::vector<HoloPoly> components) {
  if (order < 1) throw error(errc::domain, "order must be >= 1");
  components.resize(static_cast<size_t>(order));
  comp_ = std::move(components);
}

const HoloPoly& NAnalyticPoly::component(int p) const {
  if (p < 0 || p >= order())
    throw error(errc::index_out_of_range, "component index " + std::to_string(p));
  return comp_[static_cast<size_t>(p)];
}

void NAnalyticPoly::set_component(int p, HoloPoly q) {
  if (p < 0 || p >= order())
    throw error(errc::index_out_of_range, "component index " + std::to_string(p));
  comp_[static_cast<size_t>(p)] = std::move(q);
}

void NAnalyticPoly::add_monomial(int p, int q, Complex a) {
  if (p < 0 || p >= order())
    throw error(errc::index_out_of_range, "component index " + std::to_string(p));
  comp_[static_cast<size_t>(p)] += HoloPoly::monomial(q, a);
}

bool NAnalyticPoly::is_zero() const {
  for (const auto& q : comp_)
    if (!q.is_zero()) return false;
  return true;
}

Degree NAnalyticPoly::degree() const {
  Degree d = Degree::neg_inf();
  for (const auto& q : comp_) d = std::max(d, q.degree());
  return d;
}

LComplex NAnalyticPoly::eval_l(LComplex z) const {
  LComplex zb = std::conj(z);
  LComplex zbp(1.0L);
  LComplex acc(0.0L);
  for (const auto& q : comp_) {
    if (!q.is_zero()) acc += q.eval_l(z) * zbp;
    zbp *= zb;
  }
  return acc;
}

Complex NAnalyticPoly::eval(Complex z) const {
  LComplex v = eval_l(LComplex(z));
  return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

NAnalyticPoly& NAnalyticPoly::operator+=(const NAnalyticPoly& o) {
  if (o.order() > order()) comp_.resize(static_cast<size_t>(o.order()));
  for (int p = 0; p < o.order(); ++p) comp_[static_cast<size_t>(p)] += o.comp_[static_cast<size_t>(p)];
  return *this;
}

NAnalyticPoly& NAnalyticPoly::operator-=(const NAnalyticPoly& o) {
  if (o.order() > order()) comp_.resize(static_cast<size_t>(o.order()));
  for (int p = 0; p < o.order(); ++p) comp_[static_cast<size_t>(p)] -= o.comp_[static_cast<size_t>(p)];
  return *this;
}

NAnalyticPoly& NAnalyticPoly::operator*=(Complex s) {
  for (auto& q : comp_) q *= s;
  return *this;
}

NAnalyticPoly dbar_pow(const NAnalyticPoly& p, int m) {
  if (m < 0) throw error(errc::domain, "m must be >= 0");
  int n = p.order();
  std::vector<HoloPoly> cur;
  cur.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) cur.push_back(p.component(j));
  for (int step = 0; step < m; ++step) {
    std::vector<HoloPoly> next(cur.size() > 1 ? cur.size() - 1 : 1);
    for (size_t j = 1; j < cur.size(); ++j)
      next[j - 1] = Complex(static_cast<double>(j)) * cur[j];
    cur = std::move(next);
  }
  int out_order = static_cast<int>(cur.size());
  return NAnalyticPoly(out_order, std::move(cur));
}

NAnalyticPoly dz_pow(const NAnalyticPoly& p, int m) {
  if (m < 0) throw error(errc::domain, "m must be >= 0");
  std::vector<HoloPoly> cur;
  cur.reserve(static_cast<size_t>(p.order()));
  for (int j = 0; j < p.order(); ++j) cur.push_back(p.component(j));
  for (int step = 0; step < m; ++step)
    for (auto& q : cur) q = q.derivative();
  return NAnalyticPoly(p.order(), std::move(cur));
}

namespace {
// Portable uniform doubles from the raw engine stream.
double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
}  // namespace

NAnalyticPoly random_poly(int order, int max_degree, std::uint64_t seed) {
  if (order < 1 || max_degree < 0) throw error(errc::domain, "random_poly parameters");
  std::mt19937_64 gen(seed);
  NAnalyticPoly out(order);
  for (int p = 0; p < order; ++p) {
    std::vector<Complex> c(static_cast<size_t>(max_degree) + 1);
    for (auto& a : c) {
      double re = 2.0 * u01(gen) - 1.0;
      double im = 2.0 * u01(gen) - 1.0;
      a = Complex(re, im);
    }
    out.set_component(p, HoloPoly(std::move(c)));
  }
  return out;
}

}  // namespace polyagev
