#include "polyagev/table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "polyagev/errors.hpp"

namespace polyagev {

CoefficientTable::CoefficientTable(int order, int q_max) : order_(order), q_max_(q_max) {
  if (order < 1 || q_max < 0) throw error(errc::domain, "table shape");
  a_.assign(static_cast<size_t>(order) * (q_max + 1), Complex(0.0));
}

void CoefficientTable::check(int p, int q) const {
  if (p < 0 || p >= order_ || q < 0 || q > q_max_)
    throw error(errc::index_out_of_range,
                "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) + ")");
}

Complex CoefficientTable::at(int p, int q) const {
  check(p, q);
  return a_[static_cast<size_t>(p) * (q_max_ + 1) + q];
}

void CoefficientTable::set(int p, int q, Complex v) {
  check(p, q);
  a_[static_cast<size_t>(p) * (q_max_ + 1) + q] = v;
}

std::vector<double> CoefficientTable::moduli(int p) const {
  std::vector<double> m(static_cast<size_t>(q_max_) + 1);
  for (int q = 0; q <= q_max_; ++q) m[static_cast<size_t>(q)] = std::abs(at(p, q));
  return m;
}

NAnalyticPoly CoefficientTable::to_poly() const {
  NAnalyticPoly f(order_);
  for (int p = 0; p < order_; ++p) {
    std::vector<Complex> c(static_cast<size_t>(q_max_) + 1);
    for (int q = 0; q <= q_max_; ++q) c[static_cast<size_t>(q)] = at(p, q);
    f.set_component(p, HoloPoly(std::move(c)));
  }
  return f;
}

CoefficientTable CoefficientTable::from_poly(const NAnalyticPoly& f, int q_max) {
  CoefficientTable t(f.order(), q_max);
  for (int p = 0; p < f.order(); ++p) {
    const auto& c = f.component(p).coeffs();
    for (int q = 0; q <= q_max && q < static_cast<int>(c.size()); ++q)
      t.set(p, q, c[static_cast<size_t>(q)]);
  }
  return t;
}

double CoefficientTable::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

void write_coeff_csv(std::ostream& os, const CoefficientTable& t) {
  os << "component,power,re,im\n";
  char buf[96];
  for (int p = 0; p < t.order(); ++p)
    for (int q = 0; q <= t.q_max(); ++q) {
      Complex a = t.at(p, q);
      if (a == Complex(0.0)) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", p, q, a.real(), a.imag());
      os << buf;
    }
}

CoefficientTable read_coeff_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw error(errc::insufficient_data, "empty coefficient CSV");
  struct Row {
    int p, q;
    double re, im;
  };
  std::vector<Row> rows;
  int pmax = 0, qmax = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Row r{};
    std::istringstream ls(line);
    char comma;
    if (!(ls >> r.p >> comma >> r.q >> comma >> r.re >> comma >> r.im))
      throw error(errc::domain, "bad CSV row: " + line);
    if (r.p < 0 || r.q < 0) throw error(errc::domain, "negative index in CSV");
    pmax = std::max(pmax, r.p);
    qmax = std::max(qmax, r.q);
    rows.push_back(r);
  }
  CoefficientTable t(pmax + 1, qmax);
  for (const auto& r : rows) t.set(r.p, r.q, Complex(r.re, r.im));
  return t;
}

void write_coeff_csv_file(const std::string& path, const CoefficientTable& t) {
  std::ofstream os(path);
  if (!os) throw error(errc::domain, "cannot open " + path);
  write_coeff_csv(os, t);
}

CoefficientTable read_coeff_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw error(errc::domain, "cannot open " + path);
  return read_coeff_csv(is);
}

}  // namespace polyagev
