#ifndef POLYAGEV_TABLE_HPP
#define POLYAGEV_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "polyagev/poly.hpp"

namespace polyagev {

// Per-component Taylor coefficients a_{p,q} of a function in H_N(D),
// truncated at power q_max. p indexes the power of conj(z), q the power of z.
class CoefficientTable {
 public:
  CoefficientTable(int order, int q_max);

  int order() const { return order_; }
  int q_max() const { return q_max_; }
  Complex at(int p, int q) const;
  void set(int p, int q, Complex a);

  // Moduli of one component's coefficients, q = 0..q_max.
  std::vector<double> moduli(int p) const;

  NAnalyticPoly to_poly() const;
  static CoefficientTable from_poly(const NAnalyticPoly& f, int q_max);

  double max_abs() const;

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;

 private:
  void check(int p, int q) const;
  int order_;
  int q_max_;
  std::vector<Complex> a_;  // (q_max+1) per component, row-major in p
};

// Shared coefficient CSV: header `component,power,re,im`, one row per nonzero
// coefficient.
void write_coeff_csv(std::ostream& os, const CoefficientTable& t);
CoefficientTable read_coeff_csv(std::istream& is);
void write_coeff_csv_file(const std::string& path, const CoefficientTable& t);
CoefficientTable read_coeff_csv_file(const std::string& path);

}  // namespace polyagev

#endif
