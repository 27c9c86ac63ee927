#ifndef POLYAGEV_BOUNDS_HPP
#define POLYAGEV_BOUNDS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyagev/poly.hpp"

namespace polyagev {

// One verified inequality instance. holds <=> lhs <= rhs * (1 + 1e-12).
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
};

BoundReport make_report(std::string name,
                        std::vector<std::pair<std::string, double>> params, double lhs,
                        double rhs);

// Dilated disk D_{k,R,n} of radius 1 + R n^{-1/k}.
struct DilatedDiskSpec {
  double k = 1.0;
  double r_scale = 0.0;  // R
  int n = 1;
  double radius() const;
};

// Sampling density for the sup estimators.
struct GridSpec {
  int angles = 1024;
  int radial = 32;
};

// The explicit constant L_m at nodes 1 < s_1 < ... < s_{m-1}:
//   prod_j (s_j^2+1)/(s_j^2-1) * sum_p s_p^{m-1} prod_{j != p} (s_j^2+1)/|s_j^2-s_p^2|.
double lm(std::span<const double> s);

// J_m(r0, r) = L_m at the nodes 1 + j (r-r0)/(m r0), j = 1..m-1, for m >= 2.
// J_1 := 1 (the classical maximum principle has constant 1).
double jm(int m, double r0, double r);

// Proposition estimate: J_m(1+eps/2, 1+eps) <= (m-1) (5m/2)^{2m-2} (1+2/eps)^{2m-2}.
BoundReport check_estm1(int m, double eps);

// sup_{t>=0} t^{l/k} rho^{t/2} = ((2/(e k ln(1/rho)))^{1/k})^l l^{l/k}, with
// the 0^0 = 1 convention at l = 0. The log form stays finite where the value
// overflows a double.
double sup_power_decay(int l, double k, double rho);
double ln_sup_power_decay(int l, double k, double rho);

enum class MaxModVariant { maxp0, maxp1, maxp2 };

// Maximum-modulus verifiers for order-N polyanalytic functions on disks
// centered at `center`:
//   maxp0: ||f||_{disk r0} <= L_N(r_1/r0,..,r_{N-1}/r0) max_p ||f||_{circle r_p}
//   maxp1: ||f||_{disk r0} <= J_N(r0,r) ||f||_{annulus (r0,r)}
//   maxp2: ||K_p f||_{disk r0} <= J_N(r0,r) ||f||_{annulus} / r0^p  (worst p reported)
// interior_radii supplies r_1 < ... < r_{N-1} for maxp0 (default equispaced).
BoundReport check_max_modulus(const NAnalyticPoly& f, Complex center, double r0, double r,
                              MaxModVariant variant, const GridSpec& grid = {},
                              std::span<const double> interior_radii = {});

// Bernstein-Walsh constant (2^{N+1}-1) J_N(1/2, 1).
double bw_constant(int order);

// |P(z)| <= bw_constant(N) ||P||_{disk} |z|^{n+N-1} for degree(P) <= n, |z| > 1.
// Also records whether the tighter constant (2^N - 1) J_N(1/2,1) holds.
BoundReport check_bw(const NAnalyticPoly& p, int n, Complex z, const GridSpec& grid = {});

// Appendix verifiers. Each reports a fitted constant and checks that the
// normalized envelope shows no growth trend over the last decade of its sweep.
BoundReport check_appendix_81(double b, double k, int n_max);
BoundReport check_appendix_82(double b, double r_shell, double k, int l_max,
                              int u_samples = 256, int t_samples = 128);
BoundReport check_appendix_83(double b, double k, int order, int n_max);

// Parameter sweeps used by the CLI and the acceptance suite.
std::vector<BoundReport> sweep_estm1();
std::vector<BoundReport> sweep_max_modulus(int count, std::uint64_t seed, const GridSpec& grid);
std::vector<BoundReport> sweep_bw(int count, std::uint64_t seed, const GridSpec& grid = {});
std::vector<BoundReport> sweep_appendix(int n_max = 10000, int l_max = 10);

}  // namespace polyagev

#endif
