#ifndef POLYAGEV_EXPANSION_HPP
#define POLYAGEV_EXPANSION_HPP

#include <optional>
#include <vector>

#include "polyagev/gevrey.hpp"
#include "polyagev/table.hpp"

namespace polyagev {

// Half-open power interval [lo, hi) carried by one expansion block.
struct BlockRange {
  long long lo = 0;
  long long hi = 0;
  bool empty() const { return hi <= lo; }
};

// Left endpoint of block n: ceil(c n^{(k+1)/k}) with c = 2^{-(k+1)/k}, i.e.
// ceil((n/2)^{(k+1)/k}), snapping values within 1e-9 of an integer. Blocks
// partition the naturals by construction: block n is [lo(n), lo(n+1)).
long long block_boundary(int n, double k);
BlockRange block_range(int n, double k);

// Geometric-norm certificate on the dilated disks D_{k,R,max(n,1)}.
struct NormCertificate {
  double r_scale = 0.0;  // R
  double c_fit = 0.0;    // C from the regression
  double delta = 0.0;
  double residual = 0.0;   // one-sided, over the fitted block range
  double curvature = 0.0;  // quadratic coefficient of ln m_n against n
  double c_env = 0.0;          // intercept lifted so m_n <= c_env delta^n for all n
  int fit_first = 0;       // first block index used by the regression
  bool trivial = false;    // finite table: zero norm tail, no regression run
  std::vector<double> norms;  // measured m_n per block
};

struct BlockExpansion {
  double k = 1.0;
  int order = 1;
  int q_max = 0;
  std::vector<NAnalyticPoly> blocks;  // indexed by n >= 0
  std::vector<BlockRange> ranges;
  std::optional<NormCertificate> cert;

  int count() const { return static_cast<int>(blocks.size()); }
  // Blocks whose power interval was cut by the table truncation.
  bool truncated(int n) const { return ranges[static_cast<size_t>(n)].hi > q_max + 1; }
};

// Collects, for every component p, the monomials a_{p,q} z^q zbar^p with q in
// block_range(n, k). Empty ranges stay as zero blocks so indices line up.
BlockExpansion build_blocks(const CoefficientTable& table, double k);

// Exact inverse of build_blocks (partition round trip).
CoefficientTable reassemble(const BlockExpansion& exp);

// Measures m_n = sampled sup of |blocks[n]| over the closed dilated disk
// (boundary circle plus 8 interior radii) and fits ln m_n ~ ln C + n ln delta.
// The regression skips the first min(16, max(1, full/8)) blocks (the
// asymptotic envelope is what the theorem constrains) and any block cut by
// truncation. Throws NO_GEOMETRIC_DECAY when delta >= 1 or the one-sided
// residual exceeds 0.3.
BlockExpansion certify_norms(BlockExpansion exp, double r_scale, int angles = 1024);

// Default R = beta/4 with beta the fitted decay rate of the input table
// (smallest over components).
double default_r_scale(const CoefficientTable& table, double k);

struct SynthesisResult {
  Complex value;
  double tail_bound = 0.0;  // c_env delta^{n_terms+1} / (1 - delta)
};

// Partial sum of blocks 0..n_terms with the certified geometric tail bound.
SynthesisResult synthesize(const BlockExpansion& exp, Complex z, int n_terms);

struct ConverseReport {
  bool component_chain_ok = false;  // maxp2-route bound holds for every block
  double fitted_q = 0.0;            // envelope of comp norms against sqrt(delta)^n
  MembershipReport membership;
  std::vector<double> component_betas;
  bool accepted = false;
};

// The converse direction at desk scale: per-block component norms on
// D_{k,R/2,n} must obey the maxp2 chain against the certified block norms;
// then the summed limit is re-decomposed on circles and its components must
// pass the coefficient-decay membership test.
ConverseReport converse_verify(const BlockExpansion& exp, double k);

}  // namespace polyagev

#endif
