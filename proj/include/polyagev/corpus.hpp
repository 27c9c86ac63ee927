#ifndef POLYAGEV_CORPUS_HPP
#define POLYAGEV_CORPUS_HPP

#include <string>

#include "polyagev/table.hpp"

namespace polyagev {

// Built-in test-function corpus, addressed by mini-expression ids:
//   gevrey:c=1,k=1,N=2,Q=512        a_{p,q} = exp(-c q^{k/(k+1)}) / (p+1)
//   geometric:r=0.5,N=1,Q=64        a_{p,q} = r^q / (p+1)
//   polynomial_decay:q=1,N=1,Q=256  a_{p,s} = (s+1)^{-q} / (p+1)
//   finite:[a0;a1;...]              f = sum_p a_p zbar^p
// Component scaling keeps distinct components distinguishable while sharing
// the generator's decay profile.
struct CorpusFunction {
  enum class Kind { gevrey, geometric, polynomial_decay, finite };
  std::string id;
  Kind kind = Kind::gevrey;
  int order = 1;
  int q_max = 256;
  double c = 1.0;    // gevrey rate
  double k = 1.0;    // gevrey exponent
  double r = 0.5;    // geometric ratio
  double q_exp = 1.0;  // polynomial decay exponent
  std::vector<double> finite_values;

  CoefficientTable table() const;
};

CorpusFunction parse_corpus(const std::string& id);

}  // namespace polyagev

#endif
