#include "polyagev/corpus.hpp"

#include <cmath>
#include <sstream>

#include "polyagev/errors.hpp"

namespace polyagev {

CoefficientTable CorpusFunction::table() const {
  if (kind == Kind::finite) {
    int n = std::max<int>(1, static_cast<int>(finite_values.size()));
    CoefficientTable t(n, std::max(q_max, 32));
    for (size_t p = 0; p < finite_values.size(); ++p)
      t.set(static_cast<int>(p), 0, Complex(finite_values[p]));
    return t;
  }
  CoefficientTable t(order, q_max);
  for (int p = 0; p < order; ++p) {
    double comp_scale = 1.0 / (p + 1);
    for (int q = 0; q <= q_max; ++q) {
      double a = 0.0;
      switch (kind) {
        case Kind::gevrey:
          a = std::exp(-c * std::pow(static_cast<double>(q), k / (k + 1.0)));
          break;
        case Kind::geometric:
          a = std::pow(r, q);
          break;
        case Kind::polynomial_decay:
          a = std::pow(q + 1.0, -q_exp);
          break;
        case Kind::finite:
          break;
      }
      t.set(p, q, Complex(a * comp_scale));
    }
  }
  return t;
}

CorpusFunction parse_corpus(const std::string& id) {
  CorpusFunction f;
  f.id = id;
  auto colon = id.find(':');
  std::string kind = id.substr(0, colon);
  std::string args = colon == std::string::npos ? "" : id.substr(colon + 1);
  if (kind == "gevrey")
    f.kind = CorpusFunction::Kind::gevrey;
  else if (kind == "geometric")
    f.kind = CorpusFunction::Kind::geometric;
  else if (kind == "polynomial_decay" || kind == "polydecay")
    f.kind = CorpusFunction::Kind::polynomial_decay;
  else if (kind == "finite")
    f.kind = CorpusFunction::Kind::finite;
  else
    throw error(errc::domain, "unknown corpus kind '" + kind + "'");

  if (f.kind == CorpusFunction::Kind::finite) {
    if (args.size() < 2 || args.front() != '[' || args.back() != ']')
      throw error(errc::domain, "finite corpus wants finite:[a0;a1;...]");
    std::istringstream ls(args.substr(1, args.size() - 2));
    std::string tok;
    while (std::getline(ls, tok, ';'))
      if (!tok.empty()) f.finite_values.push_back(std::stod(tok));
    if (f.finite_values.empty()) throw error(errc::domain, "finite corpus needs values");
    return f;
  }

  std::istringstream ls(args);
  std::string kv;
  while (std::getline(ls, kv, ',')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw error(errc::domain, "bad corpus parameter '" + kv + "'");
    std::string key = kv.substr(0, eq);
    double val = std::stod(kv.substr(eq + 1));
    if (key == "c")
      f.c = val;
    else if (key == "k")
      f.k = val;
    else if (key == "r")
      f.r = val;
    else if (key == "q")
      f.q_exp = val;
    else if (key == "N")
      f.order = static_cast<int>(val);
    else if (key == "Q")
      f.q_max = static_cast<int>(val);
    else
      throw error(errc::domain, "unknown corpus parameter '" + key + "'");
  }
  if (f.order < 1 || f.q_max < 8) throw error(errc::domain, "corpus shape out of range");
  if (f.kind == CorpusFunction::Kind::gevrey && (!(f.c > 0.0) || !(f.k > 0.0)))
    throw error(errc::domain, "gevrey corpus needs c > 0, k > 0");
  if (f.kind == CorpusFunction::Kind::geometric && (!(f.r > 0.0) || !(f.r < 1.0)))
    throw error(errc::domain, "geometric corpus needs r in (0,1)");
  return f;
}

}  // namespace polyagev
