#include <sstream>

#include "doctest.h"
#include "polyagev/corpus.hpp"
#include "polyagev/errors.hpp"
#include "polyagev/table.hpp"

using namespace polyagev;

TEST_SUITE_BEGIN("corpus_io");

TEST_CASE("corpus ids parse with defaults") {
  auto g = parse_corpus("gevrey:c=2,k=0.5,N=3,Q=64");
  CHECK(g.kind == CorpusFunction::Kind::gevrey);
  CHECK(g.c == 2.0);
  CHECK(g.k == 0.5);
  CHECK(g.order == 3);
  CHECK(g.q_max == 64);

  auto d = parse_corpus("gevrey:c=1,k=1");
  CHECK(d.order == 1);
  CHECK(d.q_max == 256);

  auto p = parse_corpus("polynomial_decay:q=2,N=1,Q=64");
  CHECK(p.kind == CorpusFunction::Kind::polynomial_decay);
  CHECK(parse_corpus("polydecay:q=2").kind == CorpusFunction::Kind::polynomial_decay);

  auto f = parse_corpus("finite:[1;1]");
  CHECK(f.finite_values == std::vector<double>{1.0, 1.0});
  auto t = f.table();
  CHECK(t.order() == 2);
  CHECK(t.at(0, 0) == Complex(1.0));
  CHECK(t.at(1, 0) == Complex(1.0));

  CHECK_THROWS_AS(parse_corpus("mystery:x=1"), error);
  CHECK_THROWS_AS(parse_corpus("gevrey:c=-1"), error);
  CHECK_THROWS_AS(parse_corpus("finite:[]"), error);
}

TEST_CASE("corpus generation is deterministic") {
  auto a = parse_corpus("gevrey:c=1,k=1,N=2,Q=128").table();
  auto b = parse_corpus("gevrey:c=1,k=1,N=2,Q=128").table();
  CHECK(a == b);
}

TEST_CASE("coefficient CSV round trip is exact") {
  auto t = CoefficientTable::from_poly(random_poly(3, 17, 321), 17);
  std::stringstream ss;
  write_coeff_csv(ss, t);
  auto back = read_coeff_csv(ss);
  CHECK(back.order() == t.order());
  for (int p = 0; p < t.order(); ++p)
    for (int q = 0; q <= back.q_max() && q <= t.q_max(); ++q)
      CHECK(back.at(p, q) == t.at(p, q));
}

TEST_CASE("CSV rejects malformed rows") {
  std::stringstream ss("component,power,re,im\n0,notanumber,1,2\n");
  CHECK_THROWS_AS(read_coeff_csv(ss), error);
}

TEST_SUITE_END();
