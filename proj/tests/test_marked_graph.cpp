#include <doctest.h>

#include <algorithm>

#include "cvn/experiments.hpp"
#include "cvn/marked_graph.hpp"
#include "test_helpers.hpp"

using namespace cvn;
using cvn::testing::random_nontrivial_word;
using cvn::testing::random_word;

namespace {

MarkedMetricGraph theta_graph() {
  std::vector<MarkedMetricGraph::Edge> edges;
  edges.push_back({"e0", 0, 1, Rational(1), true});
  edges.push_back({"e1", 0, 1, Rational(1), false});
  edges.push_back({"e2", 0, 1, Rational(1), false});
  return MarkedMetricGraph(2, {"v0", "v1"}, std::move(edges),
                           {Word::parse("a"), Word::parse("b")});
}

}  // namespace

TEST_CASE("validation diagnostics") {
  CHECK(rose_a().valid());
  CHECK(theta_graph().valid());

  // a degree-2 vertex: subdivided rose petal
  std::vector<MarkedMetricGraph::Edge> edges;
  edges.push_back({"e0", 0, 1, Rational(1), true});
  edges.push_back({"e1", 1, 0, Rational(1), false});
  edges.push_back({"e2", 0, 0, Rational(1), false});
  MarkedMetricGraph sub(2, {"v0", "v1"}, std::move(edges),
                        {Word::parse("a"), Word::parse("b")});
  bool found = false;
  for (const auto& d : sub.validate())
    if (d.find("degree-2") != std::string::npos) found = true;
  CHECK(found);

  // marking that is not an isomorphism
  std::vector<MarkedMetricGraph::Edge> rose_edges;
  rose_edges.push_back({"e0", 0, 0, Rational(1), false});
  rose_edges.push_back({"e1", 0, 0, Rational(1), false});
  MarkedMetricGraph bad(2, {"v0"}, std::move(rose_edges),
                        {Word::parse("a"), Word::parse("a")});
  found = false;
  for (const auto& d : bad.validate())
    if (d.find("marking not an isomorphism") != std::string::npos) found = true;
  CHECK(found);

  // Betti number mismatch
  std::vector<MarkedMetricGraph::Edge> one;
  one.push_back({"e0", 0, 0, Rational(1), false});
  MarkedMetricGraph betti(2, {"v0"}, std::move(one), {Word::parse("a")});
  CHECK_FALSE(betti.valid());
}

TEST_CASE("circuit_to_word") {
  MarkedMetricGraph rose = rose_a();
  // each petal gives its basis word's class
  CHECK(rose.circuit_to_word(rose.fundamental_circuit(0)).str() == "a");
  CHECK(rose.circuit_to_word(rose.fundamental_circuit(1)).str() == "b");

  // theta: circuit e1 e2^-1 reads u1 u2^-1
  MarkedMetricGraph th = theta_graph();
  EdgeCircuit c{{EdgeCircuit::forward(1), EdgeCircuit::backward(2)}};
  CHECK(th.circuit_to_word(c) == canonical_conjugacy(Word::parse("aB")));

  // non-immersed circuit rejected
  EdgeCircuit bad{{EdgeCircuit::forward(1), EdgeCircuit::backward(1)}};
  CHECK_THROWS_AS(th.circuit_to_word(bad), std::invalid_argument);
  // non-closed circuit rejected
  EdgeCircuit open{{EdgeCircuit::forward(1)}};
  CHECK_THROWS_AS(th.circuit_to_word(open), std::invalid_argument);
}

TEST_CASE("translation lengths on the marked roses") {
  MarkedMetricGraph ta = rose_a();
  MarkedMetricGraph tb = rose_ab();

  CHECK(ta.translation_length(Word::parse("abAB")) == 4);
  CHECK(ta.translation_length(Word::parse("a")) == 1);
  CHECK(ta.translation_length(Word()) == 0);
  CHECK(tb.translation_length(Word::parse("b")) == 2);
  CHECK(tb.translation_length(Word::parse("abAB")) == 4);
  CHECK(tb.translation_length(Word::parse("ab")) == 1);
  CHECK(tb.translation_length(Word::parse("aB")) == 3);

  // lengths only see the conjugacy class, and scale on powers
  std::mt19937_64 rng(31);
  for (int i = 0; i < 150; ++i) {
    Word g = random_nontrivial_word(rng, 2, 8);
    Word h = random_word(rng, 2, 5);
    Word conj = concat(h, concat(g, h.inverse()));
    CHECK(ta.translation_length(g) == ta.translation_length(conj));
    CHECK(tb.translation_length(g) == tb.translation_length(conj));
    int n = 1 + static_cast<int>(rng() % 4);
    CHECK(tb.translation_length(g.pow(n)) == n * tb.translation_length(g));
    CHECK(tb.translation_length(g) > 0);
  }
}

TEST_CASE("volume, scaling, normalization") {
  MarkedMetricGraph ta = rose_a();
  CHECK(ta.volume() == 2);
  MarkedMetricGraph half = ta.normalize_covolume();
  CHECK(half.volume() == 1);
  CHECK(half.edges()[0].length == Rational(1, 2));

  MarkedMetricGraph doubled = ta.scale(2);
  CHECK(doubled.translation_length(Word::parse("a")) ==
        2 * ta.translation_length(Word::parse("a")));
  CHECK_THROWS_AS(ta.scale(0), std::invalid_argument);

  std::mt19937_64 rng(32);
  for (int i = 0; i < 50; ++i) {
    Word g = random_nontrivial_word(rng, 2, 6);
    Rational c(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 5));
    CHECK(ta.scale(c).translation_length(g) == c * ta.translation_length(g));
  }
}

TEST_CASE("the right action on markings") {
  MarkedMetricGraph ta = rose_a();
  CHECK(equal_in_cv(ta.act(Automorphism::identity(2)), ta));

  // defining identity, exact rationals
  std::mt19937_64 rng(33);
  const auto gens = whitehead_generators(2);
  for (int i = 0; i < 100; ++i) {
    Automorphism phi = compose(gens[rng() % gens.size()],
                               gens[rng() % gens.size()]);
    Word g = random_nontrivial_word(rng, 2, 7);
    MarkedMetricGraph t = random_marked_graph(2, rng());
    CHECK(t.act(phi).translation_length(g) ==
          t.translation_length(phi.apply(g)));
  }

  // action composition order pinned by the defining identity
  for (int i = 0; i < 20; ++i) {
    Automorphism phi = gens[rng() % gens.size()];
    Automorphism psi = gens[rng() % gens.size()];
    MarkedMetricGraph t = random_marked_graph(2, rng());
    MarkedMetricGraph lhs = t.act(phi).act(psi);
    MarkedMetricGraph rhs = t.act(compose(phi, psi));
    Word g = random_nontrivial_word(rng, 2, 6);
    CHECK(lhs.translation_length(g) == rhs.translation_length(g));
    CHECK(equal_in_cv(lhs, rhs));
  }
}

TEST_CASE("equality in cv_N") {
  MarkedMetricGraph ta = rose_a();
  MarkedMetricGraph tb = rose_ab();

  CHECK(equal_in_cv(ta, ta));
  CHECK_FALSE(equal_in_cv(ta, tb));

  // inner automorphisms act trivially
  Automorphism inner({Word::parse("baB"), Word::parse("b")});
  CHECK(is_inner(inner).has_value());
  CHECK(equal_in_cv(ta, ta.act(inner)));
  MarkedMetricGraph th = theta_graph();
  CHECK(equal_in_cv(th, th.act(inner)));

  // symmetric on generated samples
  std::mt19937_64 rng(34);
  for (int i = 0; i < 15; ++i) {
    MarkedMetricGraph g = random_marked_graph(2, rng());
    MarkedMetricGraph h = random_marked_graph(2, rng());
    CHECK(equal_in_cv(g, g));
    CHECK(equal_in_cv(g, h) == equal_in_cv(h, g));
  }

  // sound direction: equal points have equal length functions (spot check)
  for (int i = 0; i < 3; ++i) {
    MarkedMetricGraph g = random_marked_graph(2, 100 + i);
    MarkedMetricGraph h = g.act(inner);
    REQUIRE(equal_in_cv(g, h));
    for (const CyclicWord& c : cyclic_words(2, 8)) {
      if (g.translation_length(c.word()) != h.translation_length(c.word())) {
        CHECK(false);
        break;
      }
    }
  }

  CHECK_THROWS_AS(equal_in_cv(ta, random_marked_graph(3, 1)),
                  std::invalid_argument);

  // the same point presented with permuted petals and basis words
  std::vector<MarkedMetricGraph::Edge> g_edges, h_edges;
  g_edges.push_back({"e0", 0, 0, Rational(1), false});
  g_edges.push_back({"e1", 0, 0, Rational(2), false});
  h_edges.push_back({"e0", 0, 0, Rational(2), false});
  h_edges.push_back({"e1", 0, 0, Rational(1), false});
  MarkedMetricGraph g12(2, {"v0"}, std::move(g_edges),
                        {Word::parse("a"), Word::parse("b")});
  MarkedMetricGraph h21(2, {"v0"}, std::move(h_edges),
                        {Word::parse("b"), Word::parse("a")});
  CHECK(g12.translation_length(Word::parse("a")) ==
        h21.translation_length(Word::parse("a")));
  CHECK(g12.translation_length(Word::parse("b")) ==
        h21.translation_length(Word::parse("b")));
  CHECK(equal_in_cv(g12, h21));
  // and with mismatched lengths they differ
  MarkedMetricGraph h12(2, {"v0"},
                        {{"e0", 0, 0, Rational(1), false},
                         {"e1", 0, 0, Rational(2), false}},
                        {Word::parse("b"), Word::parse("a")});
  CHECK_FALSE(equal_in_cv(g12, h12));
}

TEST_CASE("random marked graphs") {
  // determinism
  CHECK(random_marked_graph(2, 7).to_json() ==
        random_marked_graph(2, 7).to_json());
  CHECK(random_marked_graph(3, 7).to_json() ==
        random_marked_graph(3, 7).to_json());

  // contract: always valid
  for (std::uint64_t s = 0; s < 40; ++s) {
    CHECK(random_marked_graph(2, s).valid());
    CHECK(random_marked_graph(3, s).valid());
  }

  // different seeds give metrically different points (statistically)
  int distinct = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    if (!equal_in_cv(random_marked_graph(2, 2 * s),
                     random_marked_graph(2, 2 * s + 1)))
      ++distinct;
  }
  CHECK(distinct >= 8);
}

TEST_CASE("graph json round trip") {
  for (std::uint64_t s : {0ull, 1ull, 2ull, 17ull}) {
    MarkedMetricGraph g = random_marked_graph(2, s);
    std::string once = g.to_json();
    std::string twice = MarkedMetricGraph::from_json(once).to_json();
    CHECK(once == twice);  // bit-stable
  }
  CHECK_THROWS_AS(MarkedMetricGraph::from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(MarkedMetricGraph::from_json("not json"),
                  std::invalid_argument);
}

TEST_CASE("graph catalog shapes") {
  for (int rank : {2, 3}) {
    for (const auto& entry : graph_catalog(rank)) {
      INFO(entry.name);
      CHECK(entry.graph.valid());
      CHECK(entry.graph.rank() == rank);
    }
  }
  CHECK(graph_catalog(2).size() == 3);
  CHECK(graph_catalog(3).size() == 6);
}
