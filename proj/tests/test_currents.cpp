#include <doctest.h>

#include <set>

#include "cvn/currents.hpp"
#include "cvn/experiments.hpp"
#include "test_helpers.hpp"

using namespace cvn;
using cvn::testing::random_nontrivial_word;
using cvn::testing::random_word;

TEST_CASE("counting coordinates") {
  auto sq = CurrentCoords::counting(Word::parse("aa"), 1);
  CHECK(sq.weight(Word::parse("a")) == 2);
  CHECK(sq.weight(Word::parse("A")) == 2);

  auto ab = CurrentCoords::counting(Word::parse("ab"), 1);
  CHECK(ab.weight(Word::parse("a")) == 1);
  CHECK(ab.weight(Word::parse("b")) == 1);

  // wraparound: the pattern is longer than the cyclic word
  auto a2 = CurrentCoords::counting(Word::parse("a"), 2);
  CHECK(a2.weight(Word::parse("aa")) == 1);
  CHECK(a2.weight(Word::parse("AA")) == 1);

  CHECK_THROWS_AS(CurrentCoords::counting(Word(), 2), std::invalid_argument);
}

TEST_CASE("linear structure") {
  auto a1 = CurrentCoords::counting(Word::parse("a"), 1);
  auto sum = add(a1, a1);
  CHECK(sum == CurrentCoords::counting(Word::parse("aa"), 1));  // eta_{g^2} = 2 eta_g

  auto b1 = CurrentCoords::counting(Word::parse("b"), 1, 2);
  auto a1r2 = CurrentCoords::counting(Word::parse("a"), 1, 2);
  CHECK(add(a1r2, b1) == add(b1, a1r2));

  CHECK(scale(a1, 0).zero());
  CHECK(scale(scale(a1, 3), Rational(1, 3)) == a1);

  CHECK_THROWS_AS(add(a1, CurrentCoords::counting(Word::parse("a"), 2)),
                  std::invalid_argument);
}

TEST_CASE("counting current laws hold exactly") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 120; ++i) {
    Word g = random_nontrivial_word(rng, 2, 9);
    int depth = 1 + static_cast<int>(rng() % 4);
    auto mu = CurrentCoords::counting(g, depth, 2);

    // flip symmetry
    for (const auto& [w, r] : mu.entries()) CHECK(mu.weight(w.inverse()) == r);

    // consistency sums
    for (const auto& [w, r] : mu.entries()) {
      if (static_cast<int>(w.size()) >= depth) continue;
      Rational s = 0;
      for (int c = 0; c < 4; ++c) {
        Letter x = Letter::from_code(c);
        if (!w.empty() && w[w.size() - 1] == x.inverse()) continue;
        std::vector<Letter> ext = w.letters();
        ext.push_back(x);
        s += mu.weight(Word::reduce(ext));
      }
      CHECK(s == r);
    }

    // depth-1 positive sum = cyclic length
    CHECK(mu.positive_depth1_sum() ==
          Rational(cyclic_reduce(g).core.size()));

    // inversion and conjugacy invariance
    CHECK(CurrentCoords::counting(g.inverse(), depth, 2) == mu);
    Word h = random_word(rng, 2, 5);
    Word conj = concat(h, concat(g, h.inverse()));
    CHECK(CurrentCoords::counting(conj, depth, 2) == mu);

    // eta_{g^n} = n eta_g
    int n = 2 + static_cast<int>(rng() % 3);
    CHECK(CurrentCoords::counting(g.pow(n), depth, 2) ==
          scale(mu, Rational(n)));
  }
}

TEST_CASE("projectivization and distance") {
  auto a1 = normalize_projective(CurrentCoords::counting(Word::parse("a"), 1, 2));
  auto b1 = normalize_projective(CurrentCoords::counting(Word::parse("b"), 1, 2));
  CHECK(projective_distance(a1, a1) == 0);
  CHECK(projective_distance(a1, b1) == 2);  // disjoint supports at depth 1

  // powers have identical projective coordinates
  std::mt19937_64 rng(52);
  for (int i = 0; i < 60; ++i) {
    Word g = random_nontrivial_word(rng, 2, 7);
    int depth = 1 + static_cast<int>(rng() % 3);
    auto p = normalize_projective(CurrentCoords::counting(g, depth, 2));
    auto q = normalize_projective(CurrentCoords::counting(g.pow(2), depth, 2));
    CHECK(p == q);
    CHECK(projective_distance(p, q) == 0);
  }

  CHECK_THROWS_AS(normalize_projective(scale(
                      CurrentCoords::counting(Word::parse("a"), 1), 0)),
                  std::invalid_argument);
}

TEST_CASE("intersection pairing laws") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    MarkedMetricGraph t = random_marked_graph(2, rng());
    Word g = random_nontrivial_word(rng, 2, 7);
    CHECK(intersection_length(t, g) == t.translation_length(g));
    CHECK(intersection_length(t, g.pow(2)) == 2 * intersection_length(t, g));
    Rational c(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 5));
    CHECK(intersection_length(t.scale(c), g) == c * intersection_length(t, g));
  }
  CHECK_THROWS_AS(intersection_length(rose_a(), Word()),
                  std::invalid_argument);
}

TEST_CASE("iwip iteration converges to Fibonacci frequencies") {
  Automorphism fib({Word::parse("ab"), Word::parse("a")});

  // Exact oracle: phi^n(b) has F(n) a-letters out of F(n+1), so the
  // normalized depth-1 a-weight is exactly F(n)/F(n+1).
  auto rep = iterate_iwip(fib, Word::parse("b"), 20, 1);
  long long f_prev = 0, f_cur = 1;  // F(0), F(1)
  for (int n = 1; n <= 20; ++n) {
    long long next = f_prev + f_cur;
    f_prev = f_cur;
    f_cur = next;
  }
  // after the loop: f_prev = F(20), f_cur = F(21)
  CHECK(rep.coords.back().coords().weight(Word::parse("a")) ==
        Rational(f_prev, f_cur));
  CHECK(rep.converged);
  CHECK(rep.converged_at <= 20);

  // identity: constant sequence
  auto constant = iterate_iwip(Automorphism::identity(2), Word::parse("ab"), 5, 2);
  for (std::size_t i = 1; i < constant.steps.size(); ++i)
    CHECK(constant.steps[i].distance_from_prev == 0);

  // forward and backward limits differ at depth 2
  auto fwd = iterate_iwip(fib, Word::parse("b"), 14, 2);
  auto bwd = iterate_iwip(fib.inverse(), Word::parse("b"), 14, 2);
  CHECK(projective_distance(fwd.coords.back(), bwd.coords.back()) >
        Rational(1, 10));

  // configured cap on word growth
  CHECK_THROWS_AS(iterate_iwip(fib, Word::parse("b"), 30, 1, Rational(1, 1000000), 50),
                  WordLengthCapExceeded);
}

TEST_CASE("coordinate csv dump") {
  std::string csv = coords_csv(CurrentCoords::counting(Word::parse("ab"), 1));
  CHECK(csv == "word,weight\na,1\nA,1\nb,1\nB,1\n");
}

TEST_CASE("weight-zero witness for primitive currents") {
  auto rep = full_support_witness(2, 6);

  // the witness contains every reduced length-2 word
  CHECK(rep.witness.size() == 13);
  std::set<std::string> pairs;
  for (std::size_t i = 0; i + 1 < rep.witness.size(); ++i) {
    std::vector<Letter> p = {rep.witness[i], rep.witness[i + 1]};
    pairs.insert(Word::reduce(p).str());
  }
  CHECK(pairs.size() == 12);

  CHECK(rep.self_weight >= 1);
  CHECK(rep.primitives_checked > 0);
  CHECK(rep.all_zero());
}
