#include <doctest.h>

#include "cvn/automorphism.hpp"
#include "cvn/tao.hpp"
#include "test_helpers.hpp"

using namespace cvn;
using cvn::testing::random_nontrivial_word;
using cvn::testing::random_word;

namespace {

const std::vector<Rational> kSamples = {Rational(1, 4), Rational(1, 3),
                                        Rational(1, 2), Rational(2, 3)};

// conjugate to a power of a?
bool conjugate_power_of_a(const Word& w) {
  if (w.empty()) return true;
  CyclicWord c = canonical_conjugacy(w);
  for (const Letter& x : c.letters())
    if (x.index != 1 || x.sign != c.letters().front().sign) return false;
  return true;
}

}  // namespace

TEST_CASE("tao lengths on the generators") {
  for (const Rational& t : kSamples) {
    TaoTreePoint tree{t};
    CHECK(tao_length(tree, Word::parse("b")) == 1);
    CHECK(tao_length(tree, Word::parse("a")) == 0);
    CHECK(tao_length(tree, Word()) == 0);
    // the commutator separates the family
    CHECK(tao_length(tree, Word::parse("abAB")) == 2 - 2 * t);
    CHECK(tao_length(tree, Word::parse("ab")) == 1);
    CHECK(tao_length(tree, Word::parse("aB")) == 1);
  }
  CHECK_THROWS_AS(TaoTreePoint{Rational(0)}, std::invalid_argument);
  CHECK_THROWS_AS(TaoTreePoint{Rational(1)}, std::invalid_argument);
  CHECK_THROWS_AS(TaoTreePoint{Rational(3, 2)}, std::invalid_argument);
}

TEST_CASE("tao length is a translation length") {
  std::mt19937_64 rng(61);
  for (const Rational& ts : kSamples) {
    TaoTreePoint tree{ts};
    for (int i = 0; i < 80; ++i) {
      Word w = random_nontrivial_word(rng, 2, 8);
      Word h = random_word(rng, 2, 5);
      Word conj = concat(h, concat(w, h.inverse()));
      CHECK(tao_length(tree, w) == tao_length(tree, conj));
      int n = 1 + static_cast<int>(rng() % 4);
      CHECK(tao_length(tree, w.pow(n)) == n * tao_length(tree, w));
      CHECK(tao_length(tree, w) >= 0);
    }
  }
}

TEST_CASE("same-sign words have length |exponent sum on b|") {
  std::mt19937_64 rng(62);
  TaoTreePoint tree{Rational(1, 3)};
  for (int i = 0; i < 200; ++i) {
    // random cyclically ordered word with all b's positive
    std::vector<Letter> raw;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      if (rng() % 2)
        raw.emplace_back(1, rng() % 2 ? 1 : -1);
      else
        raw.emplace_back(2, 1);
    }
    Word w = Word::reduce(raw);
    if (w.empty()) continue;
    long long eb = w.exponent_sum(2);
    // the reduction may cancel a-letters only; all b's share one sign
    CHECK(tao_length(tree, w) == Rational(eb < 0 ? -eb : eb));
  }
}

TEST_CASE("zero set is exactly the conjugates of powers of a") {
  TaoTreePoint tree{Rational(1, 2)};
  for (const Word& w : reduced_words(2, 5)) {
    if (w.empty()) continue;
    CHECK((tao_length(tree, w) == 0) == conjugate_power_of_a(w));
  }
}

TEST_CASE("primitive lengths do not vary with t") {
  auto rep = tao_primitive_scan(5, kSamples);
  CHECK(rep.all_constant());
  CHECK(rep.primitives_checked > 0);
  // ab has length 1 in every sample
  for (const auto& row : rep.rows) {
    if (row.primitive.str() == "ab") CHECK(row.length == 1);
    if (row.primitive.str() == "a") CHECK(row.length == 0);
  }
}
