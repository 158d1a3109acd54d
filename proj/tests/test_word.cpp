#include <doctest.h>

#include <algorithm>
#include <set>

#include "cvn/word.hpp"
#include "test_helpers.hpp"

using namespace cvn;
using cvn::testing::random_nontrivial_word;
using cvn::testing::random_word;

namespace {

std::vector<Letter> raw(const std::string& s) {
  std::vector<Letter> out;
  for (char c : s) {
    if (c >= 'a' && c <= 'z')
      out.emplace_back(c - 'a' + 1, 1);
    else
      out.emplace_back(c - 'A' + 1, -1);
  }
  return out;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(Word::reduce(raw("aAb")).str() == "b");
  CHECK(Word::reduce(raw("")).empty());
  CHECK(Word::reduce(raw("abBa")).str() == "aa");
  // nested cancellation
  CHECK(Word::reduce(raw("abBAx")).str() == "x");

  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 3, 12);
    CHECK(Word::reduce(w.letters()) == w);  // idempotent
  }
}

TEST_CASE("concat and inverse") {
  CHECK(concat(Word::parse("ab"), Word::parse("Ba")).str() == "aa");
  CHECK(concat(Word::parse("a"), Word::parse("b")).str() == "ab");
  CHECK(Word::parse("ab").inverse().str() == "BA");
  CHECK(Word::parse("").inverse().empty());
  CHECK(Word::parse("A").inverse().str() == "a");

  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 3, 10);
    CHECK(concat(w, w.inverse()).empty());
    CHECK(w.inverse().inverse() == w);
    CHECK(concat(w, Word()) == w);
  }
}

TEST_CASE("word parsing") {
  CHECK(Word::parse("abAB").str() == "abAB");
  CHECK(Word::parse("").empty());
  CHECK_THROWS_AS(Word::parse("ab1"), WordParseError);
  try {
    Word::parse("ab c");
  } catch (const WordParseError& e) {
    CHECK(e.position == 2);
  }
  try {
    Word::parse("ac", 2);
  } catch (const WordParseError& e) {
    CHECK(e.position == 1);
  }
}

TEST_CASE("cyclic reduction") {
  auto r = cyclic_reduce(Word::parse("baB"));
  CHECK(r.core.str() == "a");
  CHECK(r.conjugator.str() == "b");

  r = cyclic_reduce(Word::parse("abAB"));
  CHECK(r.core.str() == "abAB");
  CHECK(r.conjugator.empty());

  CHECK_THROWS_AS(cyclic_reduce(Word()), std::invalid_argument);

  // reassembly and minimality over random words
  std::mt19937_64 rng(13);
  for (int i = 0; i < 400; ++i) {
    Word w = random_nontrivial_word(rng, 2, 12);
    auto cr = cyclic_reduce(w);
    Word back = concat(cr.conjugator,
                       concat(cr.core.word(), cr.conjugator.inverse()));
    CHECK(back == w);
    CHECK(cr.core.size() <= w.size());
    // the core is cyclically reduced
    if (cr.core.size() >= 2)
      CHECK(cr.core.letters().front() != cr.core.letters().back().inverse());
  }
}

TEST_CASE("canonical conjugacy representative") {
  CHECK(canonical_conjugacy(Word::parse("ba")).str() == "ab");
  CHECK(canonical_conjugacy(Word::parse("baB")).str() == "a");

  // all rotations of the commutator agree
  Word c = Word::parse("abAB");
  std::set<std::string> outputs;
  for (std::size_t s = 0; s < c.size(); ++s) {
    std::vector<Letter> rot;
    for (std::size_t i = 0; i < c.size(); ++i) rot.push_back(c[(s + i) % c.size()]);
    outputs.insert(canonical_conjugacy(Word::reduce(rot)).str());
  }
  CHECK(outputs.size() == 1);
  CHECK(*outputs.begin() == "abAB");

  // invariance under conjugation
  std::mt19937_64 rng(14);
  for (int i = 0; i < 400; ++i) {
    Word u = random_nontrivial_word(rng, 2, 8);
    Word v = random_word(rng, 2, 5);
    Word conj = concat(v, concat(u, v.inverse()));
    if (conj.empty()) continue;
    CHECK(canonical_conjugacy(u) == canonical_conjugacy(conj));
  }
}

TEST_CASE("canonical unoriented representative") {
  CHECK(canonical_unoriented(Word::parse("aB")) ==
        canonical_unoriented(Word::parse("bA")));
  CHECK(canonical_unoriented(Word::parse("a")).str() == "a");
  // [b,a] = [a,b]^-1
  CHECK(canonical_unoriented(Word::parse("abAB")) ==
        canonical_unoriented(Word::parse("baBA")));

  std::mt19937_64 rng(15);
  for (int i = 0; i < 200; ++i) {
    Word u = random_nontrivial_word(rng, 3, 8);
    CHECK(canonical_unoriented(u) == canonical_unoriented(u.inverse()));
  }
}

TEST_CASE("exponent sums") {
  CHECK(Word::parse("abAB").exponent_sum(2) == 0);
  CHECK(Word::parse("ab").exponent_sum(2) == 1);
  CHECK(Word::parse("aBaB").exponent_sum(2) == -2);
}

TEST_CASE("reduced word enumeration counts") {
  CHECK(reduced_words(2, 1).size() == 5);
  CHECK(reduced_words(2, 2).size() == 17);
  CHECK(reduced_words(3, 2).size() == 37);

  // every word exactly once, every word reduced
  auto all = reduced_words(2, 4);
  std::set<std::string> seen;
  for (const Word& w : all) {
    CHECK(Word::reduce(w.letters()) == w);
    CHECK(seen.insert(w.str()).second);
  }
}

TEST_CASE("cyclic word enumeration") {
  auto len1 = cyclic_words(2, 1);
  std::set<std::string> names;
  for (const auto& c : len1) names.insert(c.str());
  CHECK(names == std::set<std::string>{"a", "A", "b", "B"});

  auto len2 = cyclic_words(2, 2);
  std::set<std::string> reps;
  for (const auto& c : len2) reps.insert(c.str());
  CHECK(reps.count("ab") == 1);
  CHECK(reps.count("aB") == 1);
  CHECK(reps.count("aa") == 1);
  CHECK(reps.count("bb") == 1);

  // no class appears twice, and every representative is canonical
  auto len3 = cyclic_words(2, 3);
  std::set<std::string> uniq;
  for (const auto& c : len3) {
    CHECK(c.canonical());
    CHECK(canonical_conjugacy(c.word()) == c);
    CHECK(uniq.insert(c.str()).second);
  }
}
