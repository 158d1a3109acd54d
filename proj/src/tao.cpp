#include "cvn/tao.hpp"

#include <cstdlib>
#include <variant>

#include "cvn/automorphism.hpp"

namespace cvn {

namespace {

// Syllables of the free product Z^2 * Z: a Z^2 syllable a^p e^q and an
// f-power syllable f^m.
struct Z2Syllable {
  long long a = 0, e = 0;
};
struct FSyllable {
  long long f = 0;
};
using Syllable = std::variant<Z2Syllable, FSyllable>;

bool trivial(const Syllable& s) {
  if (auto* z = std::get_if<Z2Syllable>(&s)) return z->a == 0 && z->e == 0;
  return std::get<FSyllable>(s).f == 0;
}

bool merge(Syllable& into, const Syllable& next) {
  if (auto* z = std::get_if<Z2Syllable>(&into)) {
    if (auto* zn = std::get_if<Z2Syllable>(&next)) {
      z->a += zn->a;
      z->e += zn->e;
      return true;
    }
    return false;
  }
  if (auto* fn = std::get_if<FSyllable>(&next)) {
    std::get<FSyllable>(into).f += fn->f;
    return true;
  }
  return false;
}

// Free-product reduction: merge adjacent same-factor syllables and drop
// trivial ones until stable, then do the same across the cyclic wrap.
std::vector<Syllable> cyclic_normal_form(std::vector<Syllable> sylls) {
  auto linear_pass = [](std::vector<Syllable>& v) {
    std::vector<Syllable> out;
    for (const Syllable& s : v) {
      if (trivial(s)) continue;
      if (!out.empty() && merge(out.back(), s)) {
        if (trivial(out.back())) out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    v = std::move(out);
  };
  linear_pass(sylls);
  for (;;) {
    if (sylls.size() < 2) break;
    Syllable& first = sylls.front();
    Syllable last = sylls.back();
    if (!merge(first, last)) break;
    sylls.pop_back();
    if (trivial(sylls.front())) sylls.erase(sylls.begin());
    linear_pass(sylls);
  }
  return sylls;
}

}  // namespace

Rational tao_length(const TaoTreePoint& tree, const Word& w) {
  if (w.max_generator() > 2)
    throw std::invalid_argument("tao_length is defined on F(a,b)");
  std::vector<Syllable> sylls;
  for (const Letter& x : w.letters()) {
    if (x.index == 1) {
      sylls.push_back(Z2Syllable{x.sign, 0});
    } else if (x.sign > 0) {  // b = e f^-1
      sylls.push_back(Z2Syllable{0, 1});
      sylls.push_back(FSyllable{-1});
    } else {  // b^-1 = f e^-1
      sylls.push_back(FSyllable{1});
      sylls.push_back(Z2Syllable{0, -1});
    }
  }
  sylls = cyclic_normal_form(std::move(sylls));

  long long e_count = 0, f_count = 0;
  for (const Syllable& s : sylls) {
    if (auto* z = std::get_if<Z2Syllable>(&s))
      e_count += std::llabs(z->e);
    else
      f_count += std::llabs(std::get<FSyllable>(s).f);
  }
  return tree.t * e_count + (Rational(1) - tree.t) * f_count;
}

TaoScanReport tao_primitive_scan(int max_len,
                                 const std::vector<Rational>& t_samples) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (t_samples.empty()) throw std::invalid_argument("no t samples");
  TaoScanReport rep;
  rep.samples = t_samples;
  std::vector<TaoTreePoint> trees;
  for (const Rational& t : t_samples) trees.emplace_back(t);

  for (const CyclicWord& c : cyclic_words(2, max_len)) {
    Word w = c.word();
    if (!is_primitive(w, 2)) continue;
    ++rep.primitives_checked;
    Rational first = tao_length(trees.front(), w);
    bool constant = true;
    for (std::size_t i = 1; i < trees.size(); ++i)
      if (tao_length(trees[i], w) != first) constant = false;
    if (constant)
      rep.rows.push_back({c, first});
    else
      rep.violations.push_back(c);
  }
  return rep;
}

}  // namespace cvn
