#include "cvn/word.hpp"

#include <algorithm>
#include <cctype>

namespace cvn {

char Letter::to_char() const {
  if (index > 26) throw std::domain_error("no text form for letters beyond z");
  return static_cast<char>((sign > 0 ? 'a' : 'A') + index - 1);
}

Word Word::reduce(const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (const Letter& x : raw) {
    if (!out.empty() && out.back() == x.inverse())
      out.pop_back();
    else
      out.push_back(x);
  }
  return Word(std::move(out));
}

Word Word::parse(std::string_view text, int max_rank) {
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    int idx, sgn;
    if (c >= 'a' && c <= 'z') {
      idx = c - 'a' + 1;
      sgn = 1;
    } else if (c >= 'A' && c <= 'Z') {
      idx = c - 'A' + 1;
      sgn = -1;
    } else {
      throw WordParseError(
          "invalid character '" + std::string(1, c) + "' at position " +
              std::to_string(i),
          i);
    }
    if (idx > max_rank)
      throw WordParseError("letter '" + std::string(1, c) +
                               "' exceeds rank " + std::to_string(max_rank) +
                               " at position " + std::to_string(i),
                           i);
    raw.emplace_back(idx, sgn);
  }
  return reduce(raw);
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& x : out) x = x.inverse();
  return Word(std::move(out));
}

Word Word::pow(int n) const {
  Word base = n < 0 ? inverse() : *this;
  int reps = n < 0 ? -n : n;
  std::vector<Letter> raw;
  raw.reserve(base.size() * reps);
  for (int i = 0; i < reps; ++i)
    raw.insert(raw.end(), base.letters_.begin(), base.letters_.end());
  return reduce(raw);  // copies of w cancel at junctions unless w is cyclically reduced
}

long long Word::exponent_sum(int generator_index) const {
  long long s = 0;
  for (const Letter& x : letters_)
    if (x.index == generator_index) s += x.sign;
  return s;
}

int Word::max_generator() const {
  int m = 0;
  for (const Letter& x : letters_) m = std::max(m, x.index);
  return m;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (const Letter& x : letters_) s += x.to_char();
  return s;
}

Word concat(const Word& u, const Word& v) {
  std::vector<Letter> raw = u.letters_;
  raw.insert(raw.end(), v.letters_.begin(), v.letters_.end());
  return Word::reduce(raw);
}

bool operator<(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    int a = u[i].code(), b = v[i].code();
    if (a != b) return a < b;
  }
  return false;
}

Word CyclicWord::word() const { return Word(letters_); }

std::string CyclicWord::str() const { return word().str(); }

bool operator<(const CyclicWord& u, const CyclicWord& v) {
  return u.word() < v.word();
}

CyclicReduction cyclic_reduce(const Word& u) {
  if (u.empty())
    throw std::invalid_argument("trivial element has no cyclic core");
  const auto& ls = u.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(ls.begin() + lo, ls.begin() + hi);
  std::vector<Letter> conj(ls.begin(), ls.begin() + lo);
  CyclicReduction r;
  r.core = CyclicWord(std::move(core), false);
  r.conjugator = Word::reduce(conj);  // a prefix of a reduced word; already reduced
  return r;
}

CyclicWord canonical_rotation(const CyclicWord& c) {
  const auto& ls = c.letters();
  std::size_t n = ls.size();
  if (n <= 1) return CyclicWord(ls, true);
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      int a = ls[(s + i) % n].code(), b = ls[(best + i) % n].code();
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  std::vector<Letter> rot(n);
  for (std::size_t i = 0; i < n; ++i) rot[i] = ls[(best + i) % n];
  return CyclicWord(std::move(rot), true);
}

CyclicWord canonical_conjugacy(const Word& u) {
  return canonical_rotation(cyclic_reduce(u).core);
}

CyclicWord canonical_conjugacy(const CyclicWord& c) {
  if (c.empty())
    throw std::invalid_argument("trivial element has no cyclic core");
  return canonical_rotation(c);
}

CyclicWord canonical_unoriented(const Word& u) {
  CyclicWord fwd = canonical_conjugacy(u);
  CyclicWord bwd = canonical_conjugacy(u.inverse());
  return bwd < fwd ? bwd : fwd;
}

CyclicWord canonical_unoriented(const CyclicWord& c) {
  return canonical_unoriented(c.word());
}

Word substitute(const Word& v, const std::vector<Word>& images) {
  std::vector<Letter> raw;
  for (const Letter& x : v.letters()) {
    if (x.index > static_cast<int>(images.size()))
      throw std::invalid_argument("substitute: letter exceeds image tuple");
    const Word& img = images[x.index - 1];
    if (x.sign > 0) {
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    } else {
      Word inv = img.inverse();
      raw.insert(raw.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return Word::reduce(raw);
}

namespace {

void enumerate_rec(int rank, int max_len, std::vector<Letter>& prefix,
                   const std::function<void(const Word&)>& visit) {
  if (static_cast<int>(prefix.size()) == max_len) return;
  for (int c = 0; c < 2 * rank; ++c) {
    Letter x = Letter::from_code(c);
    if (!prefix.empty() && prefix.back() == x.inverse()) continue;
    prefix.push_back(x);
    visit(Word::reduce(prefix));  // reduced by construction
    enumerate_rec(rank, max_len, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

void enumerate_reduced_words(int rank, int max_len,
                             const std::function<void(const Word&)>& visit) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  visit(Word());
  std::vector<Letter> prefix;
  enumerate_rec(rank, max_len, prefix, visit);
}

std::vector<Word> reduced_words(int rank, int max_len) {
  std::vector<Word> out;
  enumerate_reduced_words(rank, max_len,
                          [&](const Word& w) { out.push_back(w); });
  return out;
}

std::vector<CyclicWord> cyclic_words(int rank, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  std::vector<CyclicWord> out;
  enumerate_reduced_words(rank, max_len, [&](const Word& w) {
    if (w.empty()) return;
    if (w[0] == w[w.size() - 1].inverse()) return;  // not cyclically reduced
    CyclicWord c = canonical_conjugacy(w);
    if (c.word() == w) out.push_back(c);
  });
  return out;
}

}  // namespace cvn
