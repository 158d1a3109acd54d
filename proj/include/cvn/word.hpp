#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvn {

/// A generator of F_N or its inverse. Letters are totally ordered
/// a_1 < a_1^-1 < a_2 < a_2^-1 < ... which fixes all canonical forms.
struct Letter {
  int index = 1;  // 1-based generator index
  int sign = 1;   // +1 or -1

  Letter() = default;
  Letter(int idx, int sgn) : index(idx), sign(sgn) {
    if (idx < 1 || (sgn != 1 && sgn != -1))
      throw std::invalid_argument("bad letter");
  }

  int code() const { return 2 * (index - 1) + (sign < 0 ? 1 : 0); }
  static Letter from_code(int c) { return Letter(c / 2 + 1, (c % 2) ? -1 : 1); }

  Letter inverse() const { return Letter(index, -sign); }

  // Text form: 'a'..'z' for generators 1..26, 'A'..'Z' for inverses.
  char to_char() const;

  friend bool operator==(const Letter& x, const Letter& y) {
    return x.index == y.index && x.sign == y.sign;
  }
  friend bool operator!=(const Letter& x, const Letter& y) { return !(x == y); }
  friend bool operator<(const Letter& x, const Letter& y) {
    return x.code() < y.code();
  }
};

/// Parse failure; `position` is the offset of the first invalid character.
struct WordParseError : std::invalid_argument {
  std::size_t position;
  WordParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg), position(pos) {}
};

/// A freely reduced word over the generators; the empty word is the identity.
/// Words are immutable values.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(const std::vector<Letter>& raw);

  /// Parses the compact syntax (lowercase = generator, uppercase = inverse).
  /// Letters beyond `max_rank` are rejected.
  static Word parse(std::string_view text, int max_rank = 26);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word pow(int n) const;

  /// Signed count of occurrences of generator i.
  long long exponent_sum(int generator_index) const;

  /// Largest generator index present (0 for the identity).
  int max_generator() const;

  std::string str() const;

  friend Word concat(const Word& u, const Word& v);

  friend bool operator==(const Word& u, const Word& v) {
    return u.letters_ == v.letters_;
  }
  friend bool operator!=(const Word& u, const Word& v) { return !(u == v); }
  /// Shortlex order (length first, then letter order).
  friend bool operator<(const Word& u, const Word& v);

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;

  friend class CyclicWord;
  friend Word substitute(const Word&, const std::vector<Word>&);
};

struct CyclicReduction;

/// A cyclically reduced word, understood up to rotation. When `canonical()`
/// the stored rotation is the lexicographically least one.
class CyclicWord {
 public:
  CyclicWord() = default;

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& at(std::size_t i) const { return letters_[i % letters_.size()]; }
  bool canonical() const { return canonical_; }

  /// The stored rotation as a plain word.
  Word word() const;
  std::string str() const;

  friend bool operator==(const CyclicWord& u, const CyclicWord& v) {
    return u.letters_ == v.letters_;
  }
  friend bool operator!=(const CyclicWord& u, const CyclicWord& v) {
    return !(u == v);
  }
  friend bool operator<(const CyclicWord& u, const CyclicWord& v);

 private:
  CyclicWord(std::vector<Letter> c, bool canon)
      : letters_(std::move(c)), canonical_(canon) {}
  std::vector<Letter> letters_;
  bool canonical_ = false;

  friend struct CyclicReduction;
  friend CyclicReduction cyclic_reduce(const Word& u);
  friend CyclicWord canonical_rotation(const CyclicWord& c);
};

/// u = conjugator * core * conjugator^-1, with the core cyclically reduced
/// and of minimal length in the conjugacy class of u.
struct CyclicReduction {
  CyclicWord core;
  Word conjugator;
};

/// Throws std::invalid_argument("trivial element has no cyclic core") on the
/// identity.
CyclicReduction cyclic_reduce(const Word& u);

/// Least rotation of a cyclically reduced word.
CyclicWord canonical_rotation(const CyclicWord& c);

/// Canonical representative of the conjugacy class of u.
CyclicWord canonical_conjugacy(const Word& u);
CyclicWord canonical_conjugacy(const CyclicWord& c);

/// Canonical representative of {[u], [u^-1]}; identifies a class with its
/// inverse, which is the right key for curves and counting currents.
CyclicWord canonical_unoriented(const Word& u);
CyclicWord canonical_unoriented(const CyclicWord& c);

/// substitute(v, images): replace letter i of v by images[i-1], reduce.
Word substitute(const Word& v, const std::vector<Word>& images);

/// All freely reduced words of length <= max_len, identity included,
/// in depth-first lexicographic order. Count is
/// 1 + sum_{l=1..L} 2N(2N-1)^(l-1).
void enumerate_reduced_words(int rank, int max_len,
                             const std::function<void(const Word&)>& visit);
std::vector<Word> reduced_words(int rank, int max_len);

/// One canonical representative per conjugacy class of cyclic length
/// in [1, max_len].
std::vector<CyclicWord> cyclic_words(int rank, int max_len);

}  // namespace cvn
