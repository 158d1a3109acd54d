#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvn/word.hpp"

namespace cvn {

struct NotABasisError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Result of Stallings folding on the wedge of a word tuple.
/// When the tuple is a basis, `expressions[i]` writes a_{i+1} over the tuple:
/// substituting words[j] for letter j in expressions[i] gives a_{i+1}.
struct FoldOutcome {
  bool is_basis = false;
  std::vector<Word> expressions;
};

/// Decides whether an N-tuple of words is a free basis of F_N by folding the
/// wedge of labeled loops until immersed. The fold sequence carries a second
/// labeling by tuple symbols, so a positive answer comes with the change of
/// basis needed for inversion.
FoldOutcome fold_basis_check(const std::vector<Word>& words);

/// Writes g over the given free basis; letter j of the result stands for
/// basis[j-1]. Throws NotABasisError when the tuple is not a basis.
Word rewrite_in_basis(const Word& g, const std::vector<Word>& basis);

/// An automorphism of F_N, stored as the generator images together with the
/// images under the inverse. Validity (the images form a free basis) is
/// checked at construction, so live values can be trusted downstream.
/// Immutable; safe to share across threads.
class Automorphism {
 public:
  /// Throws NotABasisError if the images are not a free basis.
  explicit Automorphism(std::vector<Word> images);

  static Automorphism identity(int rank);
  static std::optional<Automorphism> try_make(std::vector<Word> images);

  /// Parses N whitespace-separated image words, e.g. "ab a".
  static Automorphism parse(std::string_view text);

  int rank() const { return static_cast<int>(images_.size()); }
  const Word& image(int generator_index) const {
    return images_.at(generator_index - 1);
  }
  const Word& inverse_image(int generator_index) const {
    return inverse_images_.at(generator_index - 1);
  }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const { return substitute(w, images_); }
  Word apply_inverse(const Word& w) const {
    return substitute(w, inverse_images_);
  }

  Automorphism inverse() const;

  std::string str() const;

  friend Automorphism compose(const Automorphism& f, const Automorphism& g);

  friend bool operator==(const Automorphism& f, const Automorphism& g) {
    return f.images_ == g.images_;
  }
  friend bool operator!=(const Automorphism& f, const Automorphism& g) {
    return !(f == g);
  }

 private:
  struct trusted_t {};
  Automorphism(std::vector<Word> images, std::vector<Word> inverse_images,
               trusted_t)
      : images_(std::move(images)), inverse_images_(std::move(inverse_images)) {}

  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

/// A Whitehead automorphism: either a signed permutation of the letters
/// (type I) or a multiplier move (type II) fixing its multiplier letter.
struct WhiteheadMove {
  enum class Kind { permutation, multiplier };
  Kind kind = Kind::permutation;

  // type I: image letter of each generator
  std::vector<Letter> perm_images;

  // type II: the multiplier x and the moved set (letter codes); x is in the
  // set, x^-1 is not
  Letter multiplier;
  std::vector<char> in_set;

  Automorphism to_automorphism(int rank) const;
  std::string describe() const;
};

/// All non-identity Whitehead automorphisms of F_N, in a fixed enumeration
/// order (type I first). This is the classical finite generating set of
/// Aut(F_N) used for length minimization.
std::vector<WhiteheadMove> whitehead_moves(int rank);
std::vector<Automorphism> whitehead_generators(int rank);

struct MinimizationResult {
  CyclicWord minimum;  // canonical form of the terminal cyclic word
  std::vector<WhiteheadMove> moves;
};

/// First phase of Whitehead's algorithm: greedily apply any multiplier move
/// that strictly shortens the cyclic word, scanning moves in the fixed
/// enumeration order. Peak reduction guarantees the terminal length is the
/// minimum over the Aut(F_N)-orbit.
MinimizationResult whitehead_minimize(const Word& g, int rank);

/// g is primitive iff its Whitehead minimum has cyclic length 1.
bool is_primitive(const Word& g, int rank);

/// If phi is inner, returns w with phi(x) = w x w^-1 for all generators.
std::optional<Word> is_inner(const Automorphism& phi);

struct OrbitCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical conjugacy classes of phi(g) over all products of at most
/// `radius` generators and their inverses. Breadth-first with canonical-form
/// dedup; throws OrbitCapExceeded past `max_classes`.
std::set<CyclicWord> orbit_ball(const std::vector<Automorphism>& gens,
                                const Word& g, int radius,
                                std::size_t max_classes = 200000);

}  // namespace cvn
