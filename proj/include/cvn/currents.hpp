#pragma once

#include <map>
#include <vector>

#include "cvn/automorphism.hpp"
#include "cvn/marked_graph.hpp"
#include "cvn/rational.hpp"
#include "cvn/word.hpp"

namespace cvn {

/// Finite-depth cylinder coordinates of a geodesic current: a weight for
/// every reduced word of length <= depth (sparse; absent means zero).
///
/// Invariants maintained by all constructors and operations:
///   - flip symmetry: weight(v) == weight(v^-1)
///   - consistency: for |v| < depth, weight(v) = sum over reduced
///     extensions vx of weight(vx)
class CurrentCoords {
 public:
  CurrentCoords(int rank, int depth);

  /// Coordinates of the counting current of g: weight(v) counts occurrences
  /// of v plus occurrences of v^-1 in the cyclic word of g, read cyclically
  /// (patterns longer than the cyclic word wrap around repeatedly).
  /// With rank = 0 the ambient rank is taken from the letters of g.
  static CurrentCoords counting(const Word& g, int depth, int rank = 0);

  int rank() const { return rank_; }
  int depth() const { return depth_; }
  bool zero() const { return weights_.empty(); }

  Rational weight(const Word& v) const;
  const std::map<Word, Rational>& entries() const { return weights_; }

  /// Sum of the depth-1 weights over the positive letters; equals the cyclic
  /// length for a counting current.
  Rational positive_depth1_sum() const;

  friend CurrentCoords add(const CurrentCoords& a, const CurrentCoords& b);
  friend CurrentCoords scale(const CurrentCoords& a, const Rational& c);

  friend bool operator==(const CurrentCoords& a, const CurrentCoords& b) {
    return a.rank_ == b.rank_ && a.depth_ == b.depth_ &&
           a.weights_ == b.weights_;
  }

 private:
  void set(const Word& v, const Rational& r);
  int rank_;
  int depth_;
  std::map<Word, Rational> weights_;

  friend class ProjectiveCoords;
};

/// A projective class of coordinates, normalized so the depth-1 weights of
/// the positive letters sum to 1.
class ProjectiveCoords {
 public:
  const CurrentCoords& coords() const { return coords_; }

  friend ProjectiveCoords normalize_projective(const CurrentCoords& mu);

  friend bool operator==(const ProjectiveCoords& a, const ProjectiveCoords& b) {
    return a.coords_ == b.coords_;
  }

 private:
  explicit ProjectiveCoords(CurrentCoords c) : coords_(std::move(c)) {}
  CurrentCoords coords_;
};

/// Throws std::invalid_argument on the zero current.
ProjectiveCoords normalize_projective(const CurrentCoords& mu);

/// L^1 distance between the normalized weight vectors at full depth, with
/// flip pairs counted once. Zero iff the coordinates agree.
Rational projective_distance(const ProjectiveCoords& p,
                             const ProjectiveCoords& q);

/// The intersection pairing against a counting current: <T, eta_g> = ||g||_T.
Rational intersection_length(const MarkedMetricGraph& t, const Word& g);

struct IterationStep {
  int n = 0;
  std::size_t word_length = 0;
  Rational distance_from_prev;  // meaningful for n >= 1
};

struct IwipIterationReport {
  std::vector<IterationStep> steps;
  std::vector<ProjectiveCoords> coords;  // one per step
  bool converged = false;
  int converged_at = -1;
};

struct WordLengthCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Projectivized coordinates of phi^n(g) for n = 0..n_max. Convergence is a
/// numeric verdict only: flagged the first time successive projective
/// distances drop below `tolerance` (exact arithmetic underneath).
IwipIterationReport iterate_iwip(const Automorphism& phi, const Word& g,
                                 int n_max, int depth,
                                 const Rational& tolerance = Rational(1, 1000000),
                                 std::size_t length_cap = 1000000);

struct SupportWitnessReport {
  Word witness;             // contains every reduced length-2 word
  int primitives_checked = 0;
  Rational self_weight;     // weight of the witness in its own current
  std::vector<CyclicWord> violations;  // primitives giving nonzero weight
  bool all_zero() const { return violations.empty(); }
};

/// Builds a word containing every reduced length-2 word as a subword and
/// verifies it has weight zero in the counting current of every primitive
/// class of cyclic length <= max_len.
SupportWitnessReport full_support_witness(int rank, int max_len);

/// "word,weight" rows, weights as exact rational strings.
std::string coords_csv(const CurrentCoords& mu);

}  // namespace cvn
