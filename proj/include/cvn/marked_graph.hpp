#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvn/automorphism.hpp"
#include "cvn/rational.hpp"
#include "cvn/word.hpp"

namespace cvn {

/// A closed edge path, stored as oriented edge steps. Step encoding:
/// 2*pair_index for the stored orientation, 2*pair_index+1 for its reverse.
struct EdgeCircuit {
  std::vector<int> steps;

  static int forward(int pair) { return 2 * pair; }
  static int backward(int pair) { return 2 * pair + 1; }
  static int pair_of(int step) { return step / 2; }
  static bool reversed(int step) { return step % 2 != 0; }
  static int reverse_step(int step) { return step ^ 1; }
};

/// A point of cv_N: a finite metric graph with positive rational edge
/// lengths together with a marking. The marking is stored as a spanning
/// tree plus the tuple of F_N-words corresponding to the fundamental
/// circuits of the tree (circuit order = order of non-tree edges).
///
/// Immutable after construction; operations return fresh values.
class MarkedMetricGraph {
 public:
  struct Edge {
    std::string id;
    int from = 0, to = 0;
    Rational length;
    bool in_tree = false;
  };

  /// Performs structural checks only (indices, duplicate ids). Semantic
  /// invariants are reported by validate().
  MarkedMetricGraph(int rank, std::vector<std::string> vertex_names,
                    std::vector<Edge> edges, std::vector<Word> basis);

  /// Diagnostics for every violated invariant; empty means the graph is a
  /// genuine point of cv_N.
  const std::vector<std::string>& validate() const { return diagnostics_; }
  bool valid() const { return diagnostics_.empty(); }

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Word>& basis() const { return basis_; }
  int base_vertex() const { return base_; }

  int degree(int vertex) const;

  /// Fundamental circuit of the i-th non-tree edge (0-based), a loop at the
  /// base vertex.
  const EdgeCircuit& fundamental_circuit(int i) const { return circuits_.at(i); }
  const std::vector<int>& nontree_pairs() const { return nontree_; }

  int step_origin(int step) const;
  int step_target(int step) const;
  Rational circuit_length(const EdgeCircuit& c) const;

  /// Conjugacy class represented by an immersed circuit, read through the
  /// marking: non-tree steps spell a word over the fundamental-circuit
  /// symbols, which the basis words then translate into F_N.
  CyclicWord circuit_to_word(const EdgeCircuit& c) const;

  /// Translation length ||g|| of g acting on the universal cover:
  /// the metric length of the cyclically reduced edge circuit of g.
  /// Exact; 0 only for the identity.
  Rational translation_length(const Word& g) const;

  Rational volume() const;
  MarkedMetricGraph scale(const Rational& c) const;
  MarkedMetricGraph normalize_covolume() const;

  /// Right action of Aut(F_N): ||g||_{act(T,phi)} = ||phi(g)||_T.
  MarkedMetricGraph act(const Automorphism& phi) const;

  std::string to_json() const;
  static MarkedMetricGraph from_json(const std::string& text);

 private:
  void build_derived();

  int rank_;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<Word> basis_;
  std::vector<std::string> diagnostics_;

  int base_ = 0;
  std::vector<int> nontree_;            // pair indices in circuit order
  std::vector<EdgeCircuit> circuits_;   // fundamental circuits
  std::optional<Automorphism> marking_; // a_i -> basis_[i-1]
};

/// Exact equality in cv_N: some length-preserving graph isomorphism induces
/// an inner automorphism when the markings are compared through it. Relies
/// on every vertex having degree >= 3, which makes any equivariant isometry
/// of the universal covers simplicial.
bool equal_in_cv(const MarkedMetricGraph& a, const MarkedMetricGraph& b);

/// Hand-curated combinatorial types with unit lengths and identity markings.
/// Rank 2: rose, theta, barbell. Rank 3: rose, 4-edge theta, K4, and friends.
struct CatalogEntry {
  std::string name;
  MarkedMetricGraph graph;
  int max_candidate_symbols;  // longest candidate circuit, in marking symbols
};
const std::vector<CatalogEntry>& graph_catalog(int rank);

/// Seeded random point of cv_N: a catalog shape with random rational edge
/// lengths and a random short Whitehead marking. Markings are kept short
/// enough that every candidate curve stays within the default brute-force
/// window (cyclic length 10 in rank 2, 7 in rank 3).
MarkedMetricGraph random_marked_graph(int rank, std::uint64_t seed);

}  // namespace cvn
