#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvn/marked_graph.hpp"

namespace cvn {

enum class CandidateKind { simple, figure_eight, barbell };
std::string to_string(CandidateKind k);

/// An almost simple curve in the quotient graph: a simple circuit, a
/// figure-eight (two edge-disjoint simple circuits through a common vertex),
/// or a barbell (two edge-disjoint simple circuits joined by a simple path,
/// the path edge-disjoint from both). Every candidate class is primitive.
struct Candidate {
  CandidateKind kind = CandidateKind::simple;
  EdgeCircuit circuit;
  CyclicWord word;  // canonical unoriented class of the circuit
  Rational length;  // metric length in the carrying graph
};

std::vector<Candidate> enumerate_simple_circuits(const MarkedMetricGraph& g);
std::vector<Candidate> enumerate_figure_eights(const MarkedMetricGraph& g);
std::vector<Candidate> enumerate_barbells(const MarkedMetricGraph& g);

/// The finite candidate set U_T over which extremal distortion is attained.
std::vector<Candidate> candidate_set(const MarkedMetricGraph& g);

/// Extremal Lipschitz distortion D(T,T') = sup over nontrivial g of
/// ||g||_{T'} / ||g||_T, computed as the maximum over the candidate set.
Rational distortion(const MarkedMetricGraph& t, const MarkedMetricGraph& tp);

/// Independent oracle: the same supremum restricted to all conjugacy classes
/// of cyclic length <= max_len. Never exceeds distortion(t, tp) and is
/// monotone nondecreasing in max_len.
Rational distortion_bruteforce(const MarkedMetricGraph& t,
                               const MarkedMetricGraph& tp, int max_len);

/// Relative rigidity check: either some candidate of T separates the trees
/// by length, or the trees coincide in cv_N. The second branch is enforced:
/// agreement on U_T with unequal trees throws RigidityViolation.
struct RigidityViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct RigidityWitness {
  bool equal = false;
  std::optional<Candidate> witness;  // lengths differ on this class
  Rational length_in_t;
  Rational length_in_tp;
};

RigidityWitness rigidity_witness(const MarkedMetricGraph& t,
                                 const MarkedMetricGraph& tp);

}  // namespace cvn
