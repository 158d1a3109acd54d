#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvn/candidates.hpp"
#include "cvn/marked_graph.hpp"
#include "cvn/rational.hpp"

namespace cvn {

/// Shared experiment knobs. All bounds positive; tolerance > 0.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  int rank = 2;
  int trial_count = 50;
  int max_word_length = 8;
  int depth = 3;
  Rational tolerance = Rational(1, 1000000);
  std::string output_path;  // empty = stdout

  void check() const;
};

/// The two unit roses marked by {a,b} and {a,ab}: distinct in cv_2, yet all
/// automorphic images of powers of the commutator have the same length 4|k|
/// on both.
struct F2DemoReport {
  bool trees_unequal = false;
  struct Row {
    int k = 0;
    int classes_checked = 0;
    bool all_match = true;
  };
  std::vector<Row> rows;
  bool passed() const;
  std::string to_json() const;
};
F2DemoReport f2_commutator_demo(int orbit_radius = 4);

/// Samples pairs of distinct covolume-1 rank-2 graphs and checks that some
/// element of S0 = {a, b, ab, ab^-1, [a,b]} tells them apart. A sampler of a
/// necessary condition only: it cannot decide the universally quantified
/// rigidity claim.
struct S0ProbeReport {
  struct Row {
    int trial = 0;
    bool skipped_equal = false;
    std::optional<Word> witness;
  };
  int pairs_sampled = 0;
  int pairs_skipped = 0;
  int violations = 0;  // unequal pairs with no witness in S0
  std::vector<Row> rows;
  std::string note;
  std::string to_json() const;
};
S0ProbeReport s0_probe(const ExperimentConfig& config);

const std::vector<Word>& s0_elements();

/// Searches the H-orbit of g for an element separating T from T', radius by
/// radius; independently runs the relative-rigidity check on the pair.
struct PairScanResult {
  bool equal_pair = false;
  bool discriminated = false;
  int radius = -1;                 // smallest radius that separated
  std::optional<CyclicWord> discriminator;
  bool candidate_witness_found = false;
};
PairScanResult scan_pair(const MarkedMetricGraph& t,
                         const MarkedMetricGraph& tp,
                         const std::vector<Automorphism>& h_generators,
                         const Word& g, int max_radius);

struct RigidityScanReport {
  struct Row {
    int trial = 0;
    PairScanResult result;
  };
  int pairs_sampled = 0;
  int pairs_skipped = 0;
  int discriminated = 0;
  int undiscriminated = 0;
  int min_radius = -1;  // discrimination depth statistics
  int max_radius = -1;
  std::vector<Row> rows;
  std::string to_json() const;
};
RigidityScanReport rigidity_scan(const ExperimentConfig& config,
                                 const std::vector<Automorphism>& h_generators,
                                 const Word& g, int max_radius = 6);

/// The marked roses of the F2 demo.
MarkedMetricGraph rose_a();   // basis {a, b}
MarkedMetricGraph rose_ab();  // basis {a, ab}

}  // namespace cvn
