#include "cvn/experiments.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

#include "cvn/currents.hpp"

namespace cvn {

void ExperimentConfig::check() const {
  if (rank < 2) throw std::invalid_argument("config: rank must be >= 2");
  if (trial_count < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (max_word_length < 1)
    throw std::invalid_argument("config: word length bound must be >= 1");
  if (depth < 1) throw std::invalid_argument("config: depth must be >= 1");
  if (tolerance <= 0) throw std::invalid_argument("config: tolerance must be > 0");
}

MarkedMetricGraph rose_a() {
  std::vector<MarkedMetricGraph::Edge> edges;
  edges.push_back({"e0", 0, 0, Rational(1), false});
  edges.push_back({"e1", 0, 0, Rational(1), false});
  return MarkedMetricGraph(2, {"v0"}, std::move(edges),
                           {Word::parse("a"), Word::parse("b")});
}

MarkedMetricGraph rose_ab() {
  std::vector<MarkedMetricGraph::Edge> edges;
  edges.push_back({"e0", 0, 0, Rational(1), false});
  edges.push_back({"e1", 0, 0, Rational(1), false});
  return MarkedMetricGraph(2, {"v0"}, std::move(edges),
                           {Word::parse("a"), Word::parse("ab")});
}

bool F2DemoReport::passed() const {
  if (!trees_unequal) return false;
  for (const Row& r : rows)
    if (!r.all_match) return false;
  return true;
}

std::string F2DemoReport::to_json() const {
  nlohmann::ordered_json j;
  j["trees_unequal"] = trees_unequal;
  j["rows"] = nlohmann::ordered_json::array();
  for (const Row& r : rows) {
    j["rows"].push_back({{"k", r.k},
                         {"classes_checked", r.classes_checked},
                         {"all_match", r.all_match}});
  }
  j["passed"] = passed();
  return j.dump(2);
}

F2DemoReport f2_commutator_demo(int orbit_radius) {
  F2DemoReport rep;
  MarkedMetricGraph ta = rose_a();
  MarkedMetricGraph tb = rose_ab();
  rep.trees_unequal = !equal_in_cv(ta, tb);

  const auto gens = whitehead_generators(2);
  const Word comm = Word::parse("abAB");
  for (int k = 1; k <= 3; ++k) {
    F2DemoReport::Row row;
    row.k = k;
    const Rational expected = 4 * k;
    for (const CyclicWord& c : orbit_ball(gens, comm.pow(k), orbit_radius)) {
      ++row.classes_checked;
      Word w = c.word();
      if (ta.translation_length(w) != expected ||
          tb.translation_length(w) != expected)
        row.all_match = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

const std::vector<Word>& s0_elements() {
  static const std::vector<Word> s0 = {Word::parse("a"), Word::parse("b"),
                                       Word::parse("ab"), Word::parse("aB"),
                                       Word::parse("abAB")};
  return s0;
}

std::string S0ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["pairs_sampled"] = pairs_sampled;
  j["pairs_skipped"] = pairs_skipped;
  j["violations"] = violations;
  j["note"] = note;
  j["rows"] = nlohmann::ordered_json::array();
  for (const Row& r : rows) {
    nlohmann::ordered_json jr;
    jr["trial"] = r.trial;
    jr["skipped_equal"] = r.skipped_equal;
    jr["witness"] = r.witness ? r.witness->str() : "";
    j["rows"].push_back(jr);
  }
  return j.dump(2);
}

S0ProbeReport s0_probe(const ExperimentConfig& config) {
  config.check();
  if (config.rank != 2)
    throw std::invalid_argument("s0_probe is a rank-2 experiment");
  S0ProbeReport rep;
  rep.note =
      "necessary-condition sampler: agreement of S0 lengths is checked on "
      "sampled unequal covolume-1 pairs only; the universally quantified "
      "claim is not decided by sampling";

  std::mt19937_64 seeder(config.seed);
  for (int trial = 0; trial < config.trial_count; ++trial) {
    S0ProbeReport::Row row;
    row.trial = trial;
    MarkedMetricGraph t =
        random_marked_graph(2, seeder()).normalize_covolume();
    MarkedMetricGraph tp =
        random_marked_graph(2, seeder()).normalize_covolume();
    ++rep.pairs_sampled;
    if (equal_in_cv(t, tp)) {
      row.skipped_equal = true;
      ++rep.pairs_skipped;
    } else {
      for (const Word& s : s0_elements()) {
        if (t.translation_length(s) != tp.translation_length(s)) {
          row.witness = s;
          break;
        }
      }
      if (!row.witness) ++rep.violations;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

PairScanResult scan_pair(const MarkedMetricGraph& t,
                         const MarkedMetricGraph& tp,
                         const std::vector<Automorphism>& h_generators,
                         const Word& g, int max_radius) {
  PairScanResult res;
  if (equal_in_cv(t, tp)) {
    res.equal_pair = true;
    return res;
  }
  for (int r = 0; r <= max_radius && !res.discriminated; ++r) {
    for (const CyclicWord& c : orbit_ball(h_generators, g, r)) {
      Word w = c.word();
      if (t.translation_length(w) != tp.translation_length(w)) {
        res.discriminated = true;
        res.radius = r;
        res.discriminator = c;
        break;
      }
    }
  }
  res.candidate_witness_found = !rigidity_witness(t, tp).equal;
  return res;
}

std::string RigidityScanReport::to_json() const {
  nlohmann::ordered_json j;
  j["pairs_sampled"] = pairs_sampled;
  j["pairs_skipped"] = pairs_skipped;
  j["discriminated"] = discriminated;
  j["undiscriminated"] = undiscriminated;
  j["min_radius"] = min_radius;
  j["max_radius"] = max_radius;
  j["rows"] = nlohmann::ordered_json::array();
  for (const Row& r : rows) {
    nlohmann::ordered_json jr;
    jr["trial"] = r.trial;
    jr["equal_pair"] = r.result.equal_pair;
    jr["discriminated"] = r.result.discriminated;
    jr["radius"] = r.result.radius;
    jr["discriminator"] =
        r.result.discriminator ? r.result.discriminator->str() : "";
    jr["candidate_witness_found"] = r.result.candidate_witness_found;
    j["rows"].push_back(jr);
  }
  return j.dump(2);
}

RigidityScanReport rigidity_scan(const ExperimentConfig& config,
                                 const std::vector<Automorphism>& h_generators,
                                 const Word& g, int max_radius) {
  config.check();
  if (g.empty()) throw std::invalid_argument("rigidity_scan: trivial element");
  RigidityScanReport rep;
  std::mt19937_64 seeder(config.seed);
  for (int trial = 0; trial < config.trial_count; ++trial) {
    MarkedMetricGraph t = random_marked_graph(config.rank, seeder());
    MarkedMetricGraph tp = random_marked_graph(config.rank, seeder());
    RigidityScanReport::Row row;
    row.trial = trial;
    row.result = scan_pair(t, tp, h_generators, g, max_radius);
    ++rep.pairs_sampled;
    if (row.result.equal_pair) {
      ++rep.pairs_skipped;
    } else if (row.result.discriminated) {
      ++rep.discriminated;
      if (rep.min_radius < 0 || row.result.radius < rep.min_radius)
        rep.min_radius = row.result.radius;
      rep.max_radius = std::max(rep.max_radius, row.result.radius);
    } else {
      ++rep.undiscriminated;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cvn
