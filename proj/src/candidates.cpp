#include "cvn/candidates.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

namespace cvn {

std::string to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::simple: return "simple";
    case CandidateKind::figure_eight: return "figure_eight";
    case CandidateKind::barbell: return "barbell";
  }
  return "?";
}

namespace {

// Rotation/reversal-invariant key for an edge circuit, for deduplicating the
// raw cycle enumeration before words come into play.
std::vector<int> circuit_key(const EdgeCircuit& c) {
  auto least_rotation = [](const std::vector<int>& v) {
    std::vector<int> best = v;
    for (std::size_t s = 1; s < v.size(); ++s) {
      std::vector<int> rot;
      rot.reserve(v.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        rot.push_back(v[(s + i) % v.size()]);
      if (rot < best) best = rot;
    }
    return best;
  };
  std::vector<int> rev;
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it)
    rev.push_back(EdgeCircuit::reverse_step(*it));
  std::vector<int> a = least_rotation(c.steps), b = least_rotation(rev);
  return std::min(a, b);
}

// All embedded cycles: closed edge paths visiting pairwise distinct
// vertices. Anchored at their minimal vertex to cut the search.
std::vector<EdgeCircuit> embedded_cycles(const MarkedMetricGraph& g) {
  std::vector<EdgeCircuit> out;
  std::set<std::vector<int>> seen;
  const int E = static_cast<int>(g.edges().size());

  std::vector<int> path;
  std::vector<char> visited(g.vertex_count(), 0);

  std::function<void(int, int)> extend = [&](int anchor, int at) {
    for (int pair = 0; pair < E; ++pair) {
      for (int step : {EdgeCircuit::forward(pair), EdgeCircuit::backward(pair)}) {
        if (g.step_origin(step) != at) continue;
        if (!path.empty() && step == EdgeCircuit::reverse_step(path.back()))
          continue;
        int next = g.step_target(step);
        if (next == anchor) {
          if (path.empty() && g.step_origin(step) == g.step_target(step)) {
            // single-edge loop
            EdgeCircuit c{{step}};
            if (seen.insert(circuit_key(c)).second) out.push_back(c);
            continue;
          }
          if (path.empty()) continue;  // two-step backtrack is filtered above
          EdgeCircuit c;
          c.steps = path;
          c.steps.push_back(step);
          // wrap immersion: first vs last step
          if (c.steps.front() == EdgeCircuit::reverse_step(c.steps.back()))
            continue;
          if (seen.insert(circuit_key(c)).second) out.push_back(c);
          continue;
        }
        if (next < anchor || visited[next]) continue;
        visited[next] = 1;
        path.push_back(step);
        extend(anchor, next);
        path.pop_back();
        visited[next] = 0;
      }
    }
  };

  for (int v = 0; v < g.vertex_count(); ++v) {
    visited.assign(g.vertex_count(), 0);
    visited[v] = 1;
    path.clear();
    extend(v, v);
  }
  return out;
}

bool edge_disjoint(const EdgeCircuit& a, const EdgeCircuit& b) {
  std::set<int> pa;
  for (int s : a.steps) pa.insert(EdgeCircuit::pair_of(s));
  for (int s : b.steps)
    if (pa.count(EdgeCircuit::pair_of(s))) return false;
  return true;
}

std::vector<int> circuit_vertices(const MarkedMetricGraph& g,
                                  const EdgeCircuit& c) {
  std::vector<int> vs;
  for (int s : c.steps) vs.push_back(g.step_origin(s));
  return vs;
}

EdgeCircuit rotate_to(const MarkedMetricGraph& g, const EdgeCircuit& c,
                      int vertex) {
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    if (g.step_origin(c.steps[i]) == vertex) {
      EdgeCircuit r;
      for (std::size_t j = 0; j < c.steps.size(); ++j)
        r.steps.push_back(c.steps[(i + j) % c.steps.size()]);
      return r;
    }
  }
  throw std::logic_error("rotate_to: vertex not on circuit");
}

EdgeCircuit reverse_circuit(const EdgeCircuit& c) {
  EdgeCircuit r;
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it)
    r.steps.push_back(EdgeCircuit::reverse_step(*it));
  return r;
}

// Simple edge paths from `from` to `to` (distinct vertices, no repeats).
std::vector<std::vector<int>> simple_paths(const MarkedMetricGraph& g,
                                           int from, int to) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<char> visited(g.vertex_count(), 0);
  const int E = static_cast<int>(g.edges().size());
  std::function<void(int)> extend = [&](int at) {
    if (at == to) {
      out.push_back(path);
      return;
    }
    for (int pair = 0; pair < E; ++pair) {
      for (int step : {EdgeCircuit::forward(pair), EdgeCircuit::backward(pair)}) {
        if (g.step_origin(step) != at) continue;
        int next = g.step_target(step);
        if (visited[next]) continue;
        visited[next] = 1;
        path.push_back(step);
        extend(next);
        path.pop_back();
        visited[next] = 0;
      }
    }
  };
  visited[from] = 1;
  extend(from);
  return out;
}

std::vector<Candidate> finalize(const MarkedMetricGraph& g, CandidateKind kind,
                                const std::vector<EdgeCircuit>& circuits) {
  std::map<CyclicWord, Candidate> by_class;
  for (const EdgeCircuit& c : circuits) {
    Candidate cand;
    cand.kind = kind;
    cand.circuit = c;
    cand.word = canonical_unoriented(g.circuit_to_word(c));
    cand.length = g.circuit_length(c);
    by_class.emplace(cand.word, std::move(cand));
  }
  std::vector<Candidate> out;
  for (auto& [w, cand] : by_class) out.push_back(std::move(cand));
  return out;
}

}  // namespace

std::vector<Candidate> enumerate_simple_circuits(const MarkedMetricGraph& g) {
  if (!g.valid()) throw std::logic_error("invalid graph");
  return finalize(g, CandidateKind::simple, embedded_cycles(g));
}

std::vector<Candidate> enumerate_figure_eights(const MarkedMetricGraph& g) {
  if (!g.valid()) throw std::logic_error("invalid graph");
  std::vector<EdgeCircuit> cycles = embedded_cycles(g);
  std::vector<EdgeCircuit> out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      if (!edge_disjoint(cycles[i], cycles[j])) continue;
      for (int v : circuit_vertices(g, cycles[i])) {
        auto on_j = circuit_vertices(g, cycles[j]);
        if (std::find(on_j.begin(), on_j.end(), v) == on_j.end()) continue;
        EdgeCircuit c1 = rotate_to(g, cycles[i], v);
        EdgeCircuit c2 = rotate_to(g, cycles[j], v);
        for (const EdgeCircuit& second : {c2, reverse_circuit(c2)}) {
          EdgeCircuit fig;
          fig.steps = c1.steps;
          fig.steps.insert(fig.steps.end(), second.steps.begin(),
                           second.steps.end());
          out.push_back(std::move(fig));
        }
      }
    }
  }
  return finalize(g, CandidateKind::figure_eight, out);
}

std::vector<Candidate> enumerate_barbells(const MarkedMetricGraph& g) {
  if (!g.valid()) throw std::logic_error("invalid graph");
  std::vector<EdgeCircuit> cycles = embedded_cycles(g);
  std::vector<EdgeCircuit> out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      if (!edge_disjoint(cycles[i], cycles[j])) continue;
      for (int v1 : circuit_vertices(g, cycles[i])) {
        for (int v2 : circuit_vertices(g, cycles[j])) {
          if (v1 == v2) continue;
          for (const auto& beta : simple_paths(g, v1, v2)) {
            EdgeCircuit bpath{beta};
            if (!edge_disjoint(cycles[i], bpath) ||
                !edge_disjoint(cycles[j], bpath))
              continue;
            EdgeCircuit c1 = rotate_to(g, cycles[i], v1);
            EdgeCircuit c2 = rotate_to(g, cycles[j], v2);
            for (const EdgeCircuit& second : {c2, reverse_circuit(c2)}) {
              EdgeCircuit bar;
              bar.steps = c1.steps;
              bar.steps.insert(bar.steps.end(), beta.begin(), beta.end());
              bar.steps.insert(bar.steps.end(), second.steps.begin(),
                               second.steps.end());
              for (auto it = beta.rbegin(); it != beta.rend(); ++it)
                bar.steps.push_back(EdgeCircuit::reverse_step(*it));
              out.push_back(std::move(bar));
            }
          }
        }
      }
    }
  }
  return finalize(g, CandidateKind::barbell, out);
}

std::vector<Candidate> candidate_set(const MarkedMetricGraph& g) {
  std::vector<Candidate> out = enumerate_simple_circuits(g);
  std::set<CyclicWord> seen;
  for (const Candidate& c : out) seen.insert(c.word);
  for (auto enumerate : {enumerate_figure_eights, enumerate_barbells}) {
    for (Candidate& c : enumerate(g))
      if (seen.insert(c.word).second) out.push_back(std::move(c));
  }
  return out;
}

Rational distortion(const MarkedMetricGraph& t, const MarkedMetricGraph& tp) {
  if (t.rank() != tp.rank()) throw std::invalid_argument("rank mismatch");
  std::vector<Candidate> cands = candidate_set(t);
  if (cands.empty()) throw std::logic_error("empty candidate set");
  Rational best = 0;
  for (const Candidate& c : cands) {
    Rational ratio = tp.translation_length(c.word.word()) / c.length;
    if (ratio > best) best = ratio;
  }
  return best;
}

namespace {

const std::vector<CyclicWord>& cached_cyclic_words(int rank, int max_len) {
  static std::map<std::pair<int, int>, std::vector<CyclicWord>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(rank, max_len);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, cyclic_words(rank, max_len)).first;
  return it->second;
}

}  // namespace

Rational distortion_bruteforce(const MarkedMetricGraph& t,
                               const MarkedMetricGraph& tp, int max_len) {
  if (t.rank() != tp.rank()) throw std::invalid_argument("rank mismatch");
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  Rational best = 0;
  for (const CyclicWord& c : cached_cyclic_words(t.rank(), max_len)) {
    Word w = c.word();
    Rational ratio = tp.translation_length(w) / t.translation_length(w);
    if (ratio > best) best = ratio;
  }
  return best;
}

RigidityWitness rigidity_witness(const MarkedMetricGraph& t,
                                 const MarkedMetricGraph& tp) {
  if (t.rank() != tp.rank()) throw std::invalid_argument("rank mismatch");
  RigidityWitness res;
  for (const Candidate& c : candidate_set(t)) {
    Rational in_tp = tp.translation_length(c.word.word());
    if (in_tp != c.length) {
      res.equal = false;
      res.witness = c;
      res.length_in_t = c.length;
      res.length_in_tp = in_tp;
      return res;
    }
  }
  res.equal = true;
  if (!equal_in_cv(t, tp))
    throw RigidityViolation(
        "all candidate lengths agree but the trees differ in cv_N");
  return res;
}

}  // namespace cvn
