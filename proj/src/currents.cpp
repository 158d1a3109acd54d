#include "cvn/currents.hpp"

#include <algorithm>

namespace cvn {

CurrentCoords::CurrentCoords(int rank, int depth) : rank_(rank), depth_(depth) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
}

void CurrentCoords::set(const Word& v, const Rational& r) {
  if (r == 0)
    weights_.erase(v);
  else
    weights_[v] = r;
}

CurrentCoords CurrentCoords::counting(const Word& g, int depth, int rank) {
  if (g.empty())
    throw std::invalid_argument("counting current of the trivial element");
  CyclicWord core = cyclic_reduce(g).core;
  if (rank == 0) rank = std::max(1, core.word().max_generator());
  if (core.word().max_generator() > rank)
    throw std::invalid_argument("counting: letters exceed the rank");
  CurrentCoords out(rank, depth);

  const std::size_t n = core.size();
  std::map<Word, long long> occ;
  for (int len = 1; len <= depth; ++len) {
    for (std::size_t pos = 0; pos < n; ++pos) {
      std::vector<Letter> pat;
      pat.reserve(len);
      for (int k = 0; k < len; ++k) pat.push_back(core.at(pos + k));
      occ[Word::reduce(pat)] += 1;  // cyclic patterns are already reduced
    }
  }
  for (const auto& [w, c] : occ) {
    out.weights_[w] += c;
    out.weights_[w.inverse()] += c;
  }
  return out;
}

Rational CurrentCoords::weight(const Word& v) const {
  auto it = weights_.find(v);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational CurrentCoords::positive_depth1_sum() const {
  Rational s = 0;
  for (int i = 1; i <= rank_; ++i) s += weight(Word::reduce({Letter(i, 1)}));
  return s;
}

CurrentCoords add(const CurrentCoords& a, const CurrentCoords& b) {
  if (a.rank_ != b.rank_ || a.depth_ != b.depth_)
    throw std::invalid_argument("add: shape mismatch");
  CurrentCoords out = a;
  for (const auto& [w, r] : b.weights_) {
    Rational sum = out.weight(w) + r;
    out.set(w, sum);
  }
  return out;
}

CurrentCoords scale(const CurrentCoords& a, const Rational& c) {
  if (c < 0) throw std::invalid_argument("scale: negative factor");
  CurrentCoords out(a.rank_, a.depth_);
  if (c == 0) return out;
  for (const auto& [w, r] : a.weights_) out.weights_[w] = r * c;
  return out;
}

ProjectiveCoords normalize_projective(const CurrentCoords& mu) {
  Rational s = mu.positive_depth1_sum();
  if (s == 0) throw std::invalid_argument("cannot projectivize the zero current");
  return ProjectiveCoords(scale(mu, Rational(1) / s));
}

Rational projective_distance(const ProjectiveCoords& p,
                             const ProjectiveCoords& q) {
  const CurrentCoords& a = p.coords();
  const CurrentCoords& b = q.coords();
  if (a.rank() != b.rank() || a.depth() != b.depth())
    throw std::invalid_argument("projective_distance: shape mismatch");
  const std::size_t full = static_cast<std::size_t>(a.depth());
  Rational d = 0;
  for (const auto& [w, r] : a.entries())
    if (w.size() == full) d += abs(r - b.weight(w));
  for (const auto& [w, r] : b.entries())
    if (w.size() == full && a.weight(w) == 0) d += abs(r);
  return d / 2;  // flip pairs counted once
}

Rational intersection_length(const MarkedMetricGraph& t, const Word& g) {
  if (g.empty())
    throw std::invalid_argument("intersection with the trivial element");
  return t.translation_length(g);
}

IwipIterationReport iterate_iwip(const Automorphism& phi, const Word& g,
                                 int n_max, int depth,
                                 const Rational& tolerance,
                                 std::size_t length_cap) {
  if (g.empty()) throw std::invalid_argument("iterate_iwip: trivial element");
  IwipIterationReport rep;
  Word w = g;
  for (int n = 0; n <= n_max; ++n) {
    ProjectiveCoords p =
        normalize_projective(CurrentCoords::counting(w, depth, phi.rank()));
    IterationStep step;
    step.n = n;
    step.word_length = w.size();
    if (n > 0) {
      step.distance_from_prev = projective_distance(rep.coords.back(), p);
      if (!rep.converged && step.distance_from_prev < tolerance) {
        rep.converged = true;
        rep.converged_at = n;
      }
    }
    rep.steps.push_back(step);
    rep.coords.push_back(std::move(p));
    if (n < n_max) {
      w = phi.apply(w);
      if (w.empty())
        throw std::invalid_argument("iterate_iwip: orbit hit the identity");
      if (w.size() > length_cap)
        throw WordLengthCapExceeded("iterate_iwip: word length " +
                                    std::to_string(w.size()) +
                                    " exceeds cap " +
                                    std::to_string(length_cap));
    }
  }
  return rep;
}

namespace {

// Eulerian circuit in the letter-transition graph (x -> y for y != x^-1);
// the visited-node sequence is a reduced word containing every reduced
// length-2 word as a subword.
Word all_pairs_word(int rank) {
  const int nodes = 2 * rank;
  std::vector<std::vector<int>> remaining(nodes);
  for (int x = 0; x < nodes; ++x) {
    for (int y = nodes - 1; y >= 0; --y)
      if (Letter::from_code(y) != Letter::from_code(x).inverse())
        remaining[x].push_back(y);  // popped back-to-front: ascending order
  }
  // Hierholzer
  std::vector<int> stack{0}, tour;
  while (!stack.empty()) {
    int v = stack.back();
    if (remaining[v].empty()) {
      tour.push_back(v);
      stack.pop_back();
    } else {
      int next = remaining[v].back();
      remaining[v].pop_back();
      stack.push_back(next);
    }
  }
  std::reverse(tour.begin(), tour.end());
  std::vector<Letter> letters;
  for (int c : tour) letters.push_back(Letter::from_code(c));
  return Word::reduce(letters);
}

}  // namespace

std::string coords_csv(const CurrentCoords& mu) {
  std::string out = "word,weight\n";
  for (const auto& [w, r] : mu.entries())
    out += w.str() + "," + rational_to_string(r) + "\n";
  return out;
}

SupportWitnessReport full_support_witness(int rank, int max_len) {
  if (rank < 2) throw std::invalid_argument("rank must be >= 2");
  SupportWitnessReport rep;
  rep.witness = all_pairs_word(rank);
  const int depth = static_cast<int>(rep.witness.size());

  rep.self_weight =
      CurrentCoords::counting(rep.witness, depth).weight(rep.witness);

  for (const CyclicWord& c : cyclic_words(rank, max_len)) {
    Word w = c.word();
    if (!is_primitive(w, rank)) continue;
    ++rep.primitives_checked;
    if (CurrentCoords::counting(w, depth).weight(rep.witness) != 0)
      rep.violations.push_back(c);
  }
  return rep;
}

}  // namespace cvn
