#include "cvn/automorphism.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cvn {

namespace {

// Folding workspace: a labeled graph whose oriented edges carry, besides the
// generator label, a word over the tuple symbols. Folding two edges first
// applies a "gauge" correction at the vertex being absorbed so that the
// symbol-reading of every loop at the base is preserved; this is what lets a
// successful fold sequence be replayed as a change of basis.
struct FoldGraph {
  struct Edge {
    int from, to;
    int label;   // positive generator index; traversing from->to reads a_label
    Word bword;  // symbol word read along from->to
    bool alive = true;
  };

  std::vector<int> parent;  // union-find over vertices
  std::vector<Edge> edges;
  int base = 0;

  int make_vertex() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void unite(int a, int b) { parent[find(b)] = find(a); }

  // Oriented edge view: (e, +1) reads a_label from `from`; (e, -1) reads the
  // inverse letter from `to`.
  int origin(const Edge& e, int dir) { return find(dir > 0 ? e.from : e.to); }
  int head(const Edge& e, int dir) { return find(dir > 0 ? e.to : e.from); }
  Word traversal_bword(const Edge& e, int dir) {
    return dir > 0 ? e.bword : e.bword.inverse();
  }

  // Multiplies the symbol-reading holonomy at v by gamma. Readings of paths
  // not beginning or ending at v are unchanged.
  void gauge(int v, const Word& gamma) {
    Word gamma_inv = gamma.inverse();
    for (Edge& e : edges) {
      if (!e.alive) continue;
      int f = find(e.from), t = find(e.to);
      if (f == v && t == v)
        e.bword = concat(gamma_inv, concat(e.bword, gamma));
      else if (t == v)
        e.bword = concat(e.bword, gamma);
      else if (f == v)
        e.bword = concat(gamma_inv, e.bword);
    }
  }
};

}  // namespace

FoldOutcome fold_basis_check(const std::vector<Word>& words) {
  FoldOutcome out;
  const int rank = static_cast<int>(words.size());
  if (rank == 0) return out;
  for (const Word& w : words) {
    if (w.empty()) return out;
    if (w.max_generator() > rank) return out;
  }

  FoldGraph g;
  g.base = g.make_vertex();
  for (int i = 0; i < rank; ++i) {
    int cur = g.base;
    const auto& ls = words[i].letters();
    for (std::size_t j = 0; j < ls.size(); ++j) {
      int next = (j + 1 == ls.size()) ? g.base : g.make_vertex();
      Word bw = (j == 0) ? Word::reduce({Letter(i + 1, 1)}) : Word();
      const Letter& x = ls[j];
      if (x.sign > 0)
        g.edges.push_back({cur, next, x.index, bw, true});
      else
        g.edges.push_back({next, cur, x.index, bw.inverse(), true});
      cur = next;
    }
  }

  // Fold until immersed: no two live oriented edges with the same origin and
  // the same oriented label.
  for (;;) {
    int e1 = -1, e2 = -1, dir = 0;
    const int m = static_cast<int>(g.edges.size());
    for (int i = 0; i < m && e1 < 0; ++i) {
      if (!g.edges[i].alive) continue;
      for (int j = i + 1; j < m && e1 < 0; ++j) {
        if (!g.edges[j].alive) continue;
        if (g.edges[i].label != g.edges[j].label) continue;
        for (int d : {+1, -1}) {
          if (g.origin(g.edges[i], d) == g.origin(g.edges[j], d)) {
            e1 = i;
            e2 = j;
            dir = d;
            break;
          }
        }
      }
    }
    if (e1 < 0) break;

    int h1 = g.head(g.edges[e1], dir);
    int h2 = g.head(g.edges[e2], dir);
    Word b1 = g.traversal_bword(g.edges[e1], dir);
    Word b2 = g.traversal_bword(g.edges[e2], dir);

    if (h1 == h2) {
      // Parallel fold. A disagreement of readings here is a genuine relation
      // among the tuple, so it cannot be a basis.
      if (b1 != b2) return out;
      g.edges[e2].alive = false;
      continue;
    }
    // Gauge at whichever endpoint is not the base; loops at the base read
    // tuple expressions directly, so its holonomy must stay fixed.
    if (h2 != g.find(g.base)) {
      g.gauge(h2, concat(b2.inverse(), b1));
    } else {
      g.gauge(h1, concat(b1.inverse(), b2));
    }
    g.unite(h1, h2);
    g.edges[e2].alive = false;
  }

  // Prune hanging trees away from the base.
  for (;;) {
    std::vector<int> degree(g.parent.size(), 0);
    for (const auto& e : g.edges) {
      if (!e.alive) continue;
      degree[g.find(e.from)]++;
      degree[g.find(e.to)]++;
    }
    bool pruned = false;
    for (auto& e : g.edges) {
      if (!e.alive) continue;
      int f = g.find(e.from), t = g.find(e.to);
      if ((f != g.find(g.base) && degree[f] == 1) ||
          (t != g.find(g.base) && degree[t] == 1)) {
        e.alive = false;
        pruned = true;
      }
    }
    if (!pruned) break;
  }

  // The tuple is a basis iff what is left is the standard rose at the base.
  int base = g.find(g.base);
  std::vector<Word> expressions(rank);
  std::vector<bool> seen(rank, false);
  int live = 0;
  for (const auto& e : g.edges) {
    if (!e.alive) continue;
    ++live;
    if (g.find(e.from) != base || g.find(e.to) != base) return out;
    if (e.label < 1 || e.label > rank || seen[e.label - 1]) return out;
    seen[e.label - 1] = true;
    expressions[e.label - 1] = e.bword;
  }
  if (live != rank) return out;

  out.is_basis = true;
  out.expressions = std::move(expressions);
  return out;
}

Word rewrite_in_basis(const Word& g, const std::vector<Word>& basis) {
  FoldOutcome f = fold_basis_check(basis);
  if (!f.is_basis) throw NotABasisError("rewrite_in_basis: not a free basis");
  return substitute(g, f.expressions);
}

Automorphism::Automorphism(std::vector<Word> images) {
  FoldOutcome f = fold_basis_check(images);
  if (!f.is_basis)
    throw NotABasisError("automorphism images do not form a free basis");
  images_ = std::move(images);
  inverse_images_ = std::move(f.expressions);
  for (int i = 1; i <= rank(); ++i) {
    Word roundtrip = substitute(inverse_images_[i - 1], images_);
    Word gen = Word::reduce({Letter(i, 1)});
    if (roundtrip != gen)
      throw std::logic_error("folding produced an inconsistent inverse");
  }
}

Automorphism Automorphism::identity(int rank) {
  std::vector<Word> imgs;
  for (int i = 1; i <= rank; ++i) imgs.push_back(Word::reduce({Letter(i, 1)}));
  std::vector<Word> invs = imgs;
  return Automorphism(std::move(imgs), std::move(invs), trusted_t{});
}

std::optional<Automorphism> Automorphism::try_make(std::vector<Word> images) {
  FoldOutcome f = fold_basis_check(images);
  if (!f.is_basis) return std::nullopt;
  return Automorphism(std::move(images), std::move(f.expressions), trusted_t{});
}

Automorphism Automorphism::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Word> images;
  std::string tok;
  while (in >> tok) images.push_back(Word::parse(tok));
  return Automorphism(std::move(images));
}

Automorphism Automorphism::inverse() const {
  return Automorphism(inverse_images_, images_, trusted_t{});
}

std::string Automorphism::str() const {
  std::string s;
  for (int i = 0; i < rank(); ++i) {
    if (i) s += ' ';
    s += images_[i].empty() ? "1" : images_[i].str();
  }
  return s;
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (f.rank() != g.rank())
    throw std::invalid_argument("compose: rank mismatch");
  std::vector<Word> imgs, invs;
  for (int i = 1; i <= f.rank(); ++i) {
    imgs.push_back(f.apply(g.image(i)));
    invs.push_back(g.apply_inverse(f.inverse_image(i)));
  }
  return Automorphism(std::move(imgs), std::move(invs),
                      Automorphism::trusted_t{});
}

Automorphism WhiteheadMove::to_automorphism(int rank) const {
  std::vector<Word> imgs;
  if (kind == Kind::permutation) {
    for (int i = 0; i < rank; ++i)
      imgs.push_back(Word::reduce({perm_images[i]}));
  } else {
    const Letter x = multiplier;
    for (int i = 1; i <= rank; ++i) {
      Letter y(i, 1);
      if (y.index == x.index) {
        imgs.push_back(Word::reduce({y}));
        continue;
      }
      bool y_in = in_set[y.code()];
      bool yinv_in = in_set[y.inverse().code()];
      std::vector<Letter> raw;
      if (y_in && !yinv_in) {
        raw = {y, x};
      } else if (!y_in && yinv_in) {
        raw = {x.inverse(), y};
      } else if (y_in && yinv_in) {
        raw = {x.inverse(), y, x};
      } else {
        raw = {y};
      }
      imgs.push_back(Word::reduce(raw));
    }
  }
  return Automorphism(std::move(imgs));
}

std::string WhiteheadMove::describe() const {
  if (kind == Kind::permutation) {
    std::string s = "perm:";
    for (const Letter& l : perm_images) s += l.to_char();
    return s;
  }
  std::string s = "mult:";
  s += multiplier.to_char();
  s += ":";
  for (std::size_t c = 0; c < in_set.size(); ++c)
    if (in_set[c]) s += Letter::from_code(static_cast<int>(c)).to_char();
  return s;
}

std::vector<WhiteheadMove> whitehead_moves(int rank) {
  if (rank < 2) throw std::invalid_argument("whitehead_moves: rank must be >= 2");
  std::vector<WhiteheadMove> out;

  // Type I: signed permutations, identity omitted.
  std::vector<int> perm(rank);
  for (int i = 0; i < rank; ++i) perm[i] = i + 1;
  do {
    for (int signs = 0; signs < (1 << rank); ++signs) {
      WhiteheadMove m;
      m.kind = WhiteheadMove::Kind::permutation;
      bool ident = true;
      for (int i = 0; i < rank; ++i) {
        int sgn = (signs >> i) & 1 ? -1 : 1;
        m.perm_images.emplace_back(perm[i], sgn);
        if (perm[i] != i + 1 || sgn != 1) ident = false;
      }
      if (!ident) out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Type II: multiplier x with a moved set containing x but not x^-1.
  const int letters = 2 * rank;
  for (int xc = 0; xc < letters; ++xc) {
    Letter x = Letter::from_code(xc);
    std::vector<int> others;
    for (int c = 0; c < letters; ++c)
      if (Letter::from_code(c).index != x.index) others.push_back(c);
    const int k = static_cast<int>(others.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
      WhiteheadMove m;
      m.kind = WhiteheadMove::Kind::multiplier;
      m.multiplier = x;
      m.in_set.assign(letters, 0);
      m.in_set[x.code()] = 1;
      for (int b = 0; b < k; ++b)
        if ((mask >> b) & 1) m.in_set[others[b]] = 1;
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<Automorphism> whitehead_generators(int rank) {
  std::vector<Automorphism> out;
  for (const WhiteheadMove& m : whitehead_moves(rank))
    out.push_back(m.to_automorphism(rank));
  return out;
}

MinimizationResult whitehead_minimize(const Word& g, int rank) {
  if (g.empty())
    throw std::invalid_argument("whitehead_minimize: trivial element");
  MinimizationResult res;
  std::vector<WhiteheadMove> moves = whitehead_moves(rank);
  std::vector<Automorphism> auts;
  auts.reserve(moves.size());
  for (const auto& m : moves) auts.push_back(m.to_automorphism(rank));

  Word cur = cyclic_reduce(g).core.word();
  for (;;) {
    bool improved = false;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      // only multiplier moves can shorten; permutations preserve length
      if (moves[i].kind != WhiteheadMove::Kind::multiplier) continue;
      Word image = auts[i].apply(cur);
      CyclicWord core = cyclic_reduce(image).core;
      if (core.size() < cur.size()) {
        cur = core.word();
        res.moves.push_back(moves[i]);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  res.minimum = canonical_conjugacy(cur);
  return res;
}

bool is_primitive(const Word& g, int rank) {
  if (g.empty()) throw std::invalid_argument("is_primitive: trivial element");
  return whitehead_minimize(g, rank).minimum.size() == 1;
}

std::optional<Word> is_inner(const Automorphism& phi) {
  const int rank = phi.rank();
  const Word& u = phi.image(1);
  CyclicReduction red = cyclic_reduce(u);
  Word a1 = Word::reduce({Letter(1, 1)});
  if (red.core.word() != a1) return std::nullopt;

  std::size_t maxlen = 1;
  for (int i = 1; i <= rank; ++i) maxlen = std::max(maxlen, phi.image(i).size());
  const int bound = static_cast<int>(maxlen) + 2;

  for (int k = -bound; k <= bound; ++k) {
    Word w = concat(red.conjugator, a1.pow(k));
    bool ok = true;
    for (int i = 1; i <= rank && ok; ++i) {
      Word gen = Word::reduce({Letter(i, 1)});
      Word conj = concat(w, concat(gen, w.inverse()));
      if (conj != phi.image(i)) ok = false;
    }
    if (ok) return w;
  }
  return std::nullopt;
}

std::set<CyclicWord> orbit_ball(const std::vector<Automorphism>& gens,
                                const Word& g, int radius,
                                std::size_t max_classes) {
  if (radius < 0) throw std::invalid_argument("orbit_ball: negative radius");
  if (g.empty()) throw std::invalid_argument("orbit_ball: trivial element");

  std::vector<Automorphism> step;
  for (const auto& f : gens) {
    step.push_back(f);
    Automorphism inv = f.inverse();
    if (std::find(step.begin(), step.end(), inv) == step.end())
      step.push_back(std::move(inv));
  }

  std::set<CyclicWord> seen;
  std::deque<CyclicWord> frontier;
  CyclicWord start = canonical_conjugacy(g);
  seen.insert(start);
  frontier.push_back(start);

  for (int r = 0; r < radius; ++r) {
    std::deque<CyclicWord> next;
    for (const CyclicWord& c : frontier) {
      Word w = c.word();
      for (const auto& f : step) {
        CyclicWord img = canonical_conjugacy(f.apply(w));
        if (seen.insert(img).second) {
          if (seen.size() > max_classes)
            throw OrbitCapExceeded("orbit_ball: class cap exceeded");
          next.push_back(std::move(img));
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return seen;
}

}  // namespace cvn
