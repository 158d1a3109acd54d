#include "cvn/marked_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <random>
#include <set>
#include <tuple>

#include <json.hpp>

namespace cvn {

MarkedMetricGraph::MarkedMetricGraph(int rank,
                                     std::vector<std::string> vertex_names,
                                     std::vector<Edge> edges,
                                     std::vector<Word> basis)
    : rank_(rank),
      vertex_names_(std::move(vertex_names)),
      edges_(std::move(edges)),
      basis_(std::move(basis)) {
  if (rank_ < 1) throw std::invalid_argument("rank must be positive");
  if (vertex_names_.empty()) throw std::invalid_argument("no vertices");
  {
    std::set<std::string> names(vertex_names_.begin(), vertex_names_.end());
    if (names.size() != vertex_names_.size())
      throw std::invalid_argument("duplicate vertex name");
  }
  std::set<std::string> ids;
  for (const Edge& e : edges_) {
    if (e.from < 0 || e.from >= vertex_count() || e.to < 0 ||
        e.to >= vertex_count())
      throw std::invalid_argument("edge endpoint out of range");
    if (!ids.insert(e.id).second)
      throw std::invalid_argument("duplicate edge id '" + e.id + "'");
  }
  build_derived();
}

int MarkedMetricGraph::degree(int vertex) const {
  int d = 0;
  for (const Edge& e : edges_) {
    if (e.from == vertex) ++d;
    if (e.to == vertex) ++d;
  }
  return d;
}

int MarkedMetricGraph::step_origin(int step) const {
  const Edge& e = edges_[EdgeCircuit::pair_of(step)];
  return EdgeCircuit::reversed(step) ? e.to : e.from;
}

int MarkedMetricGraph::step_target(int step) const {
  const Edge& e = edges_[EdgeCircuit::pair_of(step)];
  return EdgeCircuit::reversed(step) ? e.from : e.to;
}

void MarkedMetricGraph::build_derived() {
  diagnostics_.clear();
  const int V = vertex_count();
  const int E = static_cast<int>(edges_.size());

  for (const Edge& e : edges_)
    if (e.length <= 0)
      diagnostics_.push_back("edge '" + e.id + "' has non-positive length");

  // connectivity over all edges
  {
    std::vector<char> seen(V, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Edge& e : edges_) {
        for (int w : {e.from, e.to}) {
          if ((e.from == v || e.to == v) && !seen[w]) {
            seen[w] = 1;
            q.push(w);
          }
        }
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) != V)
      diagnostics_.push_back("graph is not connected");
  }

  if (E - V + 1 != rank_)
    diagnostics_.push_back("first Betti number " + std::to_string(E - V + 1) +
                           " differs from rank " + std::to_string(rank_));

  for (int v = 0; v < V; ++v)
    if (degree(v) < 3)
      diagnostics_.push_back("degree-" + std::to_string(degree(v)) +
                             " vertex '" + vertex_names_[v] + "'");

  // spanning tree check
  int tree_edges = 0;
  std::vector<int> tree_parent(V, -1), tree_parent_step(V, -1);
  {
    for (const Edge& e : edges_)
      if (e.in_tree) ++tree_edges;
    std::vector<char> seen(V, 0);
    std::queue<int> q;
    q.push(base_);
    seen[base_] = 1;
    int reached = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int i = 0; i < E; ++i) {
        const Edge& e = edges_[i];
        if (!e.in_tree) continue;
        if (e.from == v && !seen[e.to]) {
          seen[e.to] = 1;
          tree_parent[e.to] = v;
          tree_parent_step[e.to] = EdgeCircuit::forward(i);
          q.push(e.to);
          ++reached;
        } else if (e.to == v && !seen[e.from]) {
          seen[e.from] = 1;
          tree_parent[e.from] = v;
          tree_parent_step[e.from] = EdgeCircuit::backward(i);
          q.push(e.from);
          ++reached;
        }
      }
    }
    if (tree_edges != V - 1 || reached != V) {
      diagnostics_.push_back("tree edges do not form a spanning tree");
      return;  // circuits are meaningless without one
    }
  }

  // fundamental circuits: base -> o(e), e, t(e) -> base
  auto path_from_base = [&](int v) {
    std::vector<int> steps;
    while (v != base_) {
      steps.push_back(tree_parent_step[v]);
      v = tree_parent[v];
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  nontree_.clear();
  circuits_.clear();
  for (int i = 0; i < E; ++i) {
    if (edges_[i].in_tree) continue;
    nontree_.push_back(i);
    EdgeCircuit c;
    c.steps = path_from_base(edges_[i].from);
    c.steps.push_back(EdgeCircuit::forward(i));
    std::vector<int> back = path_from_base(edges_[i].to);
    std::reverse(back.begin(), back.end());
    for (int s : back) c.steps.push_back(EdgeCircuit::reverse_step(s));
    circuits_.push_back(std::move(c));
  }

  if (static_cast<int>(basis_.size()) != rank_) {
    diagnostics_.push_back("basis word count differs from rank");
    return;
  }
  for (const Word& u : basis_) {
    if (u.max_generator() > rank_) {
      diagnostics_.push_back("basis word uses letters beyond the rank");
      return;
    }
  }
  marking_ = Automorphism::try_make(basis_);
  if (!marking_) diagnostics_.push_back("marking not an isomorphism");
}

Rational MarkedMetricGraph::circuit_length(const EdgeCircuit& c) const {
  Rational sum = 0;
  for (int s : c.steps) sum += edges_[EdgeCircuit::pair_of(s)].length;
  return sum;
}

CyclicWord MarkedMetricGraph::circuit_to_word(const EdgeCircuit& c) const {
  if (!valid()) throw std::logic_error("invalid graph: " + diagnostics_.front());
  if (c.steps.empty()) throw std::invalid_argument("empty circuit");
  const std::size_t n = c.steps.size();
  for (std::size_t i = 0; i < n; ++i) {
    int s = c.steps[i], t = c.steps[(i + 1) % n];
    if (step_target(s) != step_origin(t))
      throw std::invalid_argument("circuit is not closed");
    if (t == EdgeCircuit::reverse_step(s))
      throw std::invalid_argument("circuit is not immersed");
  }

  std::map<int, int> symbol_of;  // pair index -> 1-based symbol
  for (std::size_t i = 0; i < nontree_.size(); ++i)
    symbol_of[nontree_[i]] = static_cast<int>(i) + 1;

  std::vector<Letter> syms;
  for (int s : c.steps) {
    auto it = symbol_of.find(EdgeCircuit::pair_of(s));
    if (it == symbol_of.end()) continue;  // tree edge
    syms.emplace_back(it->second, EdgeCircuit::reversed(s) ? -1 : 1);
  }
  Word sym_word = Word::reduce(syms);
  return canonical_conjugacy(substitute(sym_word, basis_));
}

Rational MarkedMetricGraph::translation_length(const Word& g) const {
  if (g.empty()) return 0;
  if (!valid()) throw std::logic_error("invalid graph: " + diagnostics_.front());

  Word sym = marking_->apply_inverse(g);

  std::vector<int> path;
  for (const Letter& x : sym.letters()) {
    const EdgeCircuit& c = circuits_[x.index - 1];
    if (x.sign > 0) {
      for (int s : c.steps) {
        if (!path.empty() && path.back() == EdgeCircuit::reverse_step(s))
          path.pop_back();
        else
          path.push_back(s);
      }
    } else {
      for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) {
        int s = EdgeCircuit::reverse_step(*it);
        if (!path.empty() && path.back() == EdgeCircuit::reverse_step(s))
          path.pop_back();
        else
          path.push_back(s);
      }
    }
  }

  // cyclic reduction of the loop
  std::size_t lo = 0, hi = path.size();
  while (hi - lo >= 2 && path[lo] == EdgeCircuit::reverse_step(path[hi - 1])) {
    ++lo;
    --hi;
  }

  Rational sum = 0;
  for (std::size_t i = lo; i < hi; ++i)
    sum += edges_[EdgeCircuit::pair_of(path[i])].length;
  return sum;
}

Rational MarkedMetricGraph::volume() const {
  Rational v = 0;
  for (const Edge& e : edges_) v += e.length;
  return v;
}

MarkedMetricGraph MarkedMetricGraph::scale(const Rational& c) const {
  if (c <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<Edge> es = edges_;
  for (Edge& e : es) e.length *= c;
  return MarkedMetricGraph(rank_, vertex_names_, std::move(es), basis_);
}

MarkedMetricGraph MarkedMetricGraph::normalize_covolume() const {
  return scale(Rational(1) / volume());
}

MarkedMetricGraph MarkedMetricGraph::act(const Automorphism& phi) const {
  if (phi.rank() != rank_) throw std::invalid_argument("act: rank mismatch");
  std::vector<Word> new_basis;
  for (const Word& u : basis_) new_basis.push_back(phi.apply_inverse(u));
  return MarkedMetricGraph(rank_, vertex_names_, edges_, std::move(new_basis));
}

std::string MarkedMetricGraph::to_json() const {
  nlohmann::ordered_json j;
  j["rank"] = rank_;
  j["vertices"] = vertex_names_;
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : edges_) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["from"] = vertex_names_[e.from];
    je["to"] = vertex_names_[e.to];
    je["length"] = rational_to_string(e.length);
    j["edges"].push_back(je);
  }
  j["tree"] = nlohmann::ordered_json::array();
  for (const Edge& e : edges_)
    if (e.in_tree) j["tree"].push_back(e.id);
  j["basis"] = nlohmann::ordered_json::array();
  for (const Word& u : basis_) j["basis"].push_back(u.str());
  return j.dump(2);
}

MarkedMetricGraph MarkedMetricGraph::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("graph json: ") + e.what());
  }
  if (!j.contains("rank") || !j.contains("vertices") || !j.contains("edges") ||
      !j.contains("tree") || !j.contains("basis"))
    throw std::invalid_argument(
        "graph json: need rank, vertices, edges, tree, basis");

  int rank = j["rank"].get<int>();
  std::vector<std::string> names =
      j["vertices"].get<std::vector<std::string>>();
  std::map<std::string, int> vid;
  for (std::size_t i = 0; i < names.size(); ++i)
    vid[names[i]] = static_cast<int>(i);

  std::set<std::string> tree(j["tree"].begin(), j["tree"].end());
  std::vector<Edge> edges;
  for (const auto& je : j["edges"]) {
    Edge e;
    e.id = je.at("id").get<std::string>();
    auto from = vid.find(je.at("from").get<std::string>());
    auto to = vid.find(je.at("to").get<std::string>());
    if (from == vid.end() || to == vid.end())
      throw std::invalid_argument("graph json: edge '" + e.id +
                                  "' references unknown vertex");
    e.from = from->second;
    e.to = to->second;
    e.length = parse_rational(je.at("length").get<std::string>());
    e.in_tree = tree.count(e.id) > 0;
    edges.push_back(std::move(e));
  }

  std::vector<Word> basis;
  for (const auto& bw : j["basis"])
    basis.push_back(Word::parse(bw.get<std::string>()));

  return MarkedMetricGraph(rank, std::move(names), std::move(edges),
                           std::move(basis));
}

namespace {

// Backtracking enumeration of length-preserving graph isomorphisms a -> b.
// `edge_image[i]` is the oriented step of b that the stored orientation of
// a's pair i maps to.
struct IsoSearch {
  const MarkedMetricGraph& a;
  const MarkedMetricGraph& b;
  std::vector<int> vmap;        // a-vertex -> b-vertex or -1
  std::vector<char> vused;
  std::vector<int> edge_image;  // a-pair -> oriented b-step or -1
  std::vector<char> eused;      // b-pair used

  IsoSearch(const MarkedMetricGraph& a_, const MarkedMetricGraph& b_)
      : a(a_), b(b_) {}

  bool run(const std::function<bool(const IsoSearch&)>& on_found) {
    vmap.assign(a.vertex_count(), -1);
    vused.assign(b.vertex_count(), 0);
    edge_image.assign(a.edges().size(), -1);
    eused.assign(b.edges().size(), 0);
    return place_vertex(0, on_found);
  }

  bool place_vertex(int v, const std::function<bool(const IsoSearch&)>& cb) {
    if (v == a.vertex_count()) return place_edge(0, cb);
    for (int w = 0; w < b.vertex_count(); ++w) {
      if (vused[w] || a.degree(v) != b.degree(w)) continue;
      vmap[v] = w;
      vused[w] = 1;
      if (place_vertex(v + 1, cb)) return true;
      vused[w] = 0;
      vmap[v] = -1;
    }
    return false;
  }

  bool place_edge(int i, const std::function<bool(const IsoSearch&)>& cb) {
    if (i == static_cast<int>(a.edges().size())) return cb(*this);
    const auto& ea = a.edges()[i];
    int fa = vmap[ea.from], ta = vmap[ea.to];
    for (int jp = 0; jp < static_cast<int>(b.edges().size()); ++jp) {
      if (eused[jp]) continue;
      const auto& eb = b.edges()[jp];
      if (eb.length != ea.length) continue;
      for (int dir = 0; dir < 2; ++dir) {
        int bf = dir == 0 ? eb.from : eb.to;
        int bt = dir == 0 ? eb.to : eb.from;
        if (bf != fa || bt != ta) continue;
        eused[jp] = 1;
        edge_image[i] = dir == 0 ? EdgeCircuit::forward(jp)
                                 : EdgeCircuit::backward(jp);
        if (place_edge(i + 1, cb)) return true;
        eused[jp] = 0;
        edge_image[i] = -1;
      }
    }
    return false;
  }
};

}  // namespace

bool equal_in_cv(const MarkedMetricGraph& a, const MarkedMetricGraph& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("rank mismatch");
  if (!a.valid() || !b.valid())
    throw std::logic_error("equal_in_cv requires valid graphs");
  if (a.vertex_count() != b.vertex_count() ||
      a.edges().size() != b.edges().size())
    return false;
  {
    std::vector<Rational> la, lb;
    for (const auto& e : a.edges()) la.push_back(e.length);
    for (const auto& e : b.edges()) lb.push_back(e.length);
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb) return false;
  }

  IsoSearch search(a, b);
  std::map<int, int> b_symbol_of;  // b pair index -> 1-based symbol
  for (std::size_t k = 0; k < b.nontree_pairs().size(); ++k)
    b_symbol_of[b.nontree_pairs()[k]] = static_cast<int>(k) + 1;

  return search.run([&](const IsoSearch& iso) {
    // Map each fundamental circuit of `a` through the isomorphism and read
    // it in `b`; this expresses the induced automorphism on a's basis.
    // Base-path conjugation only touches tree edges, which spell no symbols,
    // so reading the mapped loops directly is base-point consistent.
    std::vector<Word> on_a_basis;
    for (std::size_t i = 0; i < a.nontree_pairs().size(); ++i) {
      std::vector<Letter> syms;
      for (int s : a.fundamental_circuit(static_cast<int>(i)).steps) {
        int img = iso.edge_image[EdgeCircuit::pair_of(s)];
        int mapped = EdgeCircuit::reversed(s) ? EdgeCircuit::reverse_step(img)
                                              : img;
        auto it = b_symbol_of.find(EdgeCircuit::pair_of(mapped));
        if (it == b_symbol_of.end()) continue;
        syms.emplace_back(it->second,
                          EdgeCircuit::reversed(mapped) ? -1 : 1);
      }
      on_a_basis.push_back(substitute(Word::reduce(syms), b.basis()));
    }

    // psi(u_i) = W_i determines psi on the standard generators.
    std::vector<Word> images;
    for (int i = 1; i <= a.rank(); ++i) {
      Word sym = rewrite_in_basis(Word::reduce({Letter(i, 1)}), a.basis());
      images.push_back(substitute(sym, on_a_basis));
    }
    auto psi = Automorphism::try_make(std::move(images));
    if (!psi) return false;
    return is_inner(*psi).has_value();
  });
}

namespace {

MarkedMetricGraph make_graph(int rank, int nv,
                             std::vector<std::tuple<int, int, bool>> edge_list,
                             std::vector<Word> basis) {
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i));
  std::vector<MarkedMetricGraph::Edge> edges;
  int k = 0;
  for (auto [from, to, tree] : edge_list) {
    MarkedMetricGraph::Edge e;
    e.id = "e" + std::to_string(k++);
    e.from = from;
    e.to = to;
    e.length = 1;
    e.in_tree = tree;
    edges.push_back(std::move(e));
  }
  return MarkedMetricGraph(rank, std::move(names), std::move(edges),
                           std::move(basis));
}

std::vector<Word> standard_basis(int rank) {
  std::vector<Word> b;
  for (int i = 1; i <= rank; ++i) b.push_back(Word::reduce({Letter(i, 1)}));
  return b;
}

std::vector<CatalogEntry> build_catalog(int rank) {
  std::vector<CatalogEntry> out;
  if (rank == 2) {
    out.push_back({"rose2",
                   make_graph(2, 1, {{0, 0, false}, {0, 0, false}},
                              standard_basis(2)),
                   2});
    out.push_back({"theta",
                   make_graph(2, 2,
                              {{0, 1, true}, {0, 1, false}, {0, 1, false}},
                              standard_basis(2)),
                   2});
    out.push_back({"barbell",
                   make_graph(2, 2,
                              {{0, 0, false}, {0, 1, true}, {1, 1, false}},
                              standard_basis(2)),
                   2});
  } else if (rank == 3) {
    out.push_back({"rose3",
                   make_graph(3, 1,
                              {{0, 0, false}, {0, 0, false}, {0, 0, false}},
                              standard_basis(3)),
                   2});
    out.push_back({"theta4",
                   make_graph(3, 2,
                              {{0, 1, true},
                               {0, 1, false},
                               {0, 1, false},
                               {0, 1, false}},
                              standard_basis(3)),
                   3});
    out.push_back({"k4",
                   make_graph(3, 4,
                              {{0, 1, true},
                               {0, 2, true},
                               {0, 3, true},
                               {1, 2, false},
                               {1, 3, false},
                               {2, 3, false}},
                              standard_basis(3)),
                   3});
    out.push_back({"theta_loop",
                   make_graph(3, 2,
                              {{0, 1, true},
                               {0, 1, false},
                               {0, 1, false},
                               {0, 0, false}},
                              standard_basis(3)),
                   4});
    out.push_back({"chain3",
                   make_graph(3, 3,
                              {{0, 0, false},
                               {0, 1, true},
                               {1, 1, false},
                               {1, 2, true},
                               {2, 2, false}},
                              standard_basis(3)),
                   2});
    out.push_back({"handcuffs",
                   make_graph(3, 2,
                              {{0, 0, false},
                               {0, 1, true},
                               {0, 1, false},
                               {1, 1, false}},
                              standard_basis(3)),
                   4});
  } else {
    // generic fallback: the rank-N rose
    std::vector<std::tuple<int, int, bool>> edge_list;
    for (int i = 0; i < rank; ++i) edge_list.emplace_back(0, 0, false);
    out.push_back({"rose" + std::to_string(rank),
                   make_graph(rank, 1, std::move(edge_list), standard_basis(rank)),
                   2});
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& graph_catalog(int rank) {
  static std::map<int, std::vector<CatalogEntry>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(rank);
  if (it == cache.end()) it = cache.emplace(rank, build_catalog(rank)).first;
  return it->second;
}

MarkedMetricGraph random_marked_graph(int rank, std::uint64_t seed) {
  if (rank < 2) throw std::invalid_argument("rank must be >= 2");
  std::mt19937_64 rng(seed);
  const auto& catalog = graph_catalog(rank);
  const CatalogEntry& entry =
      catalog[std::uniform_int_distribution<std::size_t>(
          0, catalog.size() - 1)(rng)];

  const int brute_window = rank == 2 ? 10 : 7;
  const int max_image_len =
      std::max(1, brute_window / entry.max_candidate_symbols);

  std::vector<MarkedMetricGraph::Edge> edges = entry.graph.edges();
  std::uniform_int_distribution<int> small(1, 9);
  for (auto& e : edges) e.length = Rational(small(rng), small(rng));

  // Random marking: a short word in the Whitehead generators, resampled
  // until the images fit the per-shape length budget. Signed permutations
  // always fit, so the fallback is harmless.
  const auto gens = whitehead_generators(rank);
  std::vector<Word> basis = standard_basis(rank);
  std::uniform_int_distribution<int> len_dist(0, 3);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Automorphism phi = Automorphism::identity(rank);
    int moves = len_dist(rng);
    for (int i = 0; i < moves; ++i) phi = compose(gens[pick(rng)], phi);
    std::size_t maxlen = 0;
    for (int i = 1; i <= rank; ++i)
      maxlen = std::max(maxlen, phi.image(i).size());
    if (maxlen <= static_cast<std::size_t>(max_image_len)) {
      basis = phi.images();
      break;
    }
  }

  return MarkedMetricGraph(rank, entry.graph.vertex_names(), std::move(edges),
                           std::move(basis));
}

}  // namespace cvn
