// cvn: exact computations in Culler-Vogtmann Outer space at desk scale.
//
// Exit codes: 0 all checks passed, 1 usage error, 2 assertion or experiment
// failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cvn/candidates.hpp"
#include "cvn/currents.hpp"
#include "cvn/experiments.hpp"
#include "cvn/marked_graph.hpp"
#include "cvn/tao.hpp"

#include <json.hpp>

namespace {

using namespace cvn;

struct GlobalOpts {
  std::uint64_t seed = 1;
  int rank = 2;
  int depth = 3;
  int max_length = 0;  // 0 = per-command default
  std::string out;
  std::string format = "csv";
};

// CVN_OUT_DIR, when set, anchors relative --out paths.
void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::path p = g.out;
  if (const char* dir = std::getenv("CVN_OUT_DIR"); dir && p.is_relative())
    p = std::filesystem::path(dir) / p;
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot open output file " + p.string());
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

MarkedMetricGraph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open graph file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return MarkedMetricGraph::from_json(ss.str());
}

std::string candidates_table(const GlobalOpts& g,
                             const std::vector<Candidate>& cands,
                             const MarkedMetricGraph* tp) {
  if (g.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Candidate& c : cands) {
      nlohmann::ordered_json r;
      r["kind"] = to_string(c.kind);
      r["word"] = c.word.str();
      r["length_in_T"] = rational_to_string(c.length);
      if (tp) {
        Rational lp = tp->translation_length(c.word.word());
        r["length_in_Tprime"] = rational_to_string(lp);
        r["ratio"] = rational_to_string(lp / c.length);
      }
      rows.push_back(r);
    }
    return rows.dump(2);
  }
  std::string out = tp ? "kind,word,length_in_T,length_in_Tprime,ratio\n"
                       : "kind,word,length_in_T\n";
  for (const Candidate& c : cands) {
    out += to_string(c.kind) + "," + c.word.str() + "," +
           rational_to_string(c.length);
    if (tp) {
      Rational lp = tp->translation_length(c.word.word());
      out += "," + rational_to_string(lp) + "," +
             rational_to_string(lp / c.length);
    }
    out += "\n";
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"exact computations in Culler-Vogtmann Outer space"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--rank", g.rank, "free group rank");
  app.add_option("--depth", g.depth, "cylinder coordinate depth");
  app.add_option("--max-length", g.max_length, "word length bound");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  int exit_code = 0;

  // validate
  std::string graph_path, graph2_path, word_text, aut_text, gens_text;
  auto* validate = app.add_subcommand("validate", "check cv_N invariants");
  validate->add_option("--graph", graph_path, "graph json file")->required();
  validate->callback([&] {
    MarkedMetricGraph t = load_graph(graph_path);
    if (t.valid()) {
      write_output(g, "ok");
    } else {
      std::string out;
      for (const auto& d : t.validate()) out += d + "\n";
      write_output(g, out);
      exit_code = 2;
    }
  });

  // length
  auto* length = app.add_subcommand("length", "translation length of a word");
  length->add_option("--graph", graph_path)->required();
  length->add_option("--word", word_text)->required();
  length->callback([&] {
    MarkedMetricGraph t = load_graph(graph_path);
    Word w = Word::parse(word_text, t.rank());
    write_output(g, rational_to_string(t.translation_length(w)));
  });

  // distortion
  bool brute = false;
  auto* dist = app.add_subcommand("distortion", "extremal Lipschitz distortion");
  dist->add_option("--graph1", graph_path)->required();
  dist->add_option("--graph2", graph2_path)->required();
  dist->add_flag("--brute-force", brute,
                 "exhaustive oracle over words up to --max-length");
  dist->callback([&] {
    MarkedMetricGraph t = load_graph(graph_path);
    MarkedMetricGraph tp = load_graph(graph2_path);
    if (brute) {
      int window = g.max_length ? g.max_length : (t.rank() == 2 ? 10 : 7);
      write_output(g, rational_to_string(distortion_bruteforce(t, tp, window)));
    } else {
      write_output(g, rational_to_string(distortion(t, tp)));
    }
  });

  // candidates
  auto* cand = app.add_subcommand("candidates", "the candidate set U_T");
  cand->add_option("--graph", graph_path)->required();
  cand->add_option("--graph2", graph2_path, "second graph for length ratios");
  cand->callback([&] {
    MarkedMetricGraph t = load_graph(graph_path);
    std::optional<MarkedMetricGraph> tp;
    if (!graph2_path.empty()) tp = load_graph(graph2_path);
    write_output(g, candidates_table(g, candidate_set(t),
                                     tp ? &*tp : nullptr));
  });

  // rigidity-check
  auto* rig = app.add_subcommand("rigidity-check",
                                 "relative rigidity: witness or equality");
  rig->add_option("--graph1", graph_path)->required();
  rig->add_option("--graph2", graph2_path)->required();
  rig->callback([&] {
    MarkedMetricGraph t = load_graph(graph_path);
    MarkedMetricGraph tp = load_graph(graph2_path);
    auto res = rigidity_witness(t, tp);
    nlohmann::ordered_json j;
    if (res.equal) {
      j["verdict"] = "equal";
    } else {
      j["verdict"] = "witness";
      j["witness"] = res.witness->word.str();
      j["kind"] = to_string(res.witness->kind);
      j["length_in_T"] = rational_to_string(res.length_in_t);
      j["length_in_Tprime"] = rational_to_string(res.length_in_tp);
    }
    write_output(g, j.dump(2));
  });

  // orbit
  int radius = 2;
  auto* orbit_cmd = app.add_subcommand("orbit",
                                       "orbit ball of a conjugacy class");
  orbit_cmd->add_option("--word", word_text)->required();
  orbit_cmd->add_option("--radius", radius, "ball radius");
  orbit_cmd->add_option("--gens", gens_text,
                        "semicolon-separated automorphisms (default: "
                        "Whitehead generators)");
  orbit_cmd->callback([&] {
    Word w = Word::parse(word_text, g.rank);
    std::vector<Automorphism> gens;
    if (gens_text.empty()) {
      gens = whitehead_generators(g.rank);
    } else {
      std::stringstream ss(gens_text);
      std::string item;
      while (std::getline(ss, item, ';'))
        gens.push_back(Automorphism::parse(item));
    }
    std::string out;
    if (g.format == "json") {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& c : orbit_ball(gens, w, radius)) rows.push_back(c.str());
      out = rows.dump(2);
    } else {
      for (const auto& c : orbit_ball(gens, w, radius)) out += c.str() + "\n";
    }
    write_output(g, out);
  });

  // iwip-iterate
  int steps = 20;
  bool dump_coords = false;
  auto* iwip = app.add_subcommand("iwip-iterate",
                                  "projectivized counting currents along an "
                                  "automorphism orbit");
  iwip->add_option("--aut", aut_text, "automorphism, e.g. \"ab a\"")
      ->required();
  iwip->add_option("--word", word_text)->required();
  iwip->add_option("--steps", steps, "number of iterations");
  iwip->add_flag("--coords", dump_coords,
                 "dump the final coordinates as CSV instead of the report");
  iwip->callback([&] {
    Automorphism phi = Automorphism::parse(aut_text);
    Word w = Word::parse(word_text, phi.rank());
    auto rep = iterate_iwip(phi, w, steps, g.depth);
    if (dump_coords) {
      write_output(g, coords_csv(rep.coords.back().coords()));
      return;
    }
    nlohmann::ordered_json j;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& s : rep.steps) {
      nlohmann::ordered_json r;
      r["n"] = s.n;
      r["word_length"] = s.word_length;
      if (s.n > 0) {
        r["distance"] = rational_to_string(s.distance_from_prev);
        r["distance_approx"] = to_double(s.distance_from_prev);
      }
      j["records"].push_back(r);
    }
    j["converged"] = rep.converged;
    j["converged_at"] = rep.converged_at;
    write_output(g, j.dump(2));
  });

  // tao-demo
  std::string t_samples = "1/4,1/3,1/2,2/3";
  auto* tao = app.add_subcommand("tao-demo",
                                 "translation lengths on the boundary family "
                                 "T_t");
  tao->add_option("--t-samples", t_samples, "comma-separated parameters");
  tao->callback([&] {
    std::vector<Rational> samples;
    std::stringstream ss(t_samples);
    std::string item;
    while (std::getline(ss, item, ',')) samples.push_back(parse_rational(item));
    int max_len = g.max_length ? g.max_length : 8;
    auto rep = tao_primitive_scan(max_len, samples);

    nlohmann::ordered_json j;
    j["primitives_checked"] = rep.primitives_checked;
    j["all_constant"] = rep.all_constant();
    j["commutator"] = nlohmann::ordered_json::array();
    for (const Rational& t : samples) {
      Rational len = tao_length(TaoTreePoint{t}, Word::parse("abAB"));
      bool match = len == 2 - 2 * t;
      j["commutator"].push_back({{"t", rational_to_string(t)},
                                 {"length", rational_to_string(len)},
                                 {"matches_2_minus_2t", match}});
      if (!match) exit_code = 2;
    }
    if (!rep.all_constant()) exit_code = 2;
    write_output(g, j.dump(2));
  });

  // f2-demo
  auto* f2 = app.add_subcommand("f2-demo",
                                "two distinct roses with matching commutator "
                                "orbit lengths");
  f2->callback([&] {
    auto rep = f2_commutator_demo();
    write_output(g, rep.to_json());
    if (!rep.passed()) exit_code = 2;
  });

  // s0-probe
  int trials = 50;
  auto* s0 = app.add_subcommand("s0-probe",
                                "sampled rigidity of S0 on covolume-1 pairs");
  s0->add_option("--trials", trials, "number of sampled pairs");
  s0->callback([&] {
    ExperimentConfig cfg;
    cfg.seed = g.seed;
    cfg.trial_count = trials;
    auto rep = s0_probe(cfg);
    write_output(g, rep.to_json());
    if (rep.violations > 0) exit_code = 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
