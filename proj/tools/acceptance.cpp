// SPDX-License-Identifier: MIT
// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "demand_example.hpp"
#include "oracle_rnode.hpp"
#include "upt/cli.hpp"
#include "upt/corpus.hpp"
#include "upt/errors.hpp"
#include "upt/oracle.hpp"
#include "upt/rnode_flow.hpp"
#include "upt/rnode_tw.hpp"

using namespace upt;

namespace {

// Pinned tolerances.
constexpr double kPipelineSeconds = 600;   // criterion 1
constexpr double kNodeSetSeconds = 900;    // criterion 2
constexpr int kNodeVertexLimit = 9;        // criterion 2
constexpr int kFixedEdgeLimit = 10;        // criterion 4
constexpr int kShapesPerTurn = 18;         // criterion 6
constexpr int kPairsPerCell = 6;           // criterion 6
constexpr int kSetSlope = 72;              // criterion 6: |F| <= 72 sigma + 54
constexpr int kSetOffset = 54;
constexpr int kNodeOracleGuard = 18;       // edges of a pertinent graph sent to the oracle

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Tally {
  long checked = 0;
  long failures = 0;
  long skipped = 0;
  double seconds = 0;
  std::string first;
  void fail(const std::string& why) {
    if (failures++ == 0) first = why;
  }
  void expect(bool ok, const std::function<std::string()>& why) {
    ++checked;
    if (!ok) fail(why());
  }
};

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::string counts(const Tally& t) {
  std::ostringstream s;
  s << "checked=" << t.checked << " failures=" << t.failures;
  if (t.skipped) s << " skipped=" << t.skipped;
  char buf[32];
  std::snprintf(buf, sizeof buf, " time=%.1fs", t.seconds);
  s << buf;
  if (t.failures) s << " first=\"" << t.first << "\"";
  return s.str();
}

// Blocks of the expanded digraph with at least two edges.
std::vector<Digraph> blocks_of(const Digraph& g) {
  Digraph x = expand(g).digraph;
  std::vector<Digraph> out;
  for (const auto& b : block_cut_tree(x).blocks)
    if (b.edges.size() >= 2) out.push_back(edge_subgraph(x, b.edges));
  return out;
}

Line pipeline(const std::vector<CorpusInstance>& corpus) {
  Tally t;
  const auto start = Clock::now();
  const std::vector<RNodeSubprocedure> backends = {flow_subprocedure(), treewidth_subprocedure()};
  for (const auto& inst : corpus) {
    const bool expect = brute_force_upward_planar(inst.graph).upward;
    for (const auto& sub : backends)
      for (TauPolicy p : {TauPolicy::Safe, TauPolicy::Sources}) {
        DecideOptions opt;
        opt.policy = p;
        const bool got = decide_upward_planar(inst.graph, sub, opt).upward;
        t.expect(got == expect, [&] { return inst.name + " " + sub.name + "/" + to_string(p); });
      }
  }
  t.seconds = seconds_since(start);
  const bool in_time = t.seconds < kPipelineSeconds;
  return {1, "oracle equivalence of the whole pipeline", t.failures == 0 && in_time && t.checked > 0,
          counts(t) + (in_time ? "" : " (over time limit)")};
}

struct NodeTallies {
  Tally oracle, cross, turns, sizes, boring;
};

// Sweeps every block of every instance under every root edge.
NodeTallies node_sweep(const std::vector<CorpusInstance>& corpus) {
  NodeTallies n;
  const auto flow = flow_subprocedure();
  const auto tw = treewidth_subprocedure();
  for (const auto& inst : corpus) {
    int block_id = 0;
    for (const Digraph& b : blocks_of(inst.graph)) {
      ++block_id;
      for (int root = 0; root < b.m(); ++root) {
        const std::string where =
            inst.name + " block " + std::to_string(block_id) + " root " + std::to_string(root);
        std::map<TauPolicy, BiconnectedResult> by_policy;
        for (TauPolicy p : {TauPolicy::Safe, TauPolicy::Sources}) {
          BiconnectedOptions opt{p, false};
          auto start = Clock::now();
          BiconnectedResult f = biconnected_feasible(b, root, flow, opt);
          BiconnectedResult w = biconnected_feasible(b, root, tw, opt);
          for (int x = 0; x < f.tree.size(); ++x) {
            if (f.tree.node(x).kind != NodeKind::R || !f.computed[x]) continue;
            n.cross.expect(w.computed[x] && w.sets[x] == f.sets[x], [&] {
              return where + " node " + std::to_string(x) + " " + to_string(p);
            });
          }
          n.cross.seconds += seconds_since(start);

          start = Clock::now();
          for (int x = 0; x < f.tree.size(); ++x) {
            if (!f.computed[x]) continue;
            const NodeInfo& info = f.info[x];
            const FeasibleSet& s = f.sets[x];
            const auto [lo, hi] = sources_tau_range(info.sigma);
            for (const Shape& sh : s.shapes())
              n.turns.expect(sh.tl >= lo && sh.tl <= hi && sh.tr >= lo && sh.tr <= hi,
                             [&] { return where + " node " + std::to_string(x) + " " + to_string(sh); });
            const long bound = static_cast<long>(kSetSlope) * info.sigma + kSetOffset;
            n.sizes.expect(static_cast<long>(s.size()) <= bound, [&] {
              return where + " node " + std::to_string(x) + " size " + std::to_string(s.size());
            });
            for (int tau = s.tau_min(); tau <= s.tau_max(); ++tau)
              n.sizes.expect(static_cast<int>(s.with_tau_l(tau).size()) <= kShapesPerTurn &&
                                 static_cast<int>(s.with_tau_r(tau).size()) <= kShapesPerTurn,
                             [&] { return where + " node " + std::to_string(x) + " turn " + std::to_string(tau); });
            n.sizes.expect(s.max_cell_size() <= kPairsPerCell,
                           [&] { return where + " node " + std::to_string(x) + " cell"; });
            if (info.sigma == 0)
              for (const Shape& sh : s.shapes())
                n.boring.expect(boring_kind(sh).has_value(), [&] {
                  return where + " node " + std::to_string(x) + " " + to_string(sh);
                });
          }
          const double spent = seconds_since(start);
          n.turns.seconds += spent / 3;
          n.sizes.seconds += spent / 3;
          n.boring.seconds += spent / 3;
          by_policy.emplace(p, std::move(f));
        }

        auto start = Clock::now();
        const BiconnectedResult& safe = by_policy.at(TauPolicy::Safe);
        const BiconnectedResult& src = by_policy.at(TauPolicy::Sources);
        for (int x = 0; x < safe.tree.size(); ++x) {
          // The root holds the reference edge, not a pertinent graph.
          if (x == safe.tree.root || safe.info[x].vertices > kNodeVertexLimit) continue;
          if (!safe.computed[x] || !src.computed[x]) {
            ++n.oracle.skipped;
            continue;
          }
          Pertinent p = pertinent(b, safe.tree, x);
          if (p.graph.m() > kNodeOracleGuard) {
            ++n.oracle.skipped;
            continue;
          }
          const auto all = brute_force_feasible_set(p.graph, p.u, p.v, kNodeOracleGuard);
          for (TauPolicy pol : {TauPolicy::Safe, TauPolicy::Sources}) {
            const BiconnectedResult* r = &by_policy.at(pol);
            const TauRange range = tau_range(pol, r->info[x]);
            FeasibleSet expect = range.empty_set();
            for (const Shape& s : all)
              if (range.admits(s)) expect.insert(s);
            n.oracle.expect(expect == r->sets[x], [&] {
              return where + " node " + std::to_string(x) + " " + to_string(r->sets[x]);
            });
          }
        }
        n.oracle.seconds += seconds_since(start);
      }
    }
  }
  return n;
}

Line fixed_tests(const std::vector<CorpusInstance>& corpus) {
  Tally t;
  const auto start = Clock::now();
  std::set<std::string> seen;
  for (const auto& inst : corpus)
    for (const Digraph& g : {inst.graph, expand(inst.graph).digraph}) {
      if (g.m() > kFixedEdgeLimit) continue;
      std::string key;
      for (const Edge& e : g.edges()) key += g.name(e.tail) + ">" + g.name(e.head) + " ";
      if (!seen.insert(key).second) continue;
      for_each_embedding(g, [&](const PlanarEmbedding& emb) {
        const auto fast = fixed_embedding_test(g, emb);
        const auto slow = exhaustive_fixed_test(g, emb);
        t.expect(fast.has_value() == slow.has_value() && (!fast || check_up_conditions(g, emb, *fast)),
                 [&] { return inst.name; });
        return true;
      });
    }
  t.seconds = seconds_since(start);
  return {4, "fixed-embedding test equals exhaustive assignment search", t.failures == 0 && t.checked > 0,
          counts(t)};
}

Line catalog(Tally t) {
  // Series compositions of two edges through w with poles u, v.
  const auto start = Clock::now();
  const TauRange wide{-6, 6};
  const int u = 0, v = 1, w = 2;
  const std::set<Shape> hats = {boring_shape(Boring::Hat), boring_shape(Boring::InvertedHat)};
  for (bool uw : {true, false})
    for (bool wv : {true, false}) {
      const FeasibleSet a = q_node_feasible(uw ? Edge{u, w} : Edge{w, u}, u, w, wide);
      const FeasibleSet b = q_node_feasible(wv ? Edge{w, v} : Edge{v, w}, w, v, wide);
      const auto shapes = s_node_feasible(a, b, wide).shapes();
      const std::set<Shape> got(shapes.begin(), shapes.end());
      std::set<Shape> hat_part;
      for (const Shape& s : got)
        if (hats.count(s)) hat_part.insert(s);
      const bool target = uw && !wv;
      t.expect(target ? got == hats : hat_part.empty(), [&] {
        return std::string("series ") + (uw ? "u>w" : "w>u") + " " + (wv ? "w>v" : "v>w");
      });
    }
  t.seconds += seconds_since(start);
  return {7, "boring components stay in the catalog and hats come from u>w, v>w", t.failures == 0 && t.checked > 0,
          counts(t)};
}

Line expansion(const std::vector<CorpusInstance>& corpus) {
  Tally t;
  const auto start = Clock::now();
  const auto flow = flow_subprocedure();
  for (const auto& inst : corpus) {
    const Verdict a = decide_upward_planar(inst.graph, flow);
    const Verdict b = decide_upward_planar(expand(inst.graph).digraph, flow);
    t.expect(a.upward == b.upward && a.sigma == b.sigma, [&] { return inst.name; });
  }
  t.seconds = seconds_since(start);
  return {8, "expansion invariance of the verdict and sigma", t.failures == 0 && t.checked > 0, counts(t)};
}

Line witnesses(const std::vector<CorpusInstance>& corpus) {
  Tally t;
  const auto start = Clock::now();
  long pairs = 0;
  PairSink sink = [&](const RNodeContext&, const TwInstance& inst, const Shape& psi, const ValidPair& p) {
    ++pairs;
    const std::string why = check_valid_pair(inst, psi, p);
    t.expect(why.empty(), [&] { return "pair for " + to_string(psi) + ": " + why; });
  };
  const std::vector<RNodeSubprocedure> backends = {flow_subprocedure(), treewidth_subprocedure(nullptr, 0, sink)};
  for (const auto& inst : corpus)
    for (const auto& sub : backends) {
      DecideOptions opt;
      opt.witness = true;
      Verdict v;
      try {
        v = decide_upward_planar(inst.graph, sub, opt);
      } catch (const std::logic_error& e) {
        t.expect(false, [&] { return inst.name + " " + e.what(); });
        continue;
      }
      if (!v.upward) continue;
      for (const BlockWitness& w : v.witness) {
        const auto be = cli::reconstruct_block(v, w);
        if (!be) {
          ++t.skipped;
          continue;
        }
        t.expect(static_cast<bool>(check_up_conditions(be->block, be->emb, be->lambda)),
                 [&] { return inst.name + " " + sub.name; });
      }
    }
  t.seconds = seconds_since(start);
  return {9, "witness validity", t.failures == 0 && pairs > 0,
          counts(t) + " valid_pairs=" + std::to_string(pairs)};
}

Line demand_regression() {
  Tally t;
  const auto start = Clock::now();
  using K = NetworkSpec::Kind;
  auto ex = testing::demand_example();
  const auto& f = ex.face;
  const NetworkSpec n = build_network(ex.view, ex.s, ex.chosen, ex.pre);
  const std::vector<std::pair<std::string, int>> faces = {{"abu", 1},  {"bcu", 1}, {"abef", 1},
                                                          {"bcde", 1}, {"deg", 2}, {"efgv", 2}};
  for (const auto& [name, want] : faces)
    t.expect(n.demand_of(K::Face, f.at(name)) == want,
             [&, name = name] { return "face " + name + " demand " + std::to_string(n.demand_of(K::Face, f.at(name))); });
  t.expect(n.demand_of(K::TurnLeft) == 4, [&] { return "t_l " + std::to_string(n.demand_of(K::TurnLeft)); });
  t.expect(n.demand_of(K::TurnRight) == 2, [&] { return "t_r " + std::to_string(n.demand_of(K::TurnRight)); });
  t.expect(n.demand_of(K::Heart) == 1, [&] { return "heart " + std::to_string(n.demand_of(K::Heart)); });
  t.expect(n.demand_of(K::PoleV) == 1, [&] { return "t^v " + std::to_string(n.demand_of(K::PoleV)); });
  t.seconds = seconds_since(start);
  return {10, "demand regression", t.failures == 0, counts(t)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance checks for the upward planarity tester");
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](std::initializer_list<int> ids) {
    if (only.empty()) return true;
    for (int id : ids)
      for (int o : only)
        if (o == id) return true;
    return false;
  };

  const auto corpus = standard_corpus();
  std::cout << "corpus: " << corpus.size() << " instances, seed " << corpus_seed() << std::endl;
  std::vector<Line> lines;
  auto report = [&](Line l) {
    std::cout << "criterion " << l.id << " " << (l.pass ? "PASS" : "FAIL") << " " << l.name << ": " << l.detail
              << std::endl;
    lines.push_back(std::move(l));
  };

  if (wanted({1})) report(pipeline(corpus));
  if (wanted({2, 3, 5, 6, 7})) {
    NodeTallies n = node_sweep(corpus);
    if (wanted({2}))
      report({2, "per-node feasible sets equal the oracle",
              n.oracle.failures == 0 && n.oracle.checked > 0 && n.oracle.seconds < kNodeSetSeconds,
              counts(n.oracle)});
    if (wanted({3}))
      report({3, "flow and treewidth backends agree on R-nodes", n.cross.failures == 0 && n.cross.checked > 0,
              counts(n.cross)});
    if (wanted({4})) report(fixed_tests(corpus));
    if (wanted({5}))
      report({5, "turn numbers stay within the source bound", n.turns.failures == 0 && n.turns.checked > 0,
              counts(n.turns)});
    if (wanted({6}))
      report({6, "feasible set size bounds", n.sizes.failures == 0 && n.sizes.checked > 0, counts(n.sizes)});
    if (wanted({7})) report(catalog(n.boring));
  } else if (wanted({4})) {
    report(fixed_tests(corpus));
  }
  if (wanted({8})) report(expansion(corpus));
  if (wanted({9})) report(witnesses(corpus));
  if (wanted({10})) report(demand_regression());

  int failed = 0;
  for (const Line& l : lines) failed += !l.pass;
  std::cout << (failed ? "FAIL" : "PASS") << ": " << lines.size() - failed << "/" << lines.size()
            << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}
