// SPDX-License-Identifier: MIT
#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "upt/cli.hpp"
#include "upt/errors.hpp"
#include "upt/oracle.hpp"
#include "upt/rnode_flow.hpp"
#include "upt/rnode_tw.hpp"

namespace upt::cli {

namespace {

struct Options {
  std::vector<std::string> files;
  std::string subprocedure = "auto";
  std::string policy = "safe";
  std::string witness;
  std::string root;
  bool json = false;
  bool trace_flow = false;
  bool trace_dp = false;
  bool timing = false;
  int jobs = 1;
  int treedepth = -1;
};

struct Outcome {
  Report report;
  int code = 0;
  std::string witness;
};

TauPolicy policy_of(const std::string& s) { return s == "sources" ? TauPolicy::Sources : TauPolicy::Safe; }

std::string angles(const Digraph& g, const PlanarEmbedding& emb, const AngleAssignment& lambda) {
  std::string out;
  for (int d = 0; d < 2 * emb.m(); ++d)
    out += "angle " + g.name(emb.tail(d)) + " " + g.name(emb.head(d)) + " " +
           std::to_string(lambda[d]) + "\n";
  return out;
}

// Backend for one input; pairs from the treewidth backend go to pairs.
RNodeSubprocedure backend(const Options& o, const Digraph& g, std::ostream& err, std::string* pairs,
                          std::string& name) {
  name = o.subprocedure;
  if (name == "auto") name = g.sources().size() <= 8 ? "sources" : "treewidth";
  if (name == "sources") return flow_subprocedure(o.trace_flow ? &err : nullptr);
  const int zeta = o.treedepth >= 0 ? 1 << std::min(o.treedepth, 30) : 0;
  PairSink sink;
  if (pairs)
    sink = [pairs](const RNodeContext& ctx, const TwInstance& inst, const Shape& s,
                   const ValidPair& p) {
      *pairs += "pair node " + std::to_string(ctx.node) + " " + to_string(s) + "\n" +
                to_string(inst, p);
    };
  return treewidth_subprocedure(o.trace_dp ? &err : nullptr, zeta, sink);
}

Outcome decide_file(const std::string& file, const Options& o, int jobs, std::ostream& err) {
  Outcome out;
  out.report.set("file", file);
  const auto start = std::chrono::steady_clock::now();
  try {
    const Digraph g = parse_digraph_file(file);
    std::string pairs, name;
    const RNodeSubprocedure sub = backend(o, g, err, o.witness.empty() ? nullptr : &pairs, name);
    DecideOptions opt;
    opt.policy = policy_of(o.policy);
    opt.jobs = jobs;
    opt.witness = !o.witness.empty();
    const Verdict v = decide_upward_planar(g, sub, opt);
    Report& r = out.report;
    r.set("verdict", v.upward ? "yes" : "no");
    r.set("sigma", std::to_string(v.sigma));
    r.set("vertices", std::to_string(g.n()));
    r.set("edges", std::to_string(g.m()));
    r.set("expanded_vertices", std::to_string(v.expanded.digraph.n()));
    r.set("blocks", std::to_string(v.blocks));
    // One tree per block, rooted at its first edge, so the counts do not
    // depend on which roots the decision explored.
    int counts[4] = {0, 0, 0, 0};
    for (const auto& bl : block_cut_tree(v.expanded.digraph).blocks) {
      if (bl.edges.size() < 2) {
        ++counts[static_cast<int>(NodeKind::Q)];
        continue;
      }
      const SpqrTree t = build_spqr(edge_subgraph(v.expanded.digraph, bl.edges), 0);
      for (const SpqrNode& node : t.nodes) ++counts[static_cast<int>(node.kind)];
    }
    const char* kinds[4] = {"spqr_s", "spqr_p", "spqr_q", "spqr_r"};
    for (int k = 0; k < 4; ++k) r.set(kinds[k], std::to_string(counts[k]));
    r.set("backend", name);
    r.set("tau_policy", o.policy);
    if (!v.upward && !v.reason.empty()) r.set("reason", v.reason);
    out.code = v.upward ? 0 : 1;
    if (v.upward && !o.witness.empty()) {
      const Digraph& x = v.expanded.digraph;
      std::string& w = out.witness;
      w += "file " + file + "\n";
      for (size_t b = 0; b < v.witness.size(); ++b) {
        const BlockWitness& bw = v.witness[b];
        const Edge& re = x.edge(bw.root_edge);
        w += "block " + std::to_string(b) + "\n";
        w += "root_edge " + x.name(re.tail) + " " + x.name(re.head) + "\n";
        w += "root_shape " + to_string(bw.root_shape) + "\n";
        for (const auto& [node, s] : bw.node_shapes)
          w += "node " + std::to_string(node) + " " + to_string(s) + "\n";
        if (auto be = reconstruct_block(v, bw)) {
          w += format_embedding(be->block, be->emb);
          w += angles(be->block, be->emb, be->lambda);
        }
        w += "end\n";
      }
      w += pairs;
      r.set("witness", o.witness);
    }
  } catch (const Error& e) {
    out.report.set("error", e.what());
    out.code = 2;
  }
  if (o.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    out.report.set("time_ms", std::to_string(ms));
  }
  return out;
}

void emit(std::ostream& out, const Report& r, bool json, bool& first) {
  if (json) {
    out << to_json(r);
    return;
  }
  if (!first) out << "\n";
  first = false;
  out << to_text(r);
}

int run_decide(const Options& o, std::ostream& out, std::ostream& err) {
  const size_t n = o.files.size();
  std::vector<Outcome> results(n);
  if (n > 1 && o.jobs > 1) {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(o.jobs, static_cast<int>(n)); ++t)
      pool.emplace_back([&] {
        for (size_t i; (i = next++) < n;) results[i] = decide_file(o.files[i], o, 1, err);
      });
    for (auto& t : pool) t.join();
  } else {
    for (size_t i = 0; i < n; ++i) results[i] = decide_file(o.files[i], o, o.jobs, err);
  }
  int code = 0;
  bool first = true;
  std::string witness;
  for (const auto& r : results) {
    emit(out, r.report, o.json, first);
    code = std::max(code, r.code);
    witness += r.witness;
  }
  if (!o.witness.empty() && !witness.empty()) {
    std::ofstream w(o.witness);
    if (!w) {
      err << "cannot write " << o.witness << "\n";
      return 2;
    }
    w << witness;
  }
  return code;
}

int run_oracle(const Options& o, std::ostream& out) {
  Report r;
  r.set("file", o.files[0]);
  int code = 2;
  try {
    const Digraph g = parse_digraph_file(o.files[0]);
    const OracleVerdict v = brute_force_upward_planar(g);
    r.set("verdict", v.upward ? "yes" : "no");
    r.set("vertices", std::to_string(g.n()));
    r.set("edges", std::to_string(g.m()));
    code = v.upward ? 0 : 1;
    if (v.upward && !o.witness.empty()) {
      std::ofstream w(o.witness);
      w << format_embedding(g, *v.embedding) << angles(g, *v.embedding, *v.assignment);
      r.set("witness", o.witness);
    }
  } catch (const Error& e) {
    r.set("error", e.what());
  }
  bool first = true;
  emit(out, r, o.json, first);
  return code;
}

int run_fixed(const Options& o, std::ostream& out) {
  Report r;
  r.set("file", o.files[0]);
  r.set("embedding", o.files[1]);
  int code = 2;
  try {
    const Digraph g = parse_digraph_file(o.files[0]);
    const PlanarEmbedding emb = parse_embedding_file(g, o.files[1]);
    const auto lambda = fixed_embedding_test(g, emb);
    if (lambda && !check_up_conditions(g, emb, *lambda))
      throw std::logic_error("assignment fails the upward conditions");
    r.set("verdict", lambda ? "yes" : "no");
    code = lambda ? 0 : 1;
    if (lambda && !o.witness.empty()) {
      std::ofstream w(o.witness);
      w << angles(g, emb, *lambda);
      r.set("witness", o.witness);
    }
  } catch (const Error& e) {
    r.set("error", e.what());
  }
  bool first = true;
  emit(out, r, o.json, first);
  return code;
}

int run_feasible(const Options& o, std::ostream& out, std::ostream& err) {
  Report r;
  r.set("file", o.files[0]);
  r.set("root", o.root);
  int code = 2;
  std::string dumped;
  try {
    const Digraph g = parse_digraph_file(o.files[0]);
    const auto comma = o.root.find(',');
    if (comma == std::string::npos) throw UsageError("--root expects tail,head");
    const int a = g.id(o.root.substr(0, comma)), b = g.id(o.root.substr(comma + 1));
    if (!g.find_edge(a, b)) throw UsageError("no edge " + o.root);
    const ExpandedDigraph ex = expand(g);
    const Digraph& x = ex.digraph;
    int root = -1;
    for (int e = 0; e < x.m(); ++e)
      if (ex.origin[x.edge(e).tail] == a && ex.origin[x.edge(e).head] == b) root = e;
    const BlockCutTree bct = block_cut_tree(x);
    std::vector<int> vmap, emap;
    Digraph block;
    int local = -1;
    for (const auto& bl : bct.blocks) {
      auto it = std::find(bl.edges.begin(), bl.edges.end(), root);
      if (it == bl.edges.end()) continue;
      block = edge_subgraph(x, bl.edges, &vmap, &emap);
      local = static_cast<int>(it - bl.edges.begin());
    }
    std::string name;
    const RNodeSubprocedure sub = backend(o, g, err, nullptr, name);
    BiconnectedOptions opt;
    opt.policy = policy_of(o.policy);
    opt.early_exit = false;
    const BiconnectedResult res = biconnected_feasible(block, local, sub, opt);
    dumped = dump(block, res.tree);
    for (int k = 0; k < res.tree.size(); ++k)
      if (res.computed[k])
        dumped += "set " + std::to_string(k) + " " + to_string(res.tree.node(k).kind) + ": " +
                  to_string(res.sets[k]) + "\n";
    dumped += "root_set: " + to_string(res.root) + "\n";
    r.set("backend", name);
    r.set("tau_policy", o.policy);
    r.set("nodes", std::to_string(res.tree.size()));
    r.set("root_shapes", std::to_string(res.root.shapes().size()));
    code = res.root.empty() ? 1 : 0;
  } catch (const Error& e) {
    r.set("error", e.what());
  }
  if (!o.json) out << dumped;
  bool first = true;
  emit(out, r, o.json, first);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Upward planarity testing of directed acyclic graphs"};
  app.require_subcommand(1);
  Options o;
  auto backend_flags = [&](CLI::App* c) {
    c->add_option("--subprocedure", o.subprocedure, "R-node backend")
        ->check(CLI::IsMember({"auto", "sources", "treewidth"}));
    c->add_option("--tau-policy", o.policy, "turn-number range")
        ->check(CLI::IsMember({"safe", "sources"}));
    c->add_flag("--trace-flow", o.trace_flow, "dump flow networks to stderr");
    c->add_flag("--trace-dp", o.trace_dp, "dump record counts to stderr");
    c->add_option("--treedepth", o.treedepth, "bound the dynamic program scores by 2^d")
        ->check(CLI::NonNegativeNumber);
  };
  CLI::App* decide = app.add_subcommand("decide", "decide upward planarity");
  decide->add_option("files", o.files, "graph files")->required();
  backend_flags(decide);
  decide->add_option("--witness", o.witness, "witness output file");
  decide->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  decide->add_flag("--timing", o.timing, "report wall time");
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive search on a small graph");
  oracle->add_option("file", o.files, "graph file")->required()->expected(1);
  oracle->add_option("--witness", o.witness, "witness output file");
  CLI::App* fixed = app.add_subcommand("fixed", "test one fixed embedding");
  fixed->add_option("files", o.files, "graph file and embedding file")->required()->expected(2);
  fixed->add_option("--witness", o.witness, "assignment output file");
  CLI::App* feasible = app.add_subcommand("feasible", "feasible sets of one block");
  feasible->add_option("file", o.files, "graph file")->required()->expected(1);
  feasible->add_option("--root", o.root, "root edge tail,head")->required();
  backend_flags(feasible);
  for (CLI::App* c : {decide, oracle, fixed, feasible}) c->add_flag("--json", o.json, "JSON report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (decide->parsed()) return run_decide(o, out, err);
  if (oracle->parsed()) return run_oracle(o, out);
  if (fixed->parsed()) return run_fixed(o, out);
  return run_feasible(o, out, err);
}

std::optional<BlockEmbedding> reconstruct_block(const Verdict& v, const BlockWitness& w) {
  BlockEmbedding be;
  std::vector<int> vmap, emap;
  be.block = edge_subgraph(v.expanded.digraph, w.edges, &vmap, &emap);
  if (be.block.m() > kOracleEdgeGuard) return std::nullopt;
  const int root = static_cast<int>(std::find(w.edges.begin(), w.edges.end(), w.root_edge) - w.edges.begin());
  std::optional<BlockEmbedding> any;
  bool found = false;
  for_each_embedding(be.block, [&](const PlanarEmbedding& emb) {
    const auto lambda = fixed_embedding_test(be.block, emb);
    if (!lambda) return true;
    if (!any) any = BlockEmbedding{be.block, emb, *lambda};
    const Faces faces = trace_faces(emb);
    for (int d : faces.walks[faces.outer])
      if ((d >> 1) == root) {
        be.emb = emb;
        be.lambda = *lambda;
        found = true;
        return false;
      }
    return true;
  });
  if (found) return be;
  return any;
}

}  // namespace upt::cli
