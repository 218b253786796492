// SPDX-License-Identifier: MIT
#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "upt/framework.hpp"

namespace upt {

std::vector<NodeInfo> node_info(const Digraph& g, const SpqrTree& t) {
  std::vector<NodeInfo> out(t.size());
  std::vector<int> in(g.n()), outd(g.n()), mark(g.n(), -1);
  for (int x = 0; x < t.size(); ++x) {
    const SpqrNode& n = t.node(x);
    std::vector<int> touched;
    for (int e : pertinent_edges(t, x))
      for (int w : {g.edge(e).tail, g.edge(e).head})
        if (mark[w] != x) {
          mark[w] = x;
          in[w] = outd[w] = 0;
          touched.push_back(w);
        }
    for (int e : pertinent_edges(t, x)) {
      ++outd[g.edge(e).tail];
      ++in[g.edge(e).head];
    }
    NodeInfo& info = out[x];
    info.vertices = static_cast<int>(touched.size());
    for (int w : touched)
      if (in[w] == 0 && w != n.u && w != n.v) ++info.sigma;
    info.u_switch = in[n.u] == 0 || outd[n.u] == 0;
    info.v_switch = in[n.v] == 0 || outd[n.v] == 0;
  }
  return out;
}

namespace {

std::vector<PChild> parallel_children(const BiconnectedResult& r, int x) {
  std::vector<PChild> cs;
  for (int c : r.tree.node(x).children)
    cs.push_back({&r.sets[c], r.info[c].u_switch, r.info[c].v_switch});
  return cs;
}

}  // namespace

BiconnectedResult biconnected_feasible(const Digraph& g, int root_edge,
                                       const RNodeSubprocedure& sub,
                                       const BiconnectedOptions& opt) {
  BiconnectedResult res;
  if (g.m() == 1) {
    const Edge& e = g.edge(0);
    res.tree.nodes.push_back({NodeKind::Q, e.tail, e.head, -1, {}, 0, {}});
    res.tree.root = 0;
    res.info = node_info(g, res.tree);
    TauRange r = tau_range(opt.policy, res.info[0]);
    res.sets = {q_node_feasible(e, e.tail, e.head, r)};
    res.computed = {true};
    res.root = res.sets[0];
    return res;
  }
  try {
    res.tree = binarize_s_nodes(build_spqr(g, root_edge));
  } catch (const NonPlanarSkeleton& ex) {
    res.reason = ex.what();
    return res;
  }
  const SpqrTree& t = res.tree;
  res.info = node_info(g, t);
  res.sets.resize(t.size());
  res.computed.assign(t.size(), false);
  for (int x : t.postorder()) {
    const SpqrNode& n = t.node(x);
    TauRange r = tau_range(opt.policy, res.info[x]);
    FeasibleSet& f = res.sets[x];
    if (x == t.root) {
      f = q_node_feasible(g.edge(n.edge), n.u, n.v, r);
      int c = n.children[0];
      res.root = root_feasible(g, t, res.sets[c], res.info[c], r);
      res.computed[x] = true;
      if (res.root.empty() && res.reason.empty()) res.reason = "no root shape";
      break;
    }
    switch (n.kind) {
      case NodeKind::Q:
        f = q_node_feasible(g.edge(n.edge), n.u, n.v, r);
        break;
      case NodeKind::S:
        f = s_node_feasible(res.sets[n.children[0]], res.sets[n.children[1]], r);
        break;
      case NodeKind::P:
        f = p_node_feasible(parallel_children(res, x), {res.info[x].u_switch, res.info[x].v_switch},
                            r);
        break;
      case NodeKind::R:
        f = sub.feasible(RNodeContext{g, t, x, res.sets, res.info, r});
        break;
    }
    res.computed[x] = true;
    if (f.empty() && res.reason.empty())
      res.reason = std::string(to_string(n.kind)) + "-node " + std::to_string(x) + " with poles " +
                   g.name(n.u) + ", " + g.name(n.v) + " has no feasible shape";
    if (f.empty() && opt.early_exit) return res;
  }
  return res;
}

std::optional<std::vector<std::optional<Shape>>> realize_shapes(const Digraph& g,
                                                               const BiconnectedResult& res,
                                                               const RNodeSubprocedure& sub,
                                                               const Shape& root_shape,
                                                               TauPolicy policy) {
  const SpqrTree& t = res.tree;
  std::vector<std::optional<Shape>> out(t.size());
  if (!res.root.contains(root_shape)) return std::nullopt;
  const SpqrNode& root = t.node(t.root);
  out[t.root] = res.sets[t.root].shapes().front();
  if (root.children.empty()) return out;
  int sigma = root.children[0];
  {
    std::vector<PChild> cs{{&res.sets[sigma], res.info[sigma].u_switch, res.info[sigma].v_switch},
                           {&res.sets[t.root], true, true}};
    auto arr = p_node_realize(cs, {g.is_switch(root.u), g.is_switch(root.v)}, root_shape);
    if (!arr) return std::nullopt;
    for (size_t i = 0; i < arr->members.size(); ++i)
      for (int c : arr->members[i])
        if (c == 0) out[sigma] = arr->sequence.elements[i].shape;
  }
  std::vector<int> order = t.postorder();
  std::reverse(order.begin(), order.end());
  for (int x : order) {
    if (x == t.root || !out[x]) continue;
    const SpqrNode& n = t.node(x);
    const Shape& target = *out[x];
    TauRange r = tau_range(policy, res.info[x]);
    switch (n.kind) {
      case NodeKind::Q:
        break;
      case NodeKind::S: {
        int a = n.children[0], b = n.children[1];
        for (const Shape& s1 : res.sets[a].shapes()) {
          for (const Shape& s2 : res.sets[b].shapes()) {
            if (s1.lu != target.lu || s2.lv != target.lv) continue;
            if (s1.rlu != target.rlu || s1.rru != target.rru) continue;
            if (s2.rlv != target.rlv || s2.rrv != target.rrv) continue;
            int ll = target.tl - s1.tl - s2.tl, lr = target.tr - s1.tr - s2.tr;
            auto fits = [](int l, Rho x, Rho y) { return x != y ? l == 0 : l == -1 || l == 1; };
            if (ll + lr >= 2 || !fits(ll, s1.rlv, s2.rlu) || !fits(lr, s1.rrv, s2.rru)) continue;
            out[a] = s1;
            out[b] = s2;
            break;
          }
          if (out[a]) break;
        }
        if (!out[a]) return std::nullopt;
        break;
      }
      case NodeKind::P: {
        auto arr = p_node_realize(parallel_children(res, x),
                                  {res.info[x].u_switch, res.info[x].v_switch}, target);
        if (!arr) return std::nullopt;
        for (size_t i = 0; i < arr->members.size(); ++i)
          for (int c : arr->members[i]) out[n.children[c]] = arr->sequence.elements[i].shape;
        break;
      }
      case NodeKind::R: {
        if (!sub.realize) break;
        auto shapes = sub.realize(RNodeContext{g, t, x, res.sets, res.info, r}, target);
        if (!shapes) return std::nullopt;
        const Skeleton& sk = n.skeleton;
        for (size_t i = 0; i < sk.edge_child.size(); ++i)
          if (sk.edge_child[i] >= 0) out[sk.edge_child[i]] = (*shapes)[i];
        break;
      }
    }
  }
  return out;
}

namespace {

struct BlockData {
  Digraph graph;
  std::vector<int> vmap;  // local -> expanded
  std::vector<int> emap;
};

class Decider {
public:
  Decider(const Digraph& x, const RNodeSubprocedure& sub, const DecideOptions& opt)
      : x_(x), sub_(sub), opt_(opt), bct_(block_cut_tree(x)) {
    for (const auto& b : bct_.blocks) {
      BlockData d;
      d.graph = edge_subgraph(x_, b.edges, &d.vmap, &d.emap);
      blocks_.push_back(std::move(d));
    }
    memo_.resize(blocks_.size());
    for (size_t b = 0; b < blocks_.size(); ++b) memo_[b].resize(blocks_[b].graph.m());
  }

  const BlockCutTree& bct() const { return bct_; }

  void precompute_all() {
    std::vector<std::pair<int, int>> work;
    for (size_t b = 0; b < blocks_.size(); ++b)
      for (int e = 0; e < blocks_[b].graph.m(); ++e) work.emplace_back(static_cast<int>(b), e);
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i; (i = next++) < work.size();) {
        auto [b, e] = work[i];
        memo_[b][e] = std::make_shared<BiconnectedResult>(compute(b, e));
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < opt_.jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const BiconnectedResult& result(int b, int e) {
    if (!memo_[b][e]) memo_[b][e] = std::make_shared<BiconnectedResult>(compute(b, e));
    return *memo_[b][e];
  }

  // Local root edges of block b touching expanded vertex v (all edges if v < 0).
  std::vector<int> edges_at(int b, int v) const {
    const BlockData& d = blocks_[b];
    std::vector<int> out;
    for (int e = 0; e < d.graph.m(); ++e) {
      int a = d.vmap[d.graph.edge(e).tail], c = d.vmap[d.graph.edge(e).head];
      if (v < 0 || a == v || c == v) out.push_back(e);
    }
    return out;
  }

  // A root edge and shape of block b with v on the outer face, with a large
  // outer angle at v when required.
  std::optional<std::pair<int, Shape>> attach(int b, int v, bool large) {
    const BlockData& d = blocks_[b];
    for (int e : edges_at(b, v)) {
      const BiconnectedResult& r = result(b, e);
      bool v_is_u = v >= 0 && d.vmap[d.graph.edge(e).tail] == v;
      for (const Shape& s : r.root.shapes())
        if (!large || (v_is_u ? s.lu : s.lv) == 1) return std::make_pair(e, s);
    }
    return std::nullopt;
  }

  const BlockData& block(int b) const { return blocks_[b]; }
  int block_count() const { return static_cast<int>(blocks_.size()); }

  void count_nodes(int counts[4]) const {
    for (const auto& per : memo_)
      for (const auto& r : per)
        if (r)
          for (const SpqrNode& n : r->tree.nodes) ++counts[static_cast<int>(n.kind)];
  }

  std::string first_reason() const {
    for (const auto& per : memo_)
      for (const auto& r : per)
        if (r && !r->reason.empty()) return r->reason;
    return {};
  }

private:
  BiconnectedResult compute(int b, int e) const {
    return biconnected_feasible(blocks_[b].graph, e, sub_, {opt_.policy, true});
  }

  const Digraph& x_;
  const RNodeSubprocedure& sub_;
  DecideOptions opt_;
  BlockCutTree bct_;
  std::vector<BlockData> blocks_;
  std::vector<std::vector<std::shared_ptr<BiconnectedResult>>> memo_;
};

}  // namespace

Verdict decide_upward_planar(const Digraph& g, const RNodeSubprocedure& sub,
                             const DecideOptions& opt) {
  Verdict v;
  v.backend = sub.name;
  v.sigma = static_cast<int>(g.sources().size());
  v.expanded = expand(g);
  const Digraph& x = v.expanded.digraph;
  Decider d(x, sub, opt);
  const BlockCutTree& bct = d.bct();
  v.blocks = d.block_count();
  if (opt.jobs > 1) d.precompute_all();

  struct Plan {
    int block;
    int cut;  // parent cut vertex, -1 for the root block
    bool large;
  };
  for (int root = 0; root < d.block_count() && !v.upward; ++root) {
    // Root the block-cut tree at this block.
    std::vector<Plan> plan{{root, -1, false}};
    std::vector<char> seen(d.block_count(), 0);
    seen[root] = 1;
    for (size_t i = 0; i < plan.size(); ++i) {
      int b = plan[i].block;
      for (int c : bct.block_cuts[b]) {
        if (c == plan[i].cut) continue;
        // c is non-switch in the parent block b.
        const BlockData& pb = d.block(b);
        int local = -1;
        for (int w = 0; w < pb.graph.n(); ++w)
          if (pb.vmap[w] == c) local = w;
        bool nonswitch = !pb.graph.is_switch(local);
        for (int nb : bct.vertex_blocks[c])
          if (!seen[nb]) {
            seen[nb] = 1;
            plan.push_back({nb, c, nonswitch});
          }
      }
    }
    std::vector<std::pair<int, Shape>> chosen(plan.size());
    bool ok = true;
    // Cheap leaf conditions first, the root block last.
    for (size_t i = plan.size(); i-- > 0 && ok;) {
      auto pick = d.attach(plan[i].block, plan[i].cut, plan[i].large);
      if (!pick) ok = false;
      else chosen[i] = *pick;
    }
    if (!ok) continue;
    v.upward = true;
    v.root_block = root;
    if (opt.witness) {
      for (size_t i = 0; i < plan.size(); ++i) {
        const BlockData& bd = d.block(plan[i].block);
        BlockWitness w;
        w.vertices = bd.vmap;
        w.edges = bd.emap;
        w.root_edge = bd.emap[chosen[i].first];
        w.root_shape = chosen[i].second;
        const BiconnectedResult& r = d.result(plan[i].block, chosen[i].first);
        if (auto shapes = realize_shapes(bd.graph, r, sub, w.root_shape, opt.policy))
          for (int n = 0; n < static_cast<int>(shapes->size()); ++n)
            if ((*shapes)[n]) w.node_shapes.emplace_back(n, *(*shapes)[n]);
        v.witness.push_back(std::move(w));
      }
    }
  }
  if (!v.upward) v.reason = d.first_reason();
  d.count_nodes(v.spqr_nodes);
  return v;
}

}  // namespace upt
