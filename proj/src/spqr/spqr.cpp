// SPDX-License-Identifier: MIT
#include "upt/spqr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace upt {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::S: return "S";
    case NodeKind::P: return "P";
    case NodeKind::Q: return "Q";
    case NodeKind::R: return "R";
  }
  return "?";
}

int Skeleton::local(int v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

int Skeleton::parent_edge() const {
  auto it = std::find(edge_child.begin(), edge_child.end(), -1);
  return it == edge_child.end() ? -1 : static_cast<int>(it - edge_child.begin());
}

std::vector<int> SpqrTree::postorder() const {
  std::vector<int> out;
  if (root < 0) return out;
  std::vector<std::pair<int, size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [x, i] = stack.back();
    if (i < nodes[x].children.size()) {
      int c = nodes[x].children[i++];
      stack.emplace_back(c, 0);
    } else {
      out.push_back(x);
      stack.pop_back();
    }
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<int> p;
  explicit DisjointSets(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// An edge of a working multigraph: its ends and the digraph edges it stands for.
struct Item {
  int a;
  int b;
  std::vector<int> edges;
};

// Groups items into the split components at {a, b}: items are joined through
// any shared vertex outside {a, b}; an item with both ends in {a, b} stays alone.
std::vector<int> split_groups(const std::vector<Item>& items, int a, int b) {
  const int k = static_cast<int>(items.size());
  DisjointSets ds(k);
  std::map<int, int> owner;
  for (int i = 0; i < k; ++i)
    for (int x : {items[i].a, items[i].b}) {
      if (x == a || x == b) continue;
      auto [it, fresh] = owner.emplace(x, i);
      if (!fresh) ds.unite(i, it->second);
    }
  std::vector<int> g(k);
  for (int i = 0; i < k; ++i) g[i] = ds.find(i);
  return g;
}

class Builder {
public:
  explicit Builder(const Digraph& g) : g_(g) {}

  SpqrTree run(int root_edge) {
    const Edge& e = g_.edge(root_edge);
    int root = add({NodeKind::Q, e.tail, e.head, -1, {}, root_edge, {}});
    std::vector<int> rest;
    for (int i = 0; i < g_.m(); ++i)
      if (i != root_edge) rest.push_back(i);
    int child = decompose(rest, e.tail, e.head);
    attach(root, child);
    t_.root = root;
    return std::move(t_);
  }

private:
  int add(SpqrNode n) {
    t_.nodes.push_back(std::move(n));
    return static_cast<int>(t_.nodes.size()) - 1;
  }

  void attach(int parent, int child) {
    t_.nodes[parent].children.push_back(child);
    t_.nodes[child].parent = parent;
  }

  // Vertices c != s, t whose removal separates s from t, in path order.
  std::vector<int> chain(const std::vector<int>& h, int s, int t) {
    std::map<int, std::vector<int>> adj;
    for (int e : h) {
      adj[g_.edge(e).tail].push_back(g_.edge(e).head);
      adj[g_.edge(e).head].push_back(g_.edge(e).tail);
    }
    auto reach = [&](int banned, std::map<int, int>* dist) {
      std::map<int, int> d{{s, 0}};
      std::vector<int> q{s};
      for (size_t i = 0; i < q.size(); ++i)
        for (int y : adj[q[i]])
          if (y != banned && !d.count(y)) {
            d[y] = d[q[i]] + 1;
            q.push_back(y);
          }
      bool ok = d.count(t) > 0;
      if (dist) *dist = std::move(d);
      return ok;
    };
    std::map<int, int> dist;
    reach(-1, &dist);
    std::vector<int> cuts;
    for (auto& [x, nb] : adj)
      if (x != s && x != t && !reach(x, nullptr)) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    return cuts;
  }

  int decompose(const std::vector<int>& h, int s, int t) {
    if (h.size() == 1) {
      return add({NodeKind::Q, s, t, -1, {}, h[0], {}});
    }
    std::vector<Item> items;
    for (int e : h) items.push_back({g_.edge(e).tail, g_.edge(e).head, {e}});

    std::vector<int> cuts = chain(h, s, t);
    if (!cuts.empty()) return series(items, s, t, cuts);

    std::vector<int> grp = split_groups(items, s, t);
    std::map<int, std::vector<int>> comps;
    for (size_t i = 0; i < items.size(); ++i) comps[grp[i]].push_back(static_cast<int>(i));
    if (comps.size() >= 2) return parallel(items, comps, s, t);
    return rigid(std::move(items), s, t);
  }

  int series(const std::vector<Item>& items, int s, int t, const std::vector<int>& cuts) {
    std::vector<int> p{s};
    p.insert(p.end(), cuts.begin(), cuts.end());
    p.push_back(t);
    std::set<int> pin(p.begin(), p.end());
    const int k = static_cast<int>(items.size());
    DisjointSets ds(k);
    std::map<int, int> owner;
    for (int i = 0; i < k; ++i)
      for (int x : {items[i].a, items[i].b}) {
        if (pin.count(x)) continue;
        auto [it, fresh] = owner.emplace(x, i);
        if (!fresh) ds.unite(i, it->second);
      }
    std::map<int, int> pos;
    for (size_t i = 0; i < p.size(); ++i) pos[p[i]] = static_cast<int>(i);
    // Each group touches two consecutive chain vertices; segment i lies between p[i], p[i+1].
    std::map<int, int> lowest;
    for (int i = 0; i < k; ++i)
      for (int x : {items[i].a, items[i].b})
        if (pin.count(x)) {
          int r = ds.find(i);
          auto it = lowest.find(r);
          if (it == lowest.end() || pos[x] < it->second) lowest[r] = pos[x];
        }
    std::vector<std::vector<int>> seg(p.size() - 1);
    for (int i = 0; i < k; ++i)
      for (int e : items[i].edges) seg[lowest[ds.find(i)]].push_back(e);
    int node = add({NodeKind::S, s, t, -1, {}, -1, {}});
    Skeleton sk;
    sk.vertices = p;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
      std::sort(seg[i].begin(), seg[i].end());
      int c = decompose(seg[i], p[i], p[i + 1]);
      attach(node, c);
      sk.ends.emplace_back(p[i], p[i + 1]);
      sk.edge_child.push_back(c);
    }
    sk.ends.emplace_back(s, t);
    sk.edge_child.push_back(-1);
    t_.nodes[node].skeleton = std::move(sk);
    return node;
  }

  int parallel(const std::vector<Item>& items, const std::map<int, std::vector<int>>& comps,
               int s, int t) {
    std::vector<std::vector<int>> parts;
    for (const auto& [r, idx] : comps) {
      std::vector<int> edges;
      for (int i : idx) edges.insert(edges.end(), items[i].edges.begin(), items[i].edges.end());
      std::sort(edges.begin(), edges.end());
      parts.push_back(std::move(edges));
    }
    std::sort(parts.begin(), parts.end());
    int node = add({NodeKind::P, s, t, -1, {}, -1, {}});
    Skeleton sk;
    sk.vertices = {s, t};
    for (const auto& part : parts) {
      int c = decompose(part, s, t);
      attach(node, c);
      sk.ends.emplace_back(s, t);
      sk.edge_child.push_back(c);
    }
    sk.ends.emplace_back(s, t);
    sk.edge_child.push_back(-1);
    t_.nodes[node].skeleton = std::move(sk);
    return node;
  }

  // Collapses maximal split components (those avoiding the parent edge) into
  // single items until the skeleton is 3-connected.
  int rigid(std::vector<Item> items, int s, int t) {
    items.push_back({s, t, {}});  // parent edge, always last
    bool changed = true;
    while (changed) {
      changed = false;
      std::set<int> vs;
      for (const Item& it : items) vs.insert({it.a, it.b});
      std::vector<int> order(vs.begin(), vs.end());
      for (size_t i = 0; i < order.size() && !changed; ++i)
        for (size_t j = i + 1; j < order.size() && !changed; ++j) {
          int a = order[i], b = order[j];
          if ((a == s && b == t) || (a == t && b == s)) continue;
          std::vector<int> grp = split_groups(items, a, b);
          int c0 = grp.back();
          std::vector<int> out;
          for (size_t x = 0; x + 1 < items.size(); ++x)
            if (grp[x] != c0) out.push_back(static_cast<int>(x));
          if (out.size() < 2) continue;
          Item merged{a, b, {}};
          std::vector<Item> next;
          size_t o = 0;
          for (size_t x = 0; x < items.size(); ++x) {
            if (o < out.size() && out[o] == static_cast<int>(x)) {
              merged.edges.insert(merged.edges.end(), items[x].edges.begin(), items[x].edges.end());
              ++o;
            } else {
              next.push_back(std::move(items[x]));
            }
          }
          std::sort(merged.edges.begin(), merged.edges.end());
          next.insert(next.end() - 1, std::move(merged));
          items = std::move(next);
          changed = true;
        }
    }
    int node = add({NodeKind::R, s, t, -1, {}, -1, {}});
    Skeleton sk;
    std::set<int> vs;
    for (const Item& it : items) vs.insert({it.a, it.b});
    sk.vertices.assign(vs.begin(), vs.end());
    for (const Item& it : items) {
      int c = -1;
      if (!it.edges.empty()) {
        c = decompose(it.edges, it.a, it.b);
        attach(node, c);
      }
      sk.ends.emplace_back(it.a, it.b);
      sk.edge_child.push_back(c);
    }
    std::vector<std::pair<int, int>> local;
    for (auto [a, b] : sk.ends) local.emplace_back(sk.local(a), sk.local(b));
    auto rot = planar_rotation(static_cast<int>(sk.vertices.size()), local);
    if (!rot) throw NonPlanarSkeleton("R-node with poles " + g_.name(s) + ", " + g_.name(t));
    t_.nodes[node].skeleton = std::move(sk);
    return node;
  }

  const Digraph& g_;
  SpqrTree t_;
};

}  // namespace

SpqrTree build_spqr(const Digraph& g, int root_edge) {
  if (root_edge < 0 || root_edge >= g.m()) throw std::invalid_argument("root edge out of range");
  if (g.m() < 2 || block_cut_tree(g).blocks.size() != 1)
    throw NotBiconnected("input has " + std::to_string(g.m()) + " edges and is not one block");
  return Builder(g).run(root_edge);
}

SpqrTree binarize_s_nodes(const SpqrTree& t) {
  SpqrTree out = t;
  for (int id = 0; id < t.size(); ++id) {
    const SpqrNode& x = t.nodes[id];
    if (x.kind != NodeKind::S || x.children.size() <= 2) continue;
    const auto& cs = x.children;
    const int k = static_cast<int>(cs.size());
    int prev = cs[0];
    for (int j = 1; j < k; ++j) {
      int c = cs[j];
      int pj = t.nodes[c].u, pj1 = t.nodes[c].v;
      int target;
      if (j < k - 1) {
        target = out.size();
        out.nodes.push_back({NodeKind::S, x.u, pj1, -1, {}, -1, {}});
      } else {
        target = id;
        out.nodes[id].children.clear();
      }
      SpqrNode& n = out.nodes[target];
      n.children = {prev, c};
      n.skeleton = {{x.u, pj, pj1}, {{x.u, pj}, {pj, pj1}, {x.u, pj1}}, {prev, c, -1}};
      out.nodes[prev].parent = target;
      out.nodes[c].parent = target;
      prev = target;
    }
  }
  return out;
}

std::vector<int> pertinent_edges(const SpqrTree& t, int node) {
  std::vector<int> out;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    const SpqrNode& n = t.nodes[x];
    if (n.kind == NodeKind::Q) out.push_back(n.edge);
    for (int c : n.children) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Pertinent pertinent(const Digraph& g, const SpqrTree& t, int node) {
  Pertinent p;
  p.graph = edge_subgraph(g, pertinent_edges(t, node), &p.vertex_map, &p.edge_map);
  for (int i = 0; i < static_cast<int>(p.vertex_map.size()); ++i) {
    if (p.vertex_map[i] == t.nodes[node].u) p.u = i;
    if (p.vertex_map[i] == t.nodes[node].v) p.v = i;
  }
  return p;
}

std::vector<PlanarEmbedding> flips(const SpqrTree& t, int node) {
  const SpqrNode& x = t.nodes[node];
  if (x.kind != NodeKind::R) throw std::invalid_argument("flips of a non R-node");
  const Skeleton& sk = x.skeleton;
  std::vector<std::pair<int, int>> local;
  for (auto [a, b] : sk.ends) local.emplace_back(sk.local(a), sk.local(b));
  auto rot = planar_rotation(static_cast<int>(sk.vertices.size()), local);
  if (!rot) throw NonPlanarSkeleton("R-node skeleton");
  PlanarEmbedding emb;
  emb.n = static_cast<int>(sk.vertices.size());
  emb.ends = local;
  emb.rotation = std::move(*rot);
  int p = sk.parent_edge();
  emb.outer_dart = 2 * p;
  PlanarEmbedding mir = mirror(emb);
  mir.outer_dart = 2 * p;
  return {emb, mir};
}

std::string dump(const Digraph& g, const SpqrTree& t) {
  std::ostringstream os;
  std::vector<std::pair<int, int>> stack{{t.root, 0}};
  while (!stack.empty()) {
    auto [x, depth] = stack.back();
    stack.pop_back();
    const SpqrNode& n = t.nodes[x];
    os << std::string(2 * depth, ' ') << "node " << x << " kind=" << to_string(n.kind)
       << " poles=(" << g.name(n.u) << "," << g.name(n.v) << ") skeleton-edges=[";
    if (n.kind == NodeKind::Q) {
      os << g.name(g.edge(n.edge).tail) << "->" << g.name(g.edge(n.edge).head);
    } else {
      for (size_t i = 0; i < n.skeleton.ends.size(); ++i) {
        auto [a, b] = n.skeleton.ends[i];
        os << (i ? " " : "") << g.name(a) << "-" << g.name(b) << ":";
        if (n.skeleton.edge_child[i] < 0)
          os << "parent";
        else
          os << n.skeleton.edge_child[i];
      }
    }
    os << "]\n";
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.emplace_back(*it, depth + 1);
  }
  return os.str();
}

}  // namespace upt
