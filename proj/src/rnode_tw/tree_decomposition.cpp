// SPDX-License-Identifier: MIT
#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <unordered_map>

#include "upt/rnode_tw.hpp"

namespace upt {

using Kind = NiceTreeDecomposition::Kind;

int NiceTreeDecomposition::width() const {
  int w = 0;
  for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
  return w;
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::Leaf: return "leaf";
    case Kind::Introduce: return "introduce";
    case Kind::Forget: return "forget";
    case Kind::Join: return "join";
  }
  return "?";
}

namespace {

std::vector<std::set<int>> as_sets(const AdjacencyList& adj) {
  std::vector<std::set<int>> g(adj.size());
  for (size_t x = 0; x < adj.size(); ++x)
    for (int y : adj[x])
      if (y != static_cast<int>(x)) g[x].insert(y);
  return g;
}

void eliminate(std::vector<std::set<int>>& g, int x) {
  for (int a : g[x])
    for (int b : g[x])
      if (a != b) g[a].insert(b);
  for (int a : g[x]) g[a].erase(x);
  g[x].clear();
}

int fill_in(const std::vector<std::set<int>>& g, int x) {
  int fill = 0;
  for (auto a = g[x].begin(); a != g[x].end(); ++a)
    for (auto b = std::next(a); b != g[x].end(); ++b)
      if (!g[*a].count(*b)) ++fill;
  return fill;
}

}  // namespace

std::vector<int> min_fill_order(const AdjacencyList& adj) {
  auto g = as_sets(adj);
  const int n = static_cast<int>(adj.size());
  std::vector<bool> done(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1, best_fill = 0, best_deg = 0;
    for (int x = 0; x < n; ++x) {
      if (done[x]) continue;
      const int f = fill_in(g, x), d = static_cast<int>(g[x].size());
      if (best < 0 || f < best_fill || (f == best_fill && d < best_deg)) {
        best = x;
        best_fill = f;
        best_deg = d;
      }
    }
    done[best] = true;
    order.push_back(best);
    eliminate(g, best);
  }
  return order;
}

int order_width(const AdjacencyList& adj, const std::vector<int>& order) {
  auto g = as_sets(adj);
  int w = -1;
  for (int x : order) {
    w = std::max(w, static_cast<int>(g[x].size()));
    eliminate(g, x);
  }
  return w;
}

namespace {

// Depth-first search over elimination orders on bitmask graphs.
class OrderSearch {
public:
  OrderSearch(const AdjacencyList& adj, int best, long budget) : budget_(budget), best_(best) {
    const int n = static_cast<int>(adj.size());
    std::vector<uint64_t> g(n, 0);
    for (int x = 0; x < n; ++x)
      for (int y : adj[x])
        if (y != x) g[x] |= uint64_t{1} << y;
    const uint64_t all = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    std::vector<int> prefix;
    search(g, all, -1, prefix);
  }

  const std::vector<int>& order() const { return order_; }

private:
  void search(std::vector<uint64_t> g, uint64_t left, int width, std::vector<int>& prefix) {
    if (--budget_ < 0) return;
    if (left == 0) {
      if (width < best_) {
        best_ = width;
        order_ = prefix;
      }
      return;
    }
    auto [it, fresh] = seen_.try_emplace(left, width);
    if (!fresh) {
      if (it->second <= width) return;
      it->second = width;
    }
    int low = 64;
    for (uint64_t r = left; r; r &= r - 1) low = std::min(low, std::popcount(g[std::countr_zero(r)]));
    if (std::max(width, low) >= best_) return;
    // A simplicial vertex can always go first.
    for (uint64_t r = left; r; r &= r - 1) {
      const int x = std::countr_zero(r);
      bool clique = true;
      for (uint64_t s = g[x]; s && clique; s &= s - 1) {
        const int y = std::countr_zero(s);
        if ((g[x] & ~(uint64_t{1} << y) & ~g[y]) != 0) clique = false;
      }
      if (clique) {
        step(g, left, width, prefix, x);
        return;
      }
    }
    for (uint64_t r = left; r; r &= r - 1) {
      step(g, left, width, prefix, std::countr_zero(r));
      if (budget_ < 0) return;
    }
  }

  void step(const std::vector<uint64_t>& g, uint64_t left, int width, std::vector<int>& prefix,
            int x) {
    std::vector<uint64_t> h = g;
    const uint64_t nb = h[x], bit = uint64_t{1} << x;
    for (uint64_t s = nb; s; s &= s - 1) {
      const int y = std::countr_zero(s);
      h[y] = (h[y] | nb) & ~(uint64_t{1} << y) & ~bit;
    }
    h[x] = 0;
    prefix.push_back(x);
    search(std::move(h), left & ~bit, std::max(width, std::popcount(nb)), prefix);
    prefix.pop_back();
  }

  long budget_;
  int best_;
  std::vector<int> order_;
  std::unordered_map<uint64_t, int> seen_;
};

}  // namespace

std::vector<int> improve_order(const AdjacencyList& adj, const std::vector<int>& order,
                               long budget) {
  if (adj.size() > 64) return order;
  OrderSearch s(adj, order_width(adj, order), budget);
  return s.order().empty() ? order : s.order();
}

namespace {

class NiceBuilder {
public:
  explicit NiceBuilder(NiceTreeDecomposition& td) : td_(td) {}

  int add(Kind k, std::vector<int> bag, int vertex, std::vector<int> children) {
    std::sort(bag.begin(), bag.end());
    td_.nodes.push_back({k, std::move(bag), vertex, std::move(children)});
    return static_cast<int>(td_.nodes.size()) - 1;
  }

  // Forgets then introduces single vertices until the bag equals target.
  int morph(int node, const std::vector<int>& target) {
    std::vector<int> bag = td_.nodes[node].bag;
    for (int x : std::vector<int>(bag)) {
      if (std::binary_search(target.begin(), target.end(), x)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), x));
      node = add(Kind::Forget, bag, x, {node});
    }
    for (int x : target) {
      if (std::find(bag.begin(), bag.end(), x) != bag.end()) continue;
      bag.push_back(x);
      node = add(Kind::Introduce, bag, x, {node});
    }
    return node;
  }

private:
  NiceTreeDecomposition& td_;
};

}  // namespace

NiceTreeDecomposition nice_decomposition(const AdjacencyList& adj, const std::vector<int>& order,
                                         int keep) {
  const int n = static_cast<int>(adj.size());
  // Elimination on the graph without keep, which joins every bag afterwards.
  AdjacencyList rest(n);
  for (int x = 0; x < n; ++x)
    if (x != keep)
      for (int y : adj[x])
        if (y != keep) rest[x].push_back(y);
  std::vector<int> pos(n, -1);
  std::vector<int> seq;
  for (int x : order)
    if (x != keep) {
      pos[x] = static_cast<int>(seq.size());
      seq.push_back(x);
    }
  auto g = as_sets(rest);
  const int k = static_cast<int>(seq.size());
  std::vector<std::vector<int>> bags(k);
  std::vector<int> parent(k, -1);
  for (int i = 0; i < k; ++i) {
    const int x = seq[i];
    bags[i].push_back(x);
    int up = -1;
    for (int y : g[x]) {
      bags[i].push_back(y);
      if (up < 0 || pos[y] < up) up = pos[y];
    }
    parent[i] = up;
    eliminate(g, x);
  }
  // Roots of a forest hang below the last bag.
  for (int i = 0; i + 1 < k; ++i)
    if (parent[i] < 0) parent[i] = k - 1;
  std::vector<std::vector<int>> kids(k);
  for (int i = 0; i < k; ++i)
    if (parent[i] >= 0) kids[parent[i]].push_back(i);
  for (auto& b : bags) {
    if (keep >= 0) b.push_back(keep);
    std::sort(b.begin(), b.end());
  }

  NiceTreeDecomposition td;
  NiceBuilder nb(td);
  const std::vector<int> base = keep >= 0 ? std::vector<int>{keep} : std::vector<int>{};
  std::function<int(int)> build = [&](int i) {
    if (kids[i].empty()) return nb.morph(nb.add(Kind::Leaf, base, -1, {}), bags[i]);
    int acc = -1;
    for (int c : kids[i]) {
      const int sub = nb.morph(build(c), bags[i]);
      acc = acc < 0 ? sub : nb.add(Kind::Join, bags[i], -1, {acc, sub});
    }
    return acc;
  };
  int top = k > 0 ? build(k - 1) : nb.add(Kind::Leaf, base, -1, {});
  top = nb.morph(top, base);
  if (keep >= 0) top = nb.add(Kind::Forget, {}, keep, {top});
  td.root = top;
  return td;
}

NiceTreeDecomposition tree_decomposition(const AdjacencyList& adj, int keep) {
  std::vector<int> order = min_fill_order(adj);
  // Width is measured without keep, which is added to every bag.
  AdjacencyList rest(adj.size());
  for (size_t x = 0; x < adj.size(); ++x)
    if (static_cast<int>(x) != keep)
      for (int y : adj[x])
        if (y != keep) rest[x].push_back(y);
  if (order_width(rest, order) <= 6) order = improve_order(rest, order);
  return nice_decomposition(adj, order, keep);
}

NiceTreeDecomposition single_bag_decomposition(int n, int keep) {
  NiceTreeDecomposition td;
  NiceBuilder nb(td);
  const std::vector<int> base = keep >= 0 ? std::vector<int>{keep} : std::vector<int>{};
  std::vector<int> all(n);
  for (int x = 0; x < n; ++x) all[x] = x;
  int top = nb.morph(nb.add(Kind::Leaf, base, -1, {}), all);
  top = nb.morph(top, base);
  if (keep >= 0) top = nb.add(Kind::Forget, {}, keep, {top});
  td.root = top;
  return td;
}

std::string check_decomposition(const AdjacencyList& adj, const NiceTreeDecomposition& td,
                                int keep) {
  const int n = static_cast<int>(adj.size());
  const int count = static_cast<int>(td.nodes.size());
  if (td.root < 0 || td.root >= count) return "no root";
  if (!td.nodes[td.root].bag.empty()) return "root bag not empty";
  std::vector<int> parent(count, -1);
  std::vector<int> order{td.root};
  std::vector<bool> seen(count, false);
  seen[td.root] = true;
  for (size_t i = 0; i < order.size(); ++i)
    for (int c : td.nodes[order[i]].children) {
      if (c < 0 || c >= count || seen[c]) return "not a tree";
      seen[c] = true;
      parent[c] = order[i];
      order.push_back(c);
    }
  if (static_cast<int>(order.size()) != count) return "unreachable nodes";

  for (int i = 0; i < count; ++i) {
    const auto& node = td.nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return "unsorted bag";
    if (keep >= 0 && i != td.root && !std::binary_search(node.bag.begin(), node.bag.end(), keep))
      return "keep vertex missing from a bag";
    auto with = [&](const std::vector<int>& b, int x) {
      std::vector<int> r = b;
      r.insert(std::lower_bound(r.begin(), r.end(), x), x);
      return r;
    };
    switch (node.kind) {
      case Kind::Leaf:
        if (!node.children.empty()) return "leaf with children";
        if (node.bag.size() > (keep >= 0 ? 1u : 0u)) return "leaf bag too large";
        break;
      case Kind::Introduce: {
        if (node.children.size() != 1) return "introduce arity";
        const auto& cb = td.nodes[node.children[0]].bag;
        if (std::binary_search(cb.begin(), cb.end(), node.vertex) || with(cb, node.vertex) != node.bag)
          return "introduce bag mismatch";
        break;
      }
      case Kind::Forget: {
        if (node.children.size() != 1) return "forget arity";
        const auto& cb = td.nodes[node.children[0]].bag;
        if (std::binary_search(node.bag.begin(), node.bag.end(), node.vertex) ||
            with(node.bag, node.vertex) != cb)
          return "forget bag mismatch";
        break;
      }
      case Kind::Join:
        if (node.children.size() != 2) return "join arity";
        for (int c : node.children)
          if (td.nodes[c].bag != node.bag) return "join bag mismatch";
        break;
    }
  }

  // Coverage of vertices and edges.
  std::vector<std::vector<int>> where(n);
  for (int i = 0; i < count; ++i)
    for (int x : td.nodes[i].bag) {
      if (x < 0 || x >= n) return "bag vertex out of range";
      where[x].push_back(i);
    }
  for (int x = 0; x < n; ++x) {
    if (where[x].empty()) return "vertex " + std::to_string(x) + " in no bag";
    for (int y : adj[x]) {
      if (y <= x) continue;
      bool ok = false;
      for (int i : where[x])
        if (std::binary_search(td.nodes[i].bag.begin(), td.nodes[i].bag.end(), y)) ok = true;
      if (!ok) return "edge " + std::to_string(x) + "-" + std::to_string(y) + " in no bag";
    }
    // Connectivity: exactly one bag containing x has a parent without x.
    int tops = 0;
    for (int i : where[x]) {
      const int p = parent[i];
      if (p < 0 || !std::binary_search(td.nodes[p].bag.begin(), td.nodes[p].bag.end(), x)) ++tops;
    }
    if (tops != 1) return "bags of vertex " + std::to_string(x) + " not connected";
  }
  return "";
}

}  // namespace upt
