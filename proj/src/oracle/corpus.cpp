// SPDX-License-Identifier: MIT
#include "upt/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>

#include "upt/embedding.hpp"

namespace upt {

std::uint64_t corpus_seed() {
  if (const char* s = std::getenv("UPT_SEED")) {
    try {
      return std::stoull(s, nullptr, 0);
    } catch (const std::exception&) {
    }
  }
  return kDefaultCorpusSeed;
}

namespace {

using Arcs = std::vector<std::pair<int, int>>;

bool connected(int n, const Arcs& arcs) {
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (auto [a, b] : arcs) comp[find(a)] = find(b);
  for (int v = 0; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

bool acyclic(int n, const Arcs& arcs) {
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (auto [a, b] : arcs) {
    out[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> q;
  for (int v = 0; v < n; ++v)
    if (!indeg[v]) q.push_back(v);
  for (size_t i = 0; i < q.size(); ++i)
    for (int w : out[q[i]])
      if (--indeg[w] == 0) q.push_back(w);
  return static_cast<int>(q.size()) == n;
}

// Smallest adjacency bitmask over all vertex relabelings.
std::uint64_t canonical(int n, const Arcs& arcs, bool directed) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t best = ~0ull;
  do {
    std::uint64_t code = 0;
    for (auto [a, b] : arcs) {
      int x = p[a], y = p[b];
      if (!directed && x > y) std::swap(x, y);
      code |= 1ull << (x * n + y);
    }
    best = std::min(best, code);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

Digraph to_digraph(int n, const Arcs& arcs) {
  Digraph g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
  for (auto [a, b] : arcs) g.add_edge(a, b);
  return g;
}

}  // namespace

std::vector<CorpusInstance> exhaustive_corpus(int max_vertices) {
  std::vector<CorpusInstance> out;
  for (int n = 2; n <= max_vertices; ++n) {
    Arcs pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    const int np = static_cast<int>(pairs.size());
    std::set<std::uint64_t> graphs;
    std::vector<Arcs> reps;
    for (std::uint64_t mask = 1; mask < (1ull << np); ++mask) {
      Arcs edges;
      for (int i = 0; i < np; ++i)
        if (mask >> i & 1) edges.push_back(pairs[i]);
      if (!connected(n, edges)) continue;
      if (!planar_rotation(n, edges)) continue;
      if (graphs.insert(canonical(n, edges, false)).second) reps.push_back(edges);
    }
    std::sort(reps.begin(), reps.end(),
              [](const Arcs& a, const Arcs& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    int gi = 0;
    for (const Arcs& edges : reps) {
      std::set<std::uint64_t> dags;
      const int m = static_cast<int>(edges.size());
      int oi = 0;
      for (std::uint64_t o = 0; o < (1ull << m); ++o) {
        Arcs arcs = edges;
        for (int i = 0; i < m; ++i)
          if (o >> i & 1) std::swap(arcs[i].first, arcs[i].second);
        if (!acyclic(n, arcs)) continue;
        if (!dags.insert(canonical(n, arcs, true)).second) continue;
        out.push_back({"n" + std::to_string(n) + "-g" + std::to_string(gi) + "-o" +
                           std::to_string(oi++),
                       to_digraph(n, arcs)});
      }
      ++gi;
    }
  }
  return out;
}

std::vector<CorpusInstance> random_corpus(int count, std::uint64_t seed, int min_vertices,
                                          int max_vertices, int max_edges) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusInstance> out;
  for (int k = 0; k < count; ++k) {
    int n = std::uniform_int_distribution<int>(min_vertices, max_vertices)(rng);
    int hi = std::min(max_edges, 3 * n - 6);
    int m = std::uniform_int_distribution<int>(n - 1, hi)(rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Arcs edges;
    std::set<std::pair<int, int>> present;
    for (int i = 1; i < n; ++i) {
      int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
      int a = std::min(perm[i], perm[j]), b = std::max(perm[i], perm[j]);
      edges.emplace_back(a, b);
      present.insert({a, b});
    }
    Arcs candidates;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (!present.count({a, b})) candidates.emplace_back(a, b);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (auto c : candidates) {
      if (static_cast<int>(edges.size()) >= m) break;
      edges.push_back(c);
      if (!planar_rotation(n, edges)) edges.pop_back();
    }
    // A random topological order orients the edges acyclically.
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    Arcs arcs;
    for (auto [a, b] : edges) arcs.push_back(rank[a] < rank[b] ? std::make_pair(a, b) : std::make_pair(b, a));
    out.push_back({"rand-" + std::to_string(k), to_digraph(n, arcs)});
  }
  return out;
}

std::vector<CorpusInstance> standard_corpus() {
  auto out = exhaustive_corpus(5);
  auto rnd = random_corpus(500, corpus_seed());
  out.insert(out.end(), rnd.begin(), rnd.end());
  return out;
}

}  // namespace upt
