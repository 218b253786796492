// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upt/digraph.hpp"

namespace upt {

struct CorpusInstance {
  std::string name;
  Digraph graph;
};

constexpr std::uint64_t kDefaultCorpusSeed = 0xC0FFEE;

// kDefaultCorpusSeed unless the UPT_SEED environment variable is set.
std::uint64_t corpus_seed();

// Every acyclic orientation, up to isomorphism, of every connected planar
// graph with 2..max_vertices vertices.
std::vector<CorpusInstance> exhaustive_corpus(int max_vertices = 5);

// Seeded random connected planar DAGs; edge counts stay within max_edges so
// the oracle can handle every instance.
std::vector<CorpusInstance> random_corpus(int count, std::uint64_t seed, int min_vertices = 6,
                                          int max_vertices = 8, int max_edges = 14);

// Exhaustive part followed by the 500 random instances.
std::vector<CorpusInstance> standard_corpus();

}  // namespace upt
