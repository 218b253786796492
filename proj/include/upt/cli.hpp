// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upt/digraph.hpp"
#include "upt/embedding.hpp"
#include "upt/framework.hpp"

namespace upt::cli {

// Edge list ("tail head" per line, '#' comments) or a DOT subset
// ("digraph { a -> b; }" without attributes).
Digraph parse_digraph_text(const std::string& text);
Digraph parse_digraph_file(const std::string& path);

// "rot <v> <w1> <w2> ..." lists the neighbours of v clockwise, naming the
// edge to each; "outer <v0> <v1> ... <v0>" is the outer face walk.
PlanarEmbedding parse_embedding_text(const Digraph& g, const std::string& text);
PlanarEmbedding parse_embedding_file(const Digraph& g, const std::string& path);
// Writes the same format.
std::string format_embedding(const Digraph& g, const PlanarEmbedding& emb);

// Ordered "key: value" fields.
struct Report {
  std::vector<std::pair<std::string, std::string>> fields;
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  bool operator==(const Report&) const = default;
};

std::string to_text(const Report& r);
std::string to_json(const Report& r);  // one line
// Reads text reports separated by blank lines, or JSON reports one per line.
std::vector<Report> parse_reports(const std::string& text);

// An upward planar embedding of one witness block, found by enumerating
// embeddings of blocks within the oracle guard.
struct BlockEmbedding {
  Digraph block;
  PlanarEmbedding emb;
  AngleAssignment lambda;
};
std::optional<BlockEmbedding> reconstruct_block(const Verdict& v, const BlockWitness& w);

// Runs a command line without the program name; returns the exit code:
// 0 upward planar, 1 not upward planar, 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace upt::cli
