// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "upt/cli.hpp"
#include "upt/errors.hpp"

namespace upt::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

struct Token {
  std::string text;
  int line;
  bool quoted = false;
};

// Tokens of the DOT subset: identifiers, quoted strings, "->", braces and
// semicolons.
std::vector<Token> dot_tokens(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  for (size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({"->", line});
      i += 2;
    } else if (c == '{' || c == '}' || c == ';') {
      out.push_back({std::string(1, c), line});
      ++i;
    } else if (c == '"') {
      size_t j = i + 1;
      std::string s;
      while (j < text.size() && text[j] != '"') {
        if (text[j] == '\n') throw ParseError(line, "unterminated string");
        s += text[j++];
      }
      if (j == text.size()) throw ParseError(line, "unterminated string");
      out.push_back({s, line, true});
      i = j + 1;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '.'))
        ++j;
      out.push_back({text.substr(i, j - i), line});
      i = j;
    } else {
      throw ParseError(line, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

Digraph parse_dot(const std::string& text) {
  const auto toks = dot_tokens(text);
  size_t i = 0;
  auto at = [&](const std::string& s) { return i < toks.size() && !toks[i].quoted && toks[i].text == s; };
  auto line = [&] { return i < toks.size() ? toks[i].line : (toks.empty() ? 1 : toks.back().line); };
  if (!at("digraph")) throw ParseError(line(), "expected digraph");
  ++i;
  if (i < toks.size() && !at("{")) ++i;  // graph name
  if (!at("{")) throw ParseError(line(), "expected {");
  ++i;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> lone;
  auto is_id = [&] {
    return i < toks.size() && (toks[i].quoted || (toks[i].text != "->" && toks[i].text != "{" &&
                                                  toks[i].text != "}" && toks[i].text != ";"));
  };
  while (!at("}")) {
    if (i >= toks.size()) throw ParseError(line(), "expected }");
    if (at(";")) {
      ++i;
      continue;
    }
    if (!is_id()) throw ParseError(line(), "expected a vertex");
    std::vector<std::string> chain{toks[i++].text};
    while (at("->")) {
      ++i;
      if (!is_id()) throw ParseError(line(), "expected a vertex after ->");
      chain.push_back(toks[i++].text);
    }
    if (chain.size() == 1) {
      if (chain[0] == "node" || chain[0] == "edge" || chain[0] == "graph")
        throw ParseError(line(), "attributes are not supported");
      lone.push_back(chain[0]);
    }
    for (size_t k = 0; k + 1 < chain.size(); ++k) {
      if (chain[k] == chain[k + 1])
        throw SelfLoop("line " + std::to_string(toks[i - 1].line) + ": " + chain[k]);
      edges.emplace_back(chain[k], chain[k + 1]);
    }
    if (!at(";") && !at("}")) throw ParseError(line(), "expected ; or }");
  }
  ++i;
  if (i != toks.size()) throw ParseError(line(), "text after }");
  for (const auto& v : lone) {
    bool used = false;
    for (const auto& [a, b] : edges) used = used || a == v || b == v;
    if (!used) throw Disconnected("isolated vertex " + v);
  }
  return validate_dag(edges);
}

}  // namespace

Digraph parse_digraph_text(const std::string& text) {
  // DOT when the first token is "digraph".
  std::istringstream probe(text);
  for (std::string line; std::getline(probe, line);) {
    const auto t = tokens(strip_comment(line));
    if (t.empty()) continue;
    if (t[0].rfind("digraph", 0) == 0) return parse_dot(text);
    break;
  }
  std::vector<std::pair<std::string, std::string>> edges;
  std::istringstream in(text);
  int number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto t = tokens(strip_comment(line));
    if (t.empty()) continue;
    if (t.size() != 2) throw ParseError(number, "expected \"<tail> <head>\"");
    if (t[0] == t[1]) throw SelfLoop("line " + std::to_string(number) + ": " + t[0]);
    edges.emplace_back(t[0], t[1]);
  }
  if (edges.empty()) throw ParseError(number, "no edges");
  return validate_dag(edges);
}

Digraph parse_digraph_file(const std::string& path) { return parse_digraph_text(read_file(path)); }

PlanarEmbedding parse_embedding_text(const Digraph& g, const std::string& text) {
  std::vector<std::vector<int>> rotation(g.n());
  std::vector<bool> given(g.n(), false);
  std::vector<int> walk;
  int walk_line = 0;
  std::istringstream in(text);
  int number = 0;
  auto vertex = [&](const std::string& name) {
    const auto v = g.find(name);
    if (!v) throw ParseError(number, "unknown vertex " + name);
    return *v;
  };
  auto edge_between = [&](int a, int b) {
    if (auto e = g.find_edge(a, b)) return *e;
    if (auto e = g.find_edge(b, a)) return *e;
    throw ParseError(number, "no edge " + g.name(a) + " " + g.name(b));
  };
  for (std::string line; std::getline(in, line);) {
    ++number;
    const auto t = tokens(strip_comment(line));
    if (t.empty()) continue;
    if (t[0] == "rot") {
      if (t.size() < 2) throw ParseError(number, "rot without a vertex");
      const int v = vertex(t[1]);
      if (given[v]) throw ParseError(number, "second rotation for " + t[1]);
      given[v] = true;
      for (size_t k = 2; k < t.size(); ++k) rotation[v].push_back(edge_between(v, vertex(t[k])));
      std::vector<int> sorted = rotation[v], incident;
      for (int e : g.out_edges(v)) incident.push_back(e);
      for (int e : g.in_edges(v)) incident.push_back(e);
      std::sort(sorted.begin(), sorted.end());
      std::sort(incident.begin(), incident.end());
      if (sorted != incident) throw ParseError(number, "rotation of " + t[1] + " must list each edge once");
    } else if (t[0] == "outer") {
      if (!walk.empty()) throw ParseError(number, "second outer walk");
      walk_line = number;
      for (size_t k = 1; k < t.size(); ++k) walk.push_back(vertex(t[k]));
      if (walk.size() < 3 || walk.front() != walk.back())
        throw ParseError(number, "outer walk must be closed");
    } else {
      throw ParseError(number, "unknown directive " + t[0]);
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (!given[v]) throw ParseError(number, "missing rotation for " + g.name(v));
  if (walk.empty()) throw ParseError(number, "missing outer walk");
  number = walk_line;
  PlanarEmbedding emb = make_embedding(g, rotation);
  // The walk may follow either orientation of the face.
  for (bool reversed : {false, true}) {
    std::vector<int> w = walk;
    if (reversed) std::reverse(w.begin(), w.end());
    const int e = edge_between(w[0], w[1]);
    const int start = emb.dart_from(e, w[0]);
    std::vector<int> seq{w[0]};
    int d = start;
    do {
      seq.push_back(emb.head(d));
      d = emb.next(d);
    } while (d != start && seq.size() <= 4 * static_cast<size_t>(g.m()) + 2);
    if (seq == w) {
      emb.outer_dart = start;
      trace_faces(emb);
      return emb;
    }
  }
  throw ParseError(walk_line, "outer walk is not a face of the rotation system");
}

PlanarEmbedding parse_embedding_file(const Digraph& g, const std::string& path) {
  return parse_embedding_text(g, read_file(path));
}

std::string format_embedding(const Digraph& g, const PlanarEmbedding& emb) {
  std::string out;
  for (int v = 0; v < emb.n; ++v) {
    out += "rot " + g.name(v);
    for (int e : emb.rotation[v]) {
      const auto [a, b] = emb.ends[e];
      out += " " + g.name(a == v ? b : a);
    }
    out += "\n";
  }
  const Faces faces = trace_faces(emb);
  const auto& walk = faces.walks[faces.outer];
  out += "outer " + g.name(emb.tail(walk[0]));
  for (int d : walk) out += " " + g.name(emb.head(d));
  return out + "\n";
}

}  // namespace upt::cli
