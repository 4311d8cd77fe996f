// Copyright 2026 the lowtw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/io.hpp"

#include <sstream>
#include <vector>

namespace lowtw {
namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

uint64_t parse_u64(const std::string& tok, const std::string& what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad " + what + ": '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError("bad " + what + ": '" + tok + "'");
  }
}

Weight parse_weight(const std::string& tok) {
  if (tok == "inf") return kInf;
  uint64_t w = parse_u64(tok, "weight");
  if (w >= kInf) throw ParseError("weight too large");
  return w;
}

}  // namespace

std::string serialize_graph(const MultiGraph& g) {
  std::ostringstream os;
  os << g.n << ' ' << g.edges.size() << ' '
     << (g.directed ? "directed" : "undirected") << '\n';
  for (const auto& e : g.edges) {
    os << e.id << ' ' << e.from << ' ' << e.to << ' ';
    if (e.cost == kInf)
      os << "inf";
    else
      os << e.cost;
    os << '\n';
  }
  return os.str();
}

MultiGraph parse_graph(const std::string& text) {
  auto lines = split_lines(text);
  size_t at = 0;
  while (at < lines.size() && tokens_of(lines[at]).empty()) ++at;
  if (at == lines.size()) throw ParseError("missing graph header");
  auto head = tokens_of(lines[at]);
  if (head.size() != 3) throw ParseError("graph header needs 'n m directed|undirected'");
  MultiGraph g;
  g.n = static_cast<uint32_t>(parse_u64(head[0], "vertex count"));
  uint64_t m = parse_u64(head[1], "edge count");
  if (head[2] == "directed")
    g.directed = true;
  else if (head[2] == "undirected")
    g.directed = false;
  else
    throw ParseError("bad orientation token '" + head[2] + "'");
  ++at;
  uint64_t seen = 0;
  for (; at < lines.size(); ++at) {
    auto toks = tokens_of(lines[at]);
    if (toks.empty()) continue;
    if (toks.size() != 4) throw ParseError("edge line needs 'id u v weight'");
    EdgeId id = static_cast<EdgeId>(parse_u64(toks[0], "edge id"));
    VertexId u = static_cast<VertexId>(parse_u64(toks[1], "vertex"));
    VertexId v = static_cast<VertexId>(parse_u64(toks[2], "vertex"));
    Weight w = parse_weight(toks[3]);
    try {
      g.add_edge(id, u, v, w);
    } catch (const InvalidInput& err) {
      throw ParseError(std::string(err.what()) + " at line " + std::to_string(at + 1));
    }
    ++seen;
  }
  if (seen != m) throw ParseError("edge count mismatch");
  return g;
}

std::string serialize_decomposition(const TreeDecomposition& td) {
  std::ostringstream os;
  for (const auto& [id, bag] : td.bags) {
    std::string lhs = bag_id_to_string(id);
    if (!lhs.empty()) os << lhs << ' ';
    os << ':';
    for (VertexId v : bag) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

TreeDecomposition parse_decomposition(const std::string& text) {
  TreeDecomposition td;
  auto lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    auto toks = tokens_of(lines[i]);
    if (toks.empty()) continue;
    BagId id;
    std::vector<VertexId> bag;
    bool after_colon = false;
    for (const auto& tok : toks) {
      if (tok == ":") {
        if (after_colon) throw ParseError("second colon in bag line");
        after_colon = true;
      } else if (after_colon) {
        bag.push_back(static_cast<VertexId>(parse_u64(tok, "vertex")));
      } else {
        id.push_back(static_cast<uint32_t>(parse_u64(tok, "bag symbol")));
      }
    }
    if (!after_colon) throw ParseError("bag line missing colon");
    try {
      td.add_bag(id, bag);
    } catch (const InvalidInput& err) {
      throw ParseError(std::string(err.what()) + " at line " + std::to_string(i + 1));
    }
  }
  return td;
}

}  // namespace lowtw
