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

#include "core/generators.hpp"

#include <algorithm>

namespace lowtw {
namespace {

void check_options(const GenOptions& opt) {
  if (opt.keep_den == 0) throw InvalidInput("keep probability denominator is zero");
  if (opt.keep_num > opt.keep_den) throw InvalidInput("keep probability above one");
  if (opt.weight_min > opt.weight_max) throw InvalidInput("empty weight range");
  if (opt.weight_max == kInf) throw InvalidInput("finite weight range required");
}

Weight draw_weight(const GenOptions& opt, SplitMix64& rng) {
  return opt.weight_min + rng.below(opt.weight_max - opt.weight_min + 1);
}

// Appends the surviving directed/undirected edges for one underlying edge.
void emit_edge(MultiGraph& g, EdgeId& next_id, VertexId u, VertexId v,
               const GenOptions& opt, SplitMix64& rng) {
  if (!rng.chance(opt.keep_num, opt.keep_den)) return;
  if (!opt.directed) {
    g.add_edge(next_id++, u, v, draw_weight(opt, rng));
    return;
  }
  uint64_t mode = rng.below(3);  // 0: u->v, 1: v->u, 2: both
  if (mode == 0 || mode == 2) g.add_edge(next_id++, u, v, draw_weight(opt, rng));
  if (mode == 1 || mode == 2) g.add_edge(next_id++, v, u, draw_weight(opt, rng));
}

}  // namespace

GeneratedKtree generate_partial_ktree(uint32_t n, uint32_t k,
                                      const GenOptions& opt, uint64_t seed,
                                      bool bipartite) {
  check_options(opt);
  if (n == 0) throw InvalidInput("empty vertex set");
  if (k >= n) throw InvalidInput("clique size must be below n");
  SplitMix64 rng(seed);

  // Attachment cliques.  cliques[i] is a sorted k-set; vertex v > k attaches
  // to attach[v - k - 1].
  std::vector<std::vector<VertexId>> cliques;
  if (k > 0) {
    for (uint32_t drop = 0; drop <= k; ++drop) {
      std::vector<VertexId> q;
      for (uint32_t u = 0; u <= k; ++u)
        if (u != drop) q.push_back(u);
      cliques.push_back(q);
    }
  }
  std::vector<std::vector<VertexId>> attach;
  for (VertexId v = k + 1; v < n; ++v) {
    std::vector<VertexId> q =
        k == 0 ? std::vector<VertexId>{} : cliques[rng.below(cliques.size())];
    attach.push_back(q);
    for (uint32_t drop = 0; drop < k; ++drop) {
      std::vector<VertexId> nq;
      for (uint32_t j = 0; j < k; ++j)
        if (j != drop) nq.push_back(q[j]);
      nq.push_back(v);
      cliques.push_back(nq);
    }
  }

  std::vector<char> side(n, 0);
  if (bipartite)
    for (VertexId v = 0; v < n; ++v) side[v] = static_cast<char>(rng.next() & 1);

  GeneratedKtree out;
  out.graph.n = n;
  out.graph.directed = opt.directed;
  EdgeId next_id = 0;
  auto consider = [&](VertexId u, VertexId v) {
    if (bipartite && side[u] == side[v]) return;
    emit_edge(out.graph, next_id, u, v, opt, rng);
  };
  for (VertexId u = 0; u <= k && u < n; ++u)
    for (VertexId v = u + 1; v <= k; ++v) consider(u, v);
  for (VertexId v = k + 1; v < n; ++v)
    for (VertexId u : attach[v - k - 1]) consider(u, v);

  // Witness: root bag is the seed clique; vertex v > k owns bag
  // {v} union Q_v, attached under the bag of max(Q_v).
  std::vector<VertexId> root_bag;
  for (VertexId u = 0; u <= k && u < n; ++u) root_bag.push_back(u);
  out.witness.add_bag({}, root_bag);
  std::map<VertexId, BagId> owner;  // v > k only; smaller vertices live at root
  std::map<BagId, uint32_t> next_child;
  for (VertexId v = k + 1; v < n; ++v) {
    const auto& q = attach[v - k - 1];
    VertexId anchor = q.empty() ? 0 : *std::max_element(q.begin(), q.end());
    BagId parent = anchor > k ? owner.at(anchor) : BagId{};
    BagId id = parent;
    id.push_back(next_child[parent]++);
    std::vector<VertexId> bag = q;
    bag.push_back(v);
    out.witness.add_bag(id, bag);
    owner[v] = id;
  }
  return out;
}

MultiGraph generate_path(uint32_t n, const GenOptions& opt, uint64_t seed) {
  check_options(opt);
  if (n == 0) throw InvalidInput("empty vertex set");
  SplitMix64 rng(seed);
  MultiGraph g;
  g.n = n;
  g.directed = opt.directed;
  EdgeId next_id = 0;
  for (VertexId v = 0; v + 1 < n; ++v) emit_edge(g, next_id, v, v + 1, opt, rng);
  return g;
}

MultiGraph generate_cycle(uint32_t n, const GenOptions& opt, uint64_t seed) {
  check_options(opt);
  if (n == 0) throw InvalidInput("empty vertex set");
  SplitMix64 rng(seed);
  MultiGraph g;
  g.n = n;
  g.directed = opt.directed;
  EdgeId next_id = 0;
  for (VertexId v = 0; v < n; ++v) {
    VertexId u = (v + 1) % n;
    if (!rng.chance(opt.keep_num, opt.keep_den)) continue;
    g.add_edge(next_id++, v, u, draw_weight(opt, rng));
  }
  return g;
}

MultiGraph generate_grid(uint32_t rows, uint32_t cols, const GenOptions& opt,
                         uint64_t seed) {
  check_options(opt);
  if (rows == 0 || cols == 0) throw InvalidInput("empty grid");
  SplitMix64 rng(seed);
  MultiGraph g;
  g.n = rows * cols;
  g.directed = opt.directed;
  EdgeId next_id = 0;
  auto at = [cols](uint32_t r, uint32_t c) { return r * cols + c; };
  for (uint32_t r = 0; r < rows; ++r)
    for (uint32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) emit_edge(g, next_id, at(r, c), at(r, c + 1), opt, rng);
      if (r + 1 < rows) emit_edge(g, next_id, at(r, c), at(r + 1, c), opt, rng);
    }
  return g;
}

MultiGraph generate_star(uint32_t n, const GenOptions& opt, uint64_t seed) {
  check_options(opt);
  if (n == 0) throw InvalidInput("empty vertex set");
  SplitMix64 rng(seed);
  MultiGraph g;
  g.n = n;
  g.directed = opt.directed;
  EdgeId next_id = 0;
  for (VertexId v = 1; v < n; ++v) emit_edge(g, next_id, 0, v, opt, rng);
  return g;
}

GeneratedKtree generate_family(const std::string& family, uint32_t n,
                               uint32_t k, const GenOptions& opt,
                               uint64_t seed) {
  if (family == "ktree") return generate_partial_ktree(n, k, opt, seed, false);
  if (family == "bipartite-ktree")
    return generate_partial_ktree(n, k, opt, seed, true);

  GeneratedKtree out;
  if (family == "path") {
    out.graph = generate_path(n, opt, seed);
  } else if (family == "cycle") {
    out.graph = generate_cycle(n, opt, seed);
  } else if (family == "grid") {
    uint32_t cols = std::max<uint32_t>(1, k);
    uint32_t rows = (n + cols - 1) / cols;
    out.graph = generate_grid(rows, cols, opt, seed);
  } else if (family == "star") {
    out.graph = generate_star(n, opt, seed);
  } else {
    throw InvalidInput("unknown family: " + family);
  }
  // Placeholder witness; these families carry no construction decomposition.
  std::vector<VertexId> all;
  for (VertexId v = 0; v < out.graph.n; ++v) all.push_back(v);
  out.witness.add_bag({}, all);
  return out;
}

}  // namespace lowtw
