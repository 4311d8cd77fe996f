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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "core/generators.hpp"
#include "oracle/oracles.hpp"

using namespace lowtw;

namespace {

MultiGraph undirected(uint32_t n, std::vector<std::tuple<VertexId, VertexId, Weight>> es) {
  MultiGraph g;
  g.n = n;
  g.directed = false;
  EdgeId id = 0;
  for (auto [u, v, w] : es) g.add_edge(id++, u, v, w);
  return g;
}

MultiGraph directed(uint32_t n, std::vector<std::tuple<VertexId, VertexId, Weight>> es) {
  MultiGraph g;
  g.n = n;
  g.directed = true;
  EdgeId id = 0;
  for (auto [u, v, w] : es) g.add_edge(id++, u, v, w);
  return g;
}

// Brute-force matching: try all edge subsets.  Usable up to ~16 edges.
uint32_t brute_matching(const MultiGraph& g) {
  CommGraph c = derive_comm_graph(g);
  std::vector<std::pair<VertexId, VertexId>> es;
  for (VertexId u = 0; u < c.n; ++u)
    for (VertexId v : c.adj[u])
      if (u < v) es.push_back({u, v});
  uint32_t best = 0;
  for (uint64_t mask = 0; mask < (1ull << es.size()); ++mask) {
    std::set<VertexId> used;
    bool ok = true;
    uint32_t size = 0;
    for (size_t i = 0; i < es.size() && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      auto [u, v] = es[i];
      if (used.count(u) || used.count(v)) ok = false;
      used.insert(u);
      used.insert(v);
      ++size;
    }
    if (ok) best = std::max(best, size);
  }
  return best;
}

// Brute-force shortest simple cycle by DFS over vertex-simple paths.  The
// only legal length-2 closed walk is over two distinct parallel edges.
Weight brute_girth(const MultiGraph& g) {
  Weight best = kInf;
  auto out = g.out_arcs();
  std::vector<char> on_path(g.n, 0);
  std::function<void(VertexId, VertexId, EdgeId, uint32_t, Weight)> dfs =
      [&](VertexId start, VertexId u, EdgeId first_edge, uint32_t edges,
          Weight acc) {
        for (const auto& a : out[u]) {
          if (a.cost == kInf) continue;
          Weight w = wadd(acc, a.cost);
          if (w >= best) continue;
          if (a.to == start) {
            if (!g.directed && edges == 1 && a.edge == first_edge) continue;
            best = w;
            continue;
          }
          if (on_path[a.to]) continue;
          on_path[a.to] = 1;
          dfs(start, a.to, first_edge, edges + 1, w);
          on_path[a.to] = 0;
        }
      };
  for (VertexId s = 0; s < g.n; ++s) {
    for (const auto& a : out[s]) {
      if (a.cost == kInf) continue;
      if (a.to == s) {
        best = std::min(best, a.cost);
        continue;
      }
      on_path[s] = 1;
      on_path[a.to] = 1;
      dfs(s, a.to, a.edge, 1, a.cost);
      on_path[a.to] = 0;
      on_path[s] = 0;
    }
  }
  return best;
}

// Brute-force constrained walk table by explicit enumeration with folding.
WalkTable brute_walk_table(const MultiGraph& g, const StatefulConstraint& c,
                           uint32_t max_len) {
  WalkTable table;
  table.n = g.n;
  table.num_states = c.num_states();
  table.d.assign(static_cast<size_t>(g.n) * g.n * c.num_states(), kInf);
  auto out = g.out_arcs();
  for (VertexId s = 0; s < g.n; ++s) {
    std::function<void(VertexId, uint32_t, uint32_t, Weight)> dfs =
        [&](VertexId u, uint32_t state, uint32_t used, Weight acc) {
          table.at(s, u, state) = std::min(table.at(s, u, state), acc);
          if (used == max_len) return;
          for (const auto& a : out[u])
            dfs(a.to, c.step(a.edge, state), used + 1, wadd(acc, a.cost));
        };
    dfs(s, StatefulConstraint::kInit, 0, 0);
  }
  return table;
}

// Brute-force vertex cut: all subsets of V minus the terminals.
Weight brute_vertex_cut(const MultiGraph& g, const std::set<VertexId>& xs,
                        const std::set<VertexId>& ys) {
  for (VertexId x : xs)
    if (ys.count(x)) return kInf;
  CommGraph c = derive_comm_graph(g);
  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < c.n; ++v)
    if (!xs.count(v) && !ys.count(v)) free_vertices.push_back(v);
  Weight best = kInf;
  for (uint64_t mask = 0; mask < (1ull << free_vertices.size()); ++mask) {
    std::set<VertexId> removed;
    for (size_t i = 0; i < free_vertices.size(); ++i)
      if (mask >> i & 1) removed.insert(free_vertices[i]);
    // BFS from X avoiding removed; separated iff no Y reached
    std::vector<char> seen(c.n, 0);
    std::vector<VertexId> stack(xs.begin(), xs.end());
    for (VertexId x : xs) seen[x] = 1;
    bool hit = false;
    while (!stack.empty() && !hit) {
      VertexId u = stack.back();
      stack.pop_back();
      if (ys.count(u)) hit = true;
      for (VertexId v : c.adj[u])
        if (!removed.count(v) && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    if (!hit) best = std::min<Weight>(best, removed.size());
  }
  return best;
}

}  // namespace

TEST_CASE("apsp on a directed path") {
  auto g = directed(3, {{0, 1, 2}, {1, 2, 3}});
  auto d = oracle_apsp(g);
  CHECK(d[0][2] == 5);
  CHECK(d[0][0] == 0);
  CHECK(d[2][0] == kInf);
  CHECK(d[1][1] == 0);
}

TEST_CASE("apsp respects parallel edge minima and inf edges") {
  auto g = undirected(2, {{0, 1, 9}, {0, 1, 4}, {0, 1, kInf}});
  auto d = oracle_apsp(g);
  CHECK(d[0][1] == 4);
  CHECK(d[1][0] == 4);
}

TEST_CASE("matching on the spec examples") {
  auto p4 = undirected(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  CHECK(oracle_matching(p4) == 2);
  auto star = undirected(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  CHECK(oracle_matching(star) == 1);
  auto c6 = undirected(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 0, 1}});
  CHECK(oracle_matching(c6) == 3);
  auto tri = undirected(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK_THROWS_AS(oracle_matching(tri), NotBipartite);
  auto loop = undirected(2, {{0, 0, 1}, {0, 1, 1}});
  CHECK_THROWS_AS(oracle_matching(loop), NotBipartite);
}

TEST_CASE("matching agrees with subset brute force on random bipartite graphs") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    GenOptions opt;
    opt.keep_num = 2;
    opt.keep_den = 3;
    auto gen = generate_partial_ktree(9, 2, opt, 1000 + seed, /*bipartite=*/true);
    if (gen.graph.edges.size() > 15) continue;
    CHECK(oracle_matching(gen.graph) == brute_matching(gen.graph));
  }
}

TEST_CASE("girth on the spec examples") {
  auto tri = undirected(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}});
  CHECK(oracle_girth(tri).weight == 6);
  auto forest = undirected(4, {{0, 1, 1}, {2, 3, 5}});
  CHECK(oracle_girth(forest).weight == kInf);
  CHECK(oracle_girth(forest).edges.empty());
  auto two = undirected(5, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1},
                            {0, 3, 5}, {3, 4, 5}, {4, 0, 5}});
  CHECK(oracle_girth(two).weight == 3);
  auto dtri = directed(3, {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}});
  CHECK(oracle_girth(dtri).weight == 6);
  CHECK(oracle_girth(dtri).edges.size() == 3);
  auto dag = directed(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  CHECK(oracle_girth(dag).weight == kInf);
  auto c4 = undirected(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  CHECK(oracle_girth(c4).weight == 4);
  CHECK(oracle_girth(c4).edges.size() == 4);
}

TEST_CASE("girth handles multigraph degenerate cycles") {
  auto parallel = undirected(2, {{0, 1, 3}, {0, 1, 4}});
  CHECK(oracle_girth(parallel).weight == 7);
  CHECK(oracle_girth(parallel).edges.size() == 2);
  auto loop = undirected(1, {{0, 0, 2}});
  CHECK(oracle_girth(loop).weight == 2);
  CHECK(oracle_girth(loop).edges.size() == 1);
  auto two_cycle = directed(2, {{0, 1, 1}, {1, 0, 6}});
  CHECK(oracle_girth(two_cycle).weight == 7);
  auto loner = undirected(2, {{0, 1, 1}});
  CHECK(oracle_girth(loner).weight == kInf);
  CHECK_THROWS_AS(oracle_girth(undirected(2, {{0, 1, 0}})), InvalidInput);
}

TEST_CASE("girth witness edges always form the reported cycle") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GenOptions opt;
    opt.keep_num = 3;
    opt.keep_den = 4;
    opt.weight_max = 9;
    opt.directed = seed % 2 == 0;
    auto gen = generate_partial_ktree(8, 2, opt, 500 + seed);
    auto got = oracle_girth(gen.graph);
    CHECK(got.weight == brute_girth(gen.graph));
    if (got.weight == kInf) continue;
    // witness weight adds up and endpoints chain into a closed simple cycle
    Weight sum = 0;
    std::set<VertexId> visited;
    REQUIRE(!got.edges.empty());
    VertexId at = gen.graph.edge(got.edges.front()).from;
    if (!gen.graph.directed && got.edges.size() >= 2) {
      // orient the first undirected edge toward the second
      const auto& e0 = gen.graph.edge(got.edges[0]);
      const auto& e1 = gen.graph.edge(got.edges[1]);
      if (e0.from == e1.from || e0.from == e1.to) at = e0.to;
    }
    VertexId start = at;
    for (size_t i = 0; i < got.edges.size(); ++i) {
      const auto& e = gen.graph.edge(got.edges[i]);
      sum += e.cost;
      REQUIRE((e.from == at || (!gen.graph.directed && e.to == at)));
      at = e.from == at ? e.to : e.from;
      if (i + 1 < got.edges.size()) {
        CHECK(at != start);
        CHECK(!visited.count(at));
        visited.insert(at);
      }
    }
    CHECK(at == start);
    CHECK(sum == got.weight);
  }
}

TEST_CASE("constrained walks: empty and zero-length behavior") {
  auto g = undirected(3, {{0, 1, 2}, {1, 2, 3}});
  auto c = count_constraint(1, {{0, 1}, {1, 0}});
  auto t0 = oracle_constrained_walks(g, c, 0);
  for (VertexId s = 0; s < 3; ++s)
    for (VertexId t = 0; t < 3; ++t)
      for (uint32_t q = 0; q < c.num_states(); ++q) {
        Weight expect = (s == t && q == StatefulConstraint::kInit) ? 0 : kInf;
        CHECK(t0.at(s, t, q) == expect);
      }
}

TEST_CASE("count-1 triangle closed walk") {
  // exactly one 1-labeled edge; the lightest state-1 closed walk from any
  // vertex is the full triangle
  auto g = undirected(3, {{0, 1, 2}, {1, 2, 3}, {2, 0, 4}});
  auto c = count_constraint(1, {{0, 1}, {1, 0}, {2, 0}});
  auto table = oracle_constrained_walks(g, c, 6);
  for (VertexId v = 0; v < 3; ++v) CHECK(table.at(v, v, 3) == 9);
}

TEST_CASE("colored alternating path") {
  // colors m u m on a 3-edge path: the walk is admitted end to end
  auto g = undirected(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  auto c = colored_constraint(2, {{0, 0}, {1, 1}, {2, 0}});
  auto table = oracle_constrained_walks(g, c, 8);
  CHECK(table.at(0, 3, 2) == 3);  // ends on color 0
  CHECK(table.at(0, 3, 3) == kInf);
  // monochromatic 2-edge path is rejected
  auto mono = colored_constraint(1, {{0, 0}, {1, 0}, {2, 0}});
  auto mt = oracle_constrained_walks(g, mono, 8);
  CHECK(mt.at(0, 2, 2) == kInf);
  CHECK(mt.at(0, 1, 2) == 1);
}

TEST_CASE("constrained walk table matches explicit enumeration") {
  for (uint64_t seed = 0; seed < 8; ++seed) {
    GenOptions opt;
    opt.keep_num = 3;
    opt.keep_den = 4;
    opt.weight_max = 5;
    opt.directed = seed % 2 == 1;
    auto gen = generate_partial_ktree(5, 2, opt, 300 + seed);
    std::map<EdgeId, uint32_t> labels;
    SplitMix64 rng(seed);
    for (const auto& e : gen.graph.edges) labels[e.id] = rng.below(2);
    auto c = count_constraint(1, labels);
    uint32_t L = 5;
    auto table = oracle_constrained_walks(gen.graph, c, L);
    auto brute = brute_walk_table(gen.graph, c, L);
    CHECK(table.d == brute.d);
  }
}

TEST_CASE("constrained walk table stabilizes beyond the mixing length") {
  auto g = undirected(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  auto c = count_constraint(2, {{0, 1}, {1, 0}, {2, 1}, {3, 0}});
  auto a = oracle_constrained_walks(g, c, 40);
  auto b = oracle_constrained_walks(g, c, 80);
  CHECK(a.d == b.d);
}

TEST_CASE("vertex cut on the spec examples") {
  auto path = undirected(3, {{0, 1, 1}, {1, 2, 1}});
  auto got = oracle_min_vertex_cut(path, {0}, {2});
  CHECK(got.size == 1);
  CHECK(got.cut == std::vector<VertexId>{1});
  CHECK(oracle_min_vertex_cut(path, {0}, {1}).size == kInf);
  CHECK(oracle_min_vertex_cut(path, {0, 1}, {1}).size == kInf);
  auto k4 = undirected(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1},
                           {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  CHECK(oracle_min_vertex_cut(k4, {0}, {3}).size == kInf);  // adjacent
  auto k4_minus = undirected(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  auto cut = oracle_min_vertex_cut(k4_minus, {0}, {3});
  CHECK(cut.size == 2);
  CHECK(cut.cut == std::vector<VertexId>{1, 2});
}

TEST_CASE("vertex cut agrees with exhaustive subsets") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    GenOptions opt;
    opt.keep_num = 1;
    opt.keep_den = 2;
    auto gen = generate_partial_ktree(7, 3, opt, 700 + seed);
    SplitMix64 rng(seed * 17 + 1);
    std::set<VertexId> xs{static_cast<VertexId>(rng.below(7))};
    std::set<VertexId> ys{static_cast<VertexId>(rng.below(7))};
    if (rng.chance(1, 2)) xs.insert(static_cast<VertexId>(rng.below(7)));
    if (rng.chance(1, 2)) ys.insert(static_cast<VertexId>(rng.below(7)));
    auto got = oracle_min_vertex_cut(gen.graph, xs, ys);
    CHECK(got.size == brute_vertex_cut(gen.graph, xs, ys));
    if (got.size != kInf) {
      CHECK(got.cut.size() == got.size);
      for (VertexId v : got.cut) {
        CHECK(!xs.count(v));
        CHECK(!ys.count(v));
      }
      // removing the witness really separates X from Y
      CommGraph c = derive_comm_graph(gen.graph);
      std::set<VertexId> removed(got.cut.begin(), got.cut.end());
      std::vector<char> seen(c.n, 0);
      std::vector<VertexId> stack;
      for (VertexId x : xs)
        if (!removed.count(x)) {
          stack.push_back(x);
          seen[x] = 1;
        }
      bool hit = false;
      while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        if (ys.count(u)) hit = true;
        for (VertexId v : c.adj[u])
          if (!removed.count(v) && !seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
          }
      }
      CHECK(!hit);
    }
  }
}

TEST_CASE("balance checks are exact rationals") {
  auto p5 = undirected(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}});
  std::set<VertexId> all{0, 1, 2, 3, 4};
  CHECK(oracle_balance(p5, {0, 1, 2, 3, 4}, all, 1, 2));  // S=V vacuous
  CHECK(!oracle_balance(p5, {}, all, 1, 2));              // one big component
  CHECK(oracle_balance(p5, {2}, all, 1, 2));
  CHECK(oracle_balance(p5, {2}, all, 2, 5));   // exactly at the bound
  CHECK(!oracle_balance(p5, {2}, all, 1, 3));  // 2/5 > 1/3
  // measure counts only X vertices
  CHECK(!oracle_balance(p5, {1}, {0}, 1, 4));  // component {0} holds all of X
  CHECK(oracle_balance(p5, {1}, {0, 2}, 1, 2));  // X split evenly by S
  CHECK(!oracle_balance(p5, {1}, {0}, 0, 1));    // alpha = 0
  CHECK(oracle_balance(p5, {0}, {0}, 0, 1));     // X fully inside S
  CHECK_THROWS_AS(oracle_balance(p5, {}, all, 1, 0), InvalidInput);
}
