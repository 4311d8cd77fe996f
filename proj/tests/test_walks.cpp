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
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "core/constraint.hpp"
#include "core/generators.hpp"
#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"
#include "core/types.hpp"
#include "oracle/oracles.hpp"
#include "sep/separator.hpp"
#include "sim/engine.hpp"
#include "td/tree_decomp.hpp"
#include "walks/stateful_walks.hpp"

using namespace lowtw;
using walks::ConstrainedWalk;
using walks::ProductGraph;

namespace {

MultiGraph random_multigraph(uint32_t n, bool directed, uint32_t edges,
                             SplitMix64& rng) {
  MultiGraph g;
  g.n = n;
  g.directed = directed;
  for (EdgeId e = 0; e < edges; ++e) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId v = static_cast<VertexId>(rng.below(n));
    Weight w = rng.chance(1, 12) ? kInf : 1 + rng.below(6);
    g.add_edge(e, u, v, w);
  }
  return g;
}

// Random colored or count constraint labeling every edge; |Q| <= 5.
StatefulConstraint random_constraint(const MultiGraph& g, SplitMix64& rng) {
  if (rng.chance(1, 2)) {
    uint32_t c = 1 + static_cast<uint32_t>(rng.below(3));
    std::map<EdgeId, uint32_t> coloring;
    for (const auto& e : g.edges)
      coloring[e.id] = static_cast<uint32_t>(rng.below(c));
    return colored_constraint(c, coloring);
  }
  uint32_t c = static_cast<uint32_t>(rng.below(3));
  std::map<EdgeId, uint32_t> bits;
  for (const auto& e : g.edges) bits[e.id] = static_cast<uint32_t>(rng.below(2));
  return count_constraint(c, bits);
}

GeneratedKtree connected_ktree(uint32_t n, uint32_t k, const GenOptions& opt,
                               uint64_t base) {
  for (uint64_t seed = base; seed < base + 20; ++seed) {
    GeneratedKtree gen = generate_partial_ktree(n, k, opt, seed);
    if (derive_comm_graph(gen.graph).connected()) return gen;
  }
  REQUIRE(false);
  return {};
}

void check_walk(const MultiGraph& g, const StatefulConstraint& c,
                const ConstrainedWalk& w, VertexId s, VertexId t, uint32_t q,
                Weight expect) {
  REQUIRE(w.weight == expect);
  REQUIRE(w.vertices.size() == w.edges.size() + 1);
  REQUIRE(w.states.size() == w.vertices.size());
  REQUIRE(w.prefix_weight.size() == w.vertices.size());
  REQUIRE(w.vertices.front() == s);
  REQUIRE(w.vertices.back() == t);
  REQUIRE(w.states.front() == StatefulConstraint::kInit);
  REQUIRE(w.states.back() == q);
  REQUIRE(w.prefix_weight.front() == 0);
  REQUIRE(w.prefix_weight.back() == expect);
  REQUIRE(c.classify(w.edges) == q);
  Weight acc = 0;
  for (size_t i = 0; i < w.edges.size(); ++i) {
    const auto& e = g.edge(w.edges[i]);
    bool fwd = e.from == w.vertices[i] && e.to == w.vertices[i + 1];
    bool bwd = !g.directed && e.to == w.vertices[i] && e.from == w.vertices[i + 1];
    REQUIRE((fwd || bwd));
    acc = wadd(acc, e.cost);
    REQUIRE(w.prefix_weight[i + 1] == acc);
  }
}

sim::NodeProgram min_flood(std::vector<uint64_t>& out, uint32_t rounds,
                           uint32_t width) {
  return [&out, rounds, width](sim::Ctx& ctx) -> sim::NodeTask {
    uint64_t best = ctx.id();
    for (uint32_t r = 0; r < rounds; ++r) {
      sim::BitWriter w;
      w.push(best, width);
      sim::Bits payload = w.take();
      for (VertexId nb : ctx.neighbors()) ctx.send(nb, payload);
      co_await ctx.next_round();
      for (const auto& [from, bits] : ctx.inbox()) {
        (void)from;
        sim::BitReader rd(bits);
        best = std::min(best, rd.pull(width));
      }
    }
    out[ctx.id()] = best;
  };
}

}  // namespace

TEST_CASE("product graph matches the construction rules") {
  SplitMix64 rng(0x70726f64756374ull);
  for (int trial = 0; trial < 12; ++trial) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(5));
    MultiGraph g =
        random_multigraph(n, rng.chance(1, 2),
                          1 + static_cast<uint32_t>(rng.below(10)), rng);
    StatefulConstraint c = random_constraint(g, rng);
    uint32_t states = c.num_states();
    ProductGraph pg = walks::build_product_graph(g, c);

    REQUIRE(pg.base_n == g.n);
    REQUIRE(pg.num_states == states);
    REQUIRE(pg.graph.n == states * g.n);
    REQUIRE(pg.graph.directed);
    REQUIRE(pg.origin.size() == pg.graph.edges.size());
    REQUIRE(walks::build_product_graph(g, c).graph == pg.graph);

    auto arcs = g.arcs();
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const auto& pe : pg.graph.edges) {
      REQUIRE(seen.insert({pe.from, pe.to}).second);
      VertexId u = pg.base_of(pe.from), v = pg.base_of(pe.to);
      uint32_t i = pg.state_of(pe.from), j = pg.state_of(pe.to);
      EdgeId o = pg.origin[pe.id];
      if (o == ProductGraph::kNoOrigin) {
        REQUIRE(u == v);
        REQUIRE(i != StatefulConstraint::kReject);
        REQUIRE(j == StatefulConstraint::kReject);
        REQUIRE(pe.cost == 0);
        continue;
      }
      // The origin must realize the transition at minimum cost, smallest
      // edge id among cost ties.
      REQUIRE(c.step(o, i) == j);
      Weight best = kInf;
      EdgeId best_id = ProductGraph::kNoOrigin;
      for (const auto& a : arcs) {
        if (a.from != u || a.to != v || c.step(a.edge, i) != j) continue;
        if (std::pair(a.cost, a.edge) < std::pair(best, best_id)) {
          best = a.cost;
          best_id = a.edge;
        }
      }
      bool shortcut_wins = u == v && j == StatefulConstraint::kReject &&
                           i != StatefulConstraint::kReject;
      REQUIRE(!shortcut_wins);  // shortcuts cost 0, so they always fold first
      REQUIRE(pe.cost == best);
      REQUIRE(o == best_id);
    }
    // Completeness: every transition and every shortcut appears.
    for (const auto& a : arcs)
      for (uint32_t i = 0; i < states; ++i)
        REQUIRE(seen.count({pg.encode(a.from, i),
                            pg.encode(a.to, c.step(a.edge, i))}) == 1);
    for (VertexId u = 0; u < g.n; ++u)
      for (uint32_t i = 0; i < states; ++i)
        if (i != StatefulConstraint::kReject)
          REQUIRE(seen.count({pg.encode(u, i),
                              pg.encode(u, StatefulConstraint::kReject)}) == 1);
  }
}

TEST_CASE("canonical families behave as documented") {
  // One color: consecutive edges always repeat it, so two hops die.
  MultiGraph path;
  path.n = 3;
  path.directed = false;
  path.add_edge(0, 0, 1, 1);
  path.add_edge(1, 1, 2, 1);
  StatefulConstraint c1 = colored_constraint(1, {{0, 0}, {1, 0}});
  REQUIRE(walks::constrained_distance(path, c1, 0, 1, 2) == 1);
  REQUIRE(walks::constrained_distance(path, c1, 0, 2, 2) == kInf);
  CHECK_THROWS_AS(walks::extract_constrained_walk(path, c1, 0, 2, 2),
                  Unreachable);

  // count-1 on a single 1-labeled edge: the init layer steps to sum one.
  MultiGraph one;
  one.n = 2;
  one.directed = true;
  one.add_edge(0, 0, 1, 7);
  StatefulConstraint cc = count_constraint(1, {{0, 1}});
  ProductGraph pg = walks::build_product_graph(one, cc);
  REQUIRE(pg.graph.min_cost(pg.encode(0, StatefulConstraint::kInit),
                            pg.encode(1, 3)) == 7);
  REQUIRE(walks::constrained_distance(one, cc, 0, 1, 3) == 7);

  // count-1 triangle, one 1-labeled edge: the closed walk that ends with
  // bit-sum one must go all the way around.
  MultiGraph tri;
  tri.n = 3;
  tri.directed = false;
  tri.add_edge(0, 0, 1, 2);
  tri.add_edge(1, 1, 2, 3);
  tri.add_edge(2, 2, 0, 4);
  StatefulConstraint cnt = count_constraint(1, {{0, 1}, {1, 0}, {2, 0}});
  REQUIRE(walks::constrained_distance(tri, cnt, 0, 0, 3) == 9);
  REQUIRE(walks::constrained_distance(tri, cnt, 0, 0, 2) == 8);  // 0-2-0
  ConstrainedWalk around = walks::extract_constrained_walk(tri, cnt, 0, 0, 3);
  check_walk(tri, cnt, around, 0, 0, 3, 9);
  REQUIRE(around.edges.size() == 3);

  // Alternating colors m,u,m along three edges: the whole path qualifies.
  MultiGraph alt;
  alt.n = 4;
  alt.directed = false;
  alt.add_edge(0, 0, 1, 2);
  alt.add_edge(1, 1, 2, 3);
  alt.add_edge(2, 2, 3, 4);
  StatefulConstraint col2 = colored_constraint(2, {{0, 0}, {1, 1}, {2, 0}});
  REQUIRE(walks::constrained_distance(alt, col2, 0, 3, 2) == 9);
  ConstrainedWalk w = walks::extract_constrained_walk(alt, col2, 0, 3, 2);
  check_walk(alt, col2, w, 0, 3, 2, 9);
  REQUIRE(w.edges == std::vector<EdgeId>{0, 1, 2});
  REQUIRE(w.vertices == std::vector<VertexId>{0, 1, 2, 3});
  REQUIRE(w.states == std::vector<uint32_t>{0, 2, 3, 2});
  REQUIRE(w.prefix_weight == std::vector<Weight>{0, 2, 5, 9});

  // Empty walk: a vertex reaches itself in the initial state for free.
  ConstrainedWalk empty =
      walks::extract_constrained_walk(alt, col2, 1, 1, StatefulConstraint::kInit);
  REQUIRE(empty.edges.empty());
  REQUIRE(empty.weight == 0);
  REQUIRE(empty.vertices == std::vector<VertexId>{1});
}

TEST_CASE("product shortest paths equal exhaustive walk enumeration") {
  SplitMix64 rng(0x77616c6b73ull);
  for (int trial = 0; trial < 40; ++trial) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(6));
    MultiGraph g =
        random_multigraph(n, rng.chance(1, 2),
                          1 + static_cast<uint32_t>(rng.below(12)), rng);
    StatefulConstraint c = random_constraint(g, rng);
    uint32_t states = c.num_states();
    REQUIRE(states <= 5);
    WalkTable full = oracle_constrained_walks(g, c, 4 * n * states);
    WalkTable bounded = oracle_constrained_walks(g, c, 8);
    ProductGraph pg = walks::build_product_graph(g, c);

    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = 0; t < n; ++t)
        for (uint32_t q = 0; q < states; ++q) {
          if (q == StatefulConstraint::kReject) continue;
          Weight pd = walks::constrained_distance(g, c, s, t, q);
          REQUIRE(pd == full.at(s, t, q));
          REQUIRE(pd <= bounded.at(s, t, q));
        }

    // A handful of witness walks per instance.
    uint32_t checked = 0;
    for (VertexId s = 0; s < n && checked < 4; ++s)
      for (VertexId t = 0; t < n && checked < 4; ++t)
        for (uint32_t q = 0; q < states && checked < 4; ++q) {
          if (q == StatefulConstraint::kReject) continue;
          if (full.at(s, t, q) == kInf) continue;
          ConstrainedWalk w = walks::extract_constrained_walk(g, c, s, t, q);
          check_walk(g, c, w, s, t, q, full.at(s, t, q));
          ++checked;
        }

    // Communication diameter of the product stays within two extra hops.
    CommGraph base = derive_comm_graph(g);
    if (base.connected()) {
      CommGraph prod = derive_comm_graph(pg.graph);
      REQUIRE(prod.connected());
      REQUIRE(prod.diameter() <= base.diameter() + 2);
    }
  }
}

TEST_CASE("lifted decompositions validate on the product") {
  GenOptions opt;
  opt.weight_min = 1;
  opt.weight_max = 4;
  GeneratedKtree gen = generate_partial_ktree(40, 2, opt, 9);
  SplitMix64 rng(0x6c696674ull);
  std::map<EdgeId, uint32_t> coloring;
  for (const auto& e : gen.graph.edges)
    coloring[e.id] = static_cast<uint32_t>(rng.below(2));
  StatefulConstraint c2 = colored_constraint(2, coloring);
  ProductGraph pg = walks::build_product_graph(gen.graph, c2);
  TreeDecomposition lifted = walks::lift_decomposition(gen.witness, pg);
  DecompositionReport report = validate_tree_decomposition(pg.graph, lifted);
  REQUIRE(report.valid);
  REQUIRE(lifted.width() + 1 ==
          (gen.witness.width() + 1) * c2.num_states());
  REQUIRE(lifted.width() <=
          static_cast<uint32_t>((gen.witness.width() + 1) *
                                (c2.num_states() + 1)) - 1);
  REQUIRE(lifted.depth() == gen.witness.depth());
}

TEST_CASE("constrained labels decode every pair and state") {
  GenOptions opt;
  opt.keep_num = 14;
  opt.keep_den = 15;
  opt.weight_min = 1;
  opt.weight_max = 6;
  GeneratedKtree gen = connected_ktree(25, 2, opt, 17);
  SplitMix64 rng(0x63646cull);
  std::map<EdgeId, uint32_t> coloring;
  for (const auto& e : gen.graph.edges)
    coloring[e.id] = static_cast<uint32_t>(rng.below(2));
  StatefulConstraint c2 = colored_constraint(2, coloring);

  td::TdResult built =
      td::build_tree_decomposition(gen.graph, sep::SepConfig::desk(), 23);
  walks::CdlResult cdl = walks::cdl_build(gen.graph, c2, built.td);
  REQUIRE(cdl.num_states == c2.num_states());
  REQUIRE(cdl.stats.per_algorithm_rounds.count("bct") == 1);

  WalkTable full =
      oracle_constrained_walks(gen.graph, c2, 4 * gen.graph.n * c2.num_states());
  for (VertexId u = 0; u < gen.graph.n; ++u)
    for (VertexId v = 0; v < gen.graph.n; ++v)
      for (uint32_t q = 0; q < c2.num_states(); ++q) {
        if (q == StatefulConstraint::kReject) continue;
        REQUIRE(walks::cdl_decode(q, cdl.labels[u], cdl.labels[v]) ==
                full.at(u, v, q));
      }
  REQUIRE(walks::cdl_decode(StatefulConstraint::kInit, cdl.labels[3],
                            cdl.labels[3]) == 0);
  REQUIRE(walks::cdl_decode(2, cdl.labels[0], cdl.labels[7]) ==
          walks::constrained_distance(gen.graph, c2, 0, 7, 2));
  CHECK_THROWS_AS(walks::cdl_decode(StatefulConstraint::kReject, cdl.labels[0],
                                    cdl.labels[1]),
                  InvalidState);
}

TEST_CASE("a product run projects onto the base network unchanged") {
  GenOptions opt;
  opt.weight_min = 1;
  opt.weight_max = 3;
  GeneratedKtree gen = generate_partial_ktree(16, 2, opt, 5);
  SplitMix64 rng(0x70726f6aull);
  std::map<EdgeId, uint32_t> bits;
  for (const auto& e : gen.graph.edges)
    bits[e.id] = static_cast<uint32_t>(rng.below(2));
  StatefulConstraint cc = count_constraint(1, {bits.begin(), bits.end()});
  ProductGraph pg = walks::build_product_graph(gen.graph, cc);

  CommGraph base = derive_comm_graph(gen.graph);
  CommGraph prod = derive_comm_graph(pg.graph);
  REQUIRE(prod.connected());
  uint32_t rounds = prod.diameter() + 2;
  uint32_t width = bits_for(pg.graph.n - 1);

  std::vector<uint64_t> direct(pg.graph.n, 1), projected(pg.graph.n, 2);
  sim::RunStats ds = sim::run(prod, min_flood(direct, rounds, width), 1 << 20);
  sim::Projection proj = walks::product_projection(pg, base);
  sim::RunStats ps =
      sim::run_projected(proj, min_flood(projected, rounds, width), 1 << 20);

  REQUIRE(direct == projected);
  REQUIRE(std::all_of(direct.begin(), direct.end(),
                      [](uint64_t m) { return m == 0; }));
  REQUIRE(ds.per_algorithm_rounds.at("main") ==
          ps.per_algorithm_rounds.at("main"));
  REQUIRE(ps.rounds >= ds.rounds);
}

TEST_CASE("argument and constraint validation") {
  MultiGraph g;
  g.n = 2;
  g.directed = false;
  g.add_edge(0, 0, 1, 1);
  StatefulConstraint cc = count_constraint(1, {{0, 0}});

  CHECK_THROWS_AS(
      walks::constrained_distance(g, cc, 0, 1, StatefulConstraint::kReject),
      InvalidState);
  CHECK_THROWS_AS(walks::constrained_distance(g, cc, 0, 1, 99), InvalidInput);
  CHECK_THROWS_AS(walks::constrained_distance(g, cc, 5, 1, 2), InvalidInput);
  CHECK_THROWS_AS(
      walks::extract_constrained_walk(g, cc, 0, 1, StatefulConstraint::kReject),
      InvalidState);

  StatefulConstraint leaky = cc;
  leaky.delta[0][StatefulConstraint::kReject] = StatefulConstraint::kInit;
  CHECK_THROWS_AS(walks::build_product_graph(g, leaky), MalformedConstraint);

  StatefulConstraint stray = cc;
  stray.delta[7] = stray.delta[0];
  CHECK_THROWS_AS(walks::build_product_graph(g, stray), InvalidInput);
}
