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

#include "walks/stateful_walks.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <utility>

namespace lowtw::walks {

namespace {

// Shortest distances from one product vertex, with the minimum hop count
// among minimum-cost walks as a secondary key.  The hop count makes
// predecessor walks terminate even across zero-cost arcs.
struct ProductDist {
  std::vector<Weight> dist;
  std::vector<uint32_t> hops;
};

ProductDist product_dijkstra(const MultiGraph& pg, VertexId source) {
  ProductDist out;
  out.dist.assign(pg.n, kInf);
  out.hops.assign(pg.n, std::numeric_limits<uint32_t>::max());
  auto adj = pg.out_arcs();
  using Key = std::tuple<Weight, uint32_t, VertexId>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  out.dist[source] = 0;
  out.hops[source] = 0;
  heap.emplace(0, 0, source);
  while (!heap.empty()) {
    auto [d, h, v] = heap.top();
    heap.pop();
    if (d != out.dist[v] || h != out.hops[v]) continue;
    for (const auto& a : adj[v]) {
      if (a.cost == kInf) continue;
      Weight nd = wadd(d, a.cost);
      uint32_t nh = h + 1;
      if (nd < out.dist[a.to] ||
          (nd == out.dist[a.to] && nh < out.hops[a.to])) {
        out.dist[a.to] = nd;
        out.hops[a.to] = nh;
        heap.emplace(nd, nh, a.to);
      }
    }
  }
  return out;
}

void check_query(const ProductGraph& pg, VertexId s, VertexId t, uint32_t q) {
  if (s >= pg.base_n || t >= pg.base_n)
    throw InvalidInput("walk endpoint out of range");
  if (q >= pg.num_states) throw InvalidInput("walk state out of range");
  if (q == StatefulConstraint::kReject)
    throw InvalidState("the reject state carries no walk semantics");
}

}  // namespace

ProductGraph build_product_graph(const MultiGraph& g,
                                 const StatefulConstraint& c) {
  c.check_well_formed();
  for (const auto& [e, table] : c.delta) {
    (void)table;
    if (!g.has_edge_id(e))
      throw InvalidInput("constraint table for an edge the graph lacks");
  }
  uint64_t product_n = static_cast<uint64_t>(c.num_states()) * g.n;
  if (product_n > std::numeric_limits<VertexId>::max())
    throw InvalidInput("product vertex ids would overflow");

  ProductGraph pg;
  pg.base_n = g.n;
  pg.num_states = c.num_states();
  pg.graph.n = static_cast<uint32_t>(product_n);
  pg.graph.directed = true;

  // Fold parallel realizations of one product arc to (min cost, min origin).
  std::map<std::pair<VertexId, VertexId>, std::pair<Weight, EdgeId>> fold;
  auto offer = [&fold](VertexId pu, VertexId pv, Weight cost, EdgeId origin) {
    auto [it, fresh] = fold.try_emplace({pu, pv}, cost, origin);
    if (!fresh && std::pair(cost, origin) < it->second)
      it->second = {cost, origin};
  };
  for (const auto& a : g.arcs())
    for (uint32_t i = 0; i < pg.num_states; ++i)
      offer(pg.encode(a.from, i), pg.encode(a.to, c.step(a.edge, i)), a.cost,
            a.edge);
  for (VertexId u = 0; u < g.n; ++u)
    for (uint32_t i = 0; i < pg.num_states; ++i)
      if (i != StatefulConstraint::kReject)
        offer(pg.encode(u, i), pg.encode(u, StatefulConstraint::kReject), 0,
              ProductGraph::kNoOrigin);

  EdgeId next = 0;
  for (const auto& [key, val] : fold) {
    pg.graph.add_edge(next++, key.first, key.second, val.first);
    pg.origin.push_back(val.second);
  }
  return pg;
}

sim::Projection product_projection(const ProductGraph& pg,
                                   const CommGraph& physical) {
  sim::Projection proj;
  proj.logical = derive_comm_graph(pg.graph);
  proj.to_physical.resize(pg.graph.n);
  for (VertexId pv = 0; pv < pg.graph.n; ++pv)
    proj.to_physical[pv] = pg.base_of(pv);
  proj.physical = &physical;
  return proj;
}

TreeDecomposition lift_decomposition(const TreeDecomposition& td,
                                     const ProductGraph& pg) {
  TreeDecomposition lifted;
  for (const auto& [id, bag] : td.bags) {
    std::vector<VertexId> verts;
    verts.reserve(bag.size() * pg.num_states);
    for (VertexId u : bag)
      for (uint32_t q = 0; q < pg.num_states; ++q)
        verts.push_back(pg.encode(u, q));
    lifted.add_bag(id, verts);
  }
  return lifted;
}

Weight constrained_distance(const MultiGraph& g, const StatefulConstraint& c,
                            VertexId s, VertexId t, uint32_t q) {
  ProductGraph pg = build_product_graph(g, c);
  check_query(pg, s, t, q);
  ProductDist dist =
      product_dijkstra(pg.graph, pg.encode(s, StatefulConstraint::kInit));
  return dist.dist[pg.encode(t, q)];
}

ConstrainedWalk extract_constrained_walk(const MultiGraph& g,
                                         const StatefulConstraint& c,
                                         VertexId s, VertexId t, uint32_t q) {
  ProductGraph pg = build_product_graph(g, c);
  check_query(pg, s, t, q);
  VertexId source = pg.encode(s, StatefulConstraint::kInit);
  VertexId target = pg.encode(t, q);
  ProductDist dist = product_dijkstra(pg.graph, source);
  if (dist.dist[target] == kInf)
    throw Unreachable("no constrained walk reaches the target state");

  std::vector<std::vector<MultiGraph::Arc>> into(pg.graph.n);
  for (const auto& a : pg.graph.arcs()) into[a.to].push_back(a);

  // Walk predecessors backwards; each step lowers the hop count by one.
  std::vector<std::pair<VertexId, EdgeId>> back;  // (vertex, incoming arc)
  VertexId cur = target;
  while (dist.hops[cur] > 0) {
    bool found = false;
    VertexId best = 0;
    EdgeId via = 0;
    for (const auto& a : into[cur]) {
      if (a.cost == kInf || dist.dist[a.from] == kInf) continue;
      if (wadd(dist.dist[a.from], a.cost) != dist.dist[cur]) continue;
      if (dist.hops[a.from] + 1 != dist.hops[cur]) continue;
      if (!found || a.from < best) {
        found = true;
        best = a.from;
        via = a.edge;
      }
    }
    if (!found)
      throw SimError("walk backtracking found no consistent predecessor");
    back.emplace_back(cur, via);
    cur = best;
  }
  if (cur != source)
    throw SimError("walk backtracking missed the source state");

  ConstrainedWalk walk;
  walk.weight = dist.dist[target];
  walk.vertices.push_back(s);
  walk.states.push_back(StatefulConstraint::kInit);
  walk.prefix_weight.push_back(0);
  for (auto it = back.rbegin(); it != back.rend(); ++it) {
    EdgeId graph_edge = pg.origin.at(it->second);
    if (graph_edge == ProductGraph::kNoOrigin)
      throw SimError("a reject shortcut appeared on a constrained walk");
    walk.edges.push_back(graph_edge);
    walk.vertices.push_back(pg.base_of(it->first));
    walk.states.push_back(pg.state_of(it->first));
    walk.prefix_weight.push_back(dist.dist[it->first]);
  }
  return walk;
}

CdlResult cdl_build(const MultiGraph& g, const StatefulConstraint& c,
                    const TreeDecomposition& td, uint64_t max_rounds) {
  ProductGraph pg = build_product_graph(g, c);
  TreeDecomposition lifted = lift_decomposition(td, pg);
  dl::DlResult built = dl::build_labels(pg.graph, lifted, max_rounds);

  CdlResult out;
  out.num_states = pg.num_states;
  out.stats = built.stats;
  out.labels.resize(pg.base_n);
  for (VertexId u = 0; u < pg.base_n; ++u) {
    out.labels[u].reserve(pg.num_states);
    for (uint32_t s = 0; s < pg.num_states; ++s)
      out.labels[u].push_back(std::move(built.labels[pg.encode(u, s)]));
  }
  return out;
}

Weight cdl_decode(uint32_t q, const std::vector<dl::DistanceLabel>& lu,
                  const std::vector<dl::DistanceLabel>& lv) {
  if (lu.size() != lv.size())
    throw InvalidInput("label rows come from different constraints");
  if (q >= lv.size()) throw InvalidInput("walk state out of range");
  if (q == StatefulConstraint::kReject)
    throw InvalidState("the reject state carries no walk semantics");
  return dl::decode(lu[StatefulConstraint::kInit], lv[q]);
}

}  // namespace lowtw::walks
