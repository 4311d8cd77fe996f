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

#include "core/multigraph.hpp"

#include <algorithm>
#include <queue>

namespace lowtw {

void MultiGraph::add_edge(EdgeId id, VertexId u, VertexId v, Weight c) {
  if (u >= n || v >= n) throw InvalidInput("edge endpoint out of range");
  auto it = std::lower_bound(edges.begin(), edges.end(), id,
                             [](const Edge& e, EdgeId x) { return e.id < x; });
  if (it != edges.end() && it->id == id) throw InvalidInput("duplicate edge id");
  edges.insert(it, Edge{id, u, v, c});
}

const MultiGraph::Edge& MultiGraph::edge(EdgeId id) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), id,
                             [](const Edge& e, EdgeId x) { return e.id < x; });
  if (it == edges.end() || it->id != id) throw InvalidInput("unknown edge id");
  return *it;
}

bool MultiGraph::has_edge_id(EdgeId id) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), id,
                             [](const Edge& e, EdgeId x) { return e.id < x; });
  return it != edges.end() && it->id == id;
}

Weight MultiGraph::max_finite_cost() const {
  Weight m = 0;
  for (const Edge& e : edges)
    if (e.cost != kInf && e.cost > m) m = e.cost;
  return m;
}

std::vector<MultiGraph::Arc> MultiGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(edges.size() * (directed ? 1 : 2));
  for (const Edge& e : edges) {
    out.push_back(Arc{e.id, e.from, e.to, e.cost});
    if (!directed && e.from != e.to) out.push_back(Arc{e.id, e.to, e.from, e.cost});
  }
  return out;
}

std::vector<std::vector<MultiGraph::Arc>> MultiGraph::out_arcs() const {
  std::vector<std::vector<Arc>> by_tail(n);
  for (const Arc& a : arcs()) by_tail[a.from].push_back(a);
  return by_tail;
}

Weight MultiGraph::min_cost(VertexId u, VertexId v) const {
  Weight best = kInf;
  for (const Edge& e : edges) {
    bool fwd = e.from == u && e.to == v;
    bool rev = !directed && e.from == v && e.to == u;
    if ((fwd || rev) && e.cost < best) best = e.cost;
  }
  return best;
}

bool CommGraph::has_edge(VertexId u, VertexId v) const {
  const auto& a = adj.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

uint32_t CommGraph::diameter() const {
  uint32_t best = 0;
  std::vector<uint32_t> dist(n);
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    dist[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId v : adj[u])
        if (dist[v] == UINT32_MAX) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (VertexId v = 0; v < n; ++v)
      if (dist[v] != UINT32_MAX && dist[v] > best) best = dist[v];
  }
  return best;
}

bool CommGraph::connected() const {
  if (n == 0) return true;
  auto ids = component_ids();
  for (uint32_t c : ids)
    if (c != ids[0]) return false;
  return true;
}

std::vector<uint32_t> CommGraph::component_ids() const {
  std::vector<uint32_t> id(n, UINT32_MAX);
  for (VertexId s = 0; s < n; ++s) {
    if (id[s] != UINT32_MAX) continue;
    id[s] = s;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId v : adj[u])
        if (id[v] == UINT32_MAX) {
          id[v] = s;
          q.push(v);
        }
    }
  }
  return id;
}

CommGraph derive_comm_graph(const MultiGraph& g) {
  CommGraph c;
  c.n = g.n;
  c.adj.assign(g.n, {});
  for (const auto& e : g.edges) {
    if (e.from == e.to) continue;
    c.adj[e.from].push_back(e.to);
    c.adj[e.to].push_back(e.from);
  }
  for (auto& a : c.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return c;
}

}  // namespace lowtw
