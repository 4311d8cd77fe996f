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

#include "oracle/oracles.hpp"

#include <algorithm>
#include <queue>

namespace lowtw {
namespace {

// Single-source Dijkstra over precomputed out-arcs.  When skip_edge is set,
// arcs with that edge id are ignored.  parent_arc, when given, receives the
// arc index used to reach each vertex (UINT32_MAX at sources/unreached).
std::vector<Weight> dijkstra(uint32_t n,
                             const std::vector<std::vector<MultiGraph::Arc>>& out,
                             VertexId source, EdgeId skip_edge,
                             std::vector<MultiGraph::Arc>* parent_arc) {
  std::vector<Weight> dist(n, kInf);
  if (parent_arc)
    parent_arc->assign(n, MultiGraph::Arc{UINT32_MAX, 0, 0, kInf});
  using Item = std::pair<Weight, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[source] = 0;
  pq.push({0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (const auto& a : out[u]) {
      if (a.cost == kInf || a.edge == skip_edge) continue;
      Weight nd = wadd(d, a.cost);
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        if (parent_arc) (*parent_arc)[a.to] = a;
        pq.push({nd, a.to});
      }
    }
  }
  return dist;
}

constexpr EdgeId kNoSkip = UINT32_MAX;

}  // namespace

std::vector<std::vector<Weight>> oracle_apsp(const MultiGraph& g) {
  auto out = g.out_arcs();
  std::vector<std::vector<Weight>> d;
  d.reserve(g.n);
  for (VertexId s = 0; s < g.n; ++s)
    d.push_back(dijkstra(g.n, out, s, kNoSkip, nullptr));
  return d;
}

uint32_t oracle_matching(const MultiGraph& g) {
  for (const auto& e : g.edges)
    if (e.from == e.to) throw NotBipartite("self-loop");
  CommGraph c = derive_comm_graph(g);
  std::vector<int> side(c.n, -1);
  for (VertexId s = 0; s < c.n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId v : c.adj[u]) {
        if (side[v] == -1) {
          side[v] = 1 - side[u];
          q.push(v);
        } else if (side[v] == side[u]) {
          throw NotBipartite("odd cycle");
        }
      }
    }
  }

  // Kuhn's augmenting search from each left vertex.
  std::vector<VertexId> match(c.n, UINT32_MAX);
  std::vector<char> visited(c.n, 0);
  auto augment = [&](auto&& self, VertexId u) -> bool {
    for (VertexId v : c.adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (match[v] == UINT32_MAX || self(self, match[v])) {
        match[v] = u;
        match[u] = v;
        return true;
      }
    }
    return false;
  };
  uint32_t size = 0;
  for (VertexId u = 0; u < c.n; ++u) {
    if (side[u] != 0 || match[u] != UINT32_MAX) continue;
    std::fill(visited.begin(), visited.end(), 0);
    if (augment(augment, u)) ++size;
  }
  return size;
}

CycleWitness oracle_girth(const MultiGraph& g) {
  for (const auto& e : g.edges)
    if (e.cost == 0) throw InvalidInput("girth requires positive weights");
  auto out = g.out_arcs();
  CycleWitness best;
  EdgeId best_edge = kNoSkip;
  if (g.directed) {
    // min over edges (u,v) of cost + d(v,u); positive weights make the
    // lightest closed walk simple
    std::vector<std::vector<Weight>> d = oracle_apsp(g);
    for (const auto& e : g.edges) {
      if (e.cost == kInf) continue;
      Weight w = wadd(e.cost, d[e.to][e.from]);
      if (w < best.weight) {
        best.weight = w;
        best_edge = e.id;
      }
    }
    if (best_edge == kNoSkip) return best;
    const auto& e = g.edge(best_edge);
    std::vector<MultiGraph::Arc> parent;
    dijkstra(g.n, out, e.to, kNoSkip, &parent);
    std::vector<EdgeId> path;
    for (VertexId v = e.from; v != e.to; v = parent[v].from)
      path.push_back(parent[v].edge);
    std::reverse(path.begin(), path.end());
    path.push_back(e.id);
    best.edges = path;
    return best;
  }

  // undirected: min over edges of cost + distance avoiding that edge
  for (const auto& e : g.edges) {
    if (e.cost == kInf) continue;
    auto d = dijkstra(g.n, out, e.from, e.id, nullptr);
    Weight w = wadd(e.cost, d[e.to]);
    if (w < best.weight) {
      best.weight = w;
      best_edge = e.id;
    }
  }
  if (best_edge == kNoSkip) return best;
  const auto& e = g.edge(best_edge);
  std::vector<MultiGraph::Arc> parent;
  dijkstra(g.n, out, e.from, e.id, &parent);
  std::vector<EdgeId> path;
  for (VertexId v = e.to; v != e.from; v = parent[v].from)
    path.push_back(parent[v].edge);
  std::reverse(path.begin(), path.end());
  path.push_back(e.id);
  best.edges = path;
  return best;
}

WalkTable oracle_constrained_walks(const MultiGraph& g,
                                   const StatefulConstraint& c,
                                   uint32_t max_len) {
  c.check_well_formed();
  WalkTable table;
  table.n = g.n;
  table.num_states = c.num_states();
  table.d.assign(static_cast<size_t>(g.n) * g.n * c.num_states(), kInf);
  auto arcs = g.arcs();
  // Length-bounded relaxation: after i sweeps, entry (s,t,q) is the lightest
  // walk of at most i edges from s to t folding to q.
  for (VertexId s = 0; s < g.n; ++s) {
    table.at(s, s, StatefulConstraint::kInit) = 0;
    for (uint32_t step = 0; step < max_len; ++step) {
      bool changed = false;
      std::vector<std::tuple<VertexId, uint32_t, Weight>> updates;
      for (const auto& a : arcs) {
        for (uint32_t q = 0; q < c.num_states(); ++q) {
          Weight base = table.at(s, a.from, q);
          if (base == kInf) continue;
          uint32_t nq = c.step(a.edge, q);
          Weight w = wadd(base, a.cost);
          if (w < table.at(s, a.to, nq))
            updates.emplace_back(a.to, nq, w);
        }
      }
      for (const auto& [t, q, w] : updates) {
        if (w < table.at(s, t, q)) {
          table.at(s, t, q) = w;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  return table;
}

VertexCut oracle_min_vertex_cut(const MultiGraph& g,
                                const std::set<VertexId>& xs,
                                const std::set<VertexId>& ys) {
  VertexCut result;
  for (VertexId x : xs)
    if (ys.count(x)) return result;  // overlapping sets: no cut exists
  CommGraph c = derive_comm_graph(g);
  for (VertexId x : xs)
    for (VertexId v : c.adj[x])
      if (ys.count(v)) return result;  // adjacent sets: no cut exists

  // vertex-split max flow; in(v)=2v, out(v)=2v+1
  const uint32_t source = 2 * c.n, sink = 2 * c.n + 1;
  const Weight big = static_cast<Weight>(c.n) + 1;
  struct FlowEdge {
    uint32_t to;
    Weight cap;
    size_t rev;
  };
  std::vector<std::vector<FlowEdge>> net(2 * c.n + 2);
  auto link = [&](uint32_t a, uint32_t b, Weight cap) {
    net[a].push_back({b, cap, net[b].size()});
    net[b].push_back({a, 0, net[a].size() - 1});
  };
  for (VertexId v = 0; v < c.n; ++v) {
    bool terminal = xs.count(v) || ys.count(v);
    link(2 * v, 2 * v + 1, terminal ? big : 1);
  }
  for (VertexId u = 0; u < c.n; ++u)
    for (VertexId v : c.adj[u])
      if (u < v) {
        link(2 * u + 1, 2 * v, big);
        link(2 * v + 1, 2 * u, big);
      }
  for (VertexId x : xs) link(source, 2 * x, big);
  for (VertexId y : ys) link(2 * y + 1, sink, big);

  Weight flow = 0;
  while (true) {
    // BFS for an augmenting path
    std::vector<std::pair<uint32_t, size_t>> how(net.size(), {UINT32_MAX, 0});
    std::queue<uint32_t> q;
    q.push(source);
    how[source] = {source, 0};
    while (!q.empty() && how[sink].first == UINT32_MAX) {
      uint32_t u = q.front();
      q.pop();
      for (size_t i = 0; i < net[u].size(); ++i) {
        const auto& e = net[u][i];
        if (e.cap == 0 || how[e.to].first != UINT32_MAX) continue;
        how[e.to] = {u, i};
        q.push(e.to);
      }
    }
    if (how[sink].first == UINT32_MAX) break;
    Weight push = kInf;
    for (uint32_t v = sink; v != source;) {
      auto [u, i] = how[v];
      push = std::min(push, net[u][i].cap);
      v = u;
    }
    for (uint32_t v = sink; v != source;) {
      auto [u, i] = how[v];
      net[u][i].cap -= push;
      net[net[u][i].to][net[u][i].rev].cap += push;
      v = u;
    }
    flow += push;
  }

  result.size = flow;
  // min cut witness: split arcs crossing the residual-reachable frontier
  std::vector<char> reach(net.size(), 0);
  std::queue<uint32_t> q;
  q.push(source);
  reach[source] = 1;
  while (!q.empty()) {
    uint32_t u = q.front();
    q.pop();
    for (const auto& e : net[u])
      if (e.cap > 0 && !reach[e.to]) {
        reach[e.to] = 1;
        q.push(e.to);
      }
  }
  for (VertexId v = 0; v < c.n; ++v)
    if (reach[2 * v] && !reach[2 * v + 1]) result.cut.push_back(v);
  return result;
}

bool oracle_balance(const MultiGraph& g, const std::vector<VertexId>& s,
                    const std::set<VertexId>& xs, uint64_t alpha_num,
                    uint64_t alpha_den) {
  if (alpha_den == 0) throw InvalidInput("zero balance denominator");
  CommGraph c = derive_comm_graph(g);
  std::vector<char> removed(c.n, 0);
  for (VertexId v : s) removed.at(v) = 1;
  uint64_t total = 0;
  for (VertexId x : xs) {
    if (x >= c.n) throw InvalidInput("measure vertex out of range");
    ++total;
  }
  std::vector<char> seen(c.n, 0);
  for (VertexId start = 0; start < c.n; ++start) {
    if (removed[start] || seen[start]) continue;
    uint64_t measure = 0;
    std::queue<VertexId> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      measure += xs.count(u) ? 1 : 0;
      for (VertexId v : c.adj[u])
        if (!removed[v] && !seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
    // exact rational comparison: measure/total <= num/den
    if (measure * alpha_den > alpha_num * total) return false;
  }
  return true;
}

}  // namespace lowtw
