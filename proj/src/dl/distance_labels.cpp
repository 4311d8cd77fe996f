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

#include "dl/distance_labels.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dist/collection.hpp"

namespace lowtw::dl {

namespace {

using VertexPair = std::pair<VertexId, VertexId>;
using ArcMap = std::map<VertexPair, Weight>;  // finite-cost directed arcs
using OutLists = std::map<VertexId, std::vector<std::pair<VertexId, Weight>>>;

OutLists out_lists(const ArcMap& arcs, bool reversed) {
  OutLists out;
  for (const auto& [ab, c] : arcs) {
    if (reversed)
      out[ab.second].push_back({ab.first, c});
    else
      out[ab.first].push_back({ab.second, c});
  }
  return out;
}

std::map<VertexId, Weight> dijkstra_from(const OutLists& out, VertexId source) {
  std::map<VertexId, Weight> dist;
  using Item = std::pair<Weight, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (dist.at(v) != d) continue;
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (auto [w, c] : it->second) {
      Weight nd = wadd(d, c);
      auto dit = dist.find(w);
      if (dit == dist.end() || nd < dit->second) {
        dist[w] = nd;
        heap.push({nd, w});
      }
    }
  }
  return dist;
}

Weight dist_or_inf(const std::map<VertexId, Weight>& d, VertexId v) {
  auto it = d.find(v);
  return it == d.end() ? kInf : it->second;
}

Weight arc_or_inf(const ArcMap& arcs, VertexPair key) {
  auto it = arcs.find(key);
  return it == arcs.end() ? kInf : it->second;
}

void fold_min(ArcMap& arcs, VertexId a, VertexId b, Weight c) {
  if (c == kInf) return;
  auto [it, inserted] = arcs.try_emplace({a, b}, c);
  if (!inserted && c < it->second) it->second = c;
}

// Directed graph materialized as a finite-cost arc map over an explicit
// vertex set, with adjacency cached in both orientations.
struct ArcGraph {
  std::vector<VertexId> verts;  // sorted
  ArcMap arcs;
  OutLists fwd, bwd;

  void finalize() {
    fwd = out_lists(arcs, false);
    bwd = out_lists(arcs, true);
  }
  bool has_vertex(VertexId v) const {
    return std::binary_search(verts.begin(), verts.end(), v);
  }
  std::map<VertexId, Weight> from(VertexId s) const {
    return dijkstra_from(fwd, s);
  }
  std::map<VertexId, Weight> into(VertexId s) const {
    return dijkstra_from(bwd, s);
  }
};

// One decomposition node together with the vertex sets the construction
// works on.  `fresh` is the node's exclusive working set: the vertices of
// its subtree bags that do not appear in the parent bag.  Fresh sets of one
// level are pairwise disjoint, and the vertices that record a node's
// compressed graph are exactly its fresh vertices.
struct Node {
  BagId id;
  std::vector<VertexId> bag;
  std::vector<VertexId> region;    // union of the bags in the node's subtree
  std::vector<VertexId> fresh;     // region minus the parent bag
  std::vector<VertexId> attached;  // parent-bag vertices adjacent to `fresh`
  std::vector<size_t> kids;
  bool leaf = false;

  bool is_fresh(VertexId v) const {
    return std::binary_search(fresh.begin(), fresh.end(), v);
  }
};

// Fixed-width encoding of broadcast words.  Vertex ids take bits_v bits and
// costs take bits_c bits, where the reserved value n * max_cost + 1 encodes
// an infinite cost (it is strictly above every finite distance, which uses
// at most n - 1 edges).
struct WireCodec {
  uint32_t bits_v = 0;
  uint32_t bits_c = 0;
  Weight inf_code = 0;

  static WireCodec make(const MultiGraph& g) {
    WireCodec c;
    c.bits_v = bits_for(g.n - 1);
    Weight maxw = g.max_finite_cost();
    if (maxw != 0 && maxw > (kInf - 1) / g.n)
      throw InvalidInput("edge costs too large for the broadcast encoding");
    c.inf_code = static_cast<Weight>(g.n) * maxw + 1;
    c.bits_c = bits_for(c.inf_code);
    if (2u * c.bits_v + 2u * c.bits_c > 64u)
      throw InvalidInput("vertex ids and costs do not fit one broadcast word");
    return c;
  }

  uint64_t enc(Weight w) const {
    if (w == kInf) return inf_code;
    if (w >= inf_code) throw SimError("finite distance above the encoding bound");
    return w;
  }
  Weight dec(uint64_t e) const {
    if (e == inf_code) return kInf;
    if (e > inf_code) throw SimError("received cost code out of range");
    return e;
  }

  // A pair word carries both directed costs of one vertex pair.
  uint32_t pair_width() const { return 2 * bits_v + 2 * bits_c; }
  uint64_t pack_pair(VertexId a, VertexId b, Weight ab, Weight ba) const {
    uint64_t word = a;
    word = (word << bits_v) | b;
    word = (word << bits_c) | enc(ab);
    word = (word << bits_c) | enc(ba);
    return word;
  }
  struct PairCosts {
    VertexId a = 0, b = 0;
    Weight ab = kInf, ba = kInf;
  };
  PairCosts unpack_pair(uint64_t word) const {
    const uint64_t mask_c = (1ull << bits_c) - 1;
    const uint64_t mask_v = (1ull << bits_v) - 1;
    PairCosts pc;
    pc.ba = dec(word & mask_c);
    word >>= bits_c;
    pc.ab = dec(word & mask_c);
    word >>= bits_c;
    pc.b = static_cast<VertexId>(word & mask_v);
    word >>= bits_v;
    pc.a = static_cast<VertexId>(word & mask_v);
    return pc;
  }

  // A hub word carries one hub vertex with forward and backward distances.
  uint32_t hub_width() const { return bits_v + 2 * bits_c; }
  uint64_t pack_hub(VertexId s, Weight fwd, Weight bwd) const {
    uint64_t word = s;
    word = (word << bits_c) | enc(fwd);
    word = (word << bits_c) | enc(bwd);
    return word;
  }
  struct HubCosts {
    VertexId s = 0;
    Weight fwd = kInf, bwd = kInf;
  };
  HubCosts unpack_hub(uint64_t word) const {
    const uint64_t mask_c = (1ull << bits_c) - 1;
    const uint64_t mask_v = (1ull << bits_v) - 1;
    HubCosts hc;
    hc.bwd = dec(word & mask_c);
    word >>= bits_c;
    hc.fwd = dec(word & mask_c);
    word >>= bits_c;
    hc.s = static_cast<VertexId>(word & mask_v);
    return hc;
  }
};

// Everything derived once from (g, td) that both the construction and the
// consistency checks need.
struct Skeleton {
  CommGraph comm;
  std::vector<Node> nodes;          // ordered so parents precede descendants
  std::map<BagId, size_t> index_of;
  std::vector<std::vector<size_t>> at_level;
  std::vector<BagId> sigma;         // canonical bag id per vertex
  ArcMap gmin;                      // finite min-cost arcs of the input graph
  WireCodec codec;
};

Skeleton build_skeleton(const MultiGraph& g, const TreeDecomposition& td) {
  if (g.n == 0) throw InvalidInput("graph must be nonempty");
  DecompositionReport report = validate_tree_decomposition(g, td);
  if (!report.valid) {
    std::string msg = "decomposition failed validation";
    if (!report.violations.empty()) msg += ": " + report.violations.front();
    throw InvalidDecomposition(msg);
  }

  Skeleton sk;
  sk.comm = derive_comm_graph(g);
  sk.codec = WireCodec::make(g);

  // Index the nodes.  The bag map is ordered lexicographically, so every
  // node appears before all of its descendants.
  for (const auto& [id, bag] : td.bags) {
    Node nd;
    nd.id = id;
    nd.bag = bag;
    sk.index_of.emplace(id, sk.nodes.size());
    sk.nodes.push_back(std::move(nd));
  }
  for (size_t i = 0; i < sk.nodes.size(); ++i) {
    if (sk.nodes[i].id.empty()) continue;
    BagId parent = sk.nodes[i].id;
    parent.pop_back();
    sk.nodes[sk.index_of.at(parent)].kids.push_back(i);
  }
  for (Node& nd : sk.nodes) nd.leaf = nd.kids.empty();

  // Subtree bag unions, children first.
  for (size_t i = sk.nodes.size(); i-- > 0;) {
    Node& nd = sk.nodes[i];
    std::set<VertexId> rg(nd.bag.begin(), nd.bag.end());
    for (size_t k : nd.kids)
      rg.insert(sk.nodes[k].region.begin(), sk.nodes[k].region.end());
    nd.region.assign(rg.begin(), rg.end());
  }

  for (Node& nd : sk.nodes) {
    std::set<VertexId> parent_bag;
    if (!nd.id.empty()) {
      BagId pid = nd.id;
      pid.pop_back();
      const auto& pb = td.bag(pid);
      parent_bag.insert(pb.begin(), pb.end());
    }
    for (VertexId v : nd.region)
      if (!parent_bag.count(v)) nd.fresh.push_back(v);
    if (nd.fresh.empty())
      throw InvalidDecomposition("node " + bag_id_to_string(nd.id) +
                                 " introduces no vertex beyond its parent bag");
    // The fresh set must be connected: it forms one part of the per-level
    // broadcast collection.
    std::set<VertexId> fresh_set(nd.fresh.begin(), nd.fresh.end());
    std::vector<VertexId> stack{nd.fresh.front()};
    std::set<VertexId> seen{nd.fresh.front()};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : sk.comm.adj[v])
        if (fresh_set.count(w) && seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != nd.fresh.size())
      throw InvalidDecomposition("node " + bag_id_to_string(nd.id) +
                                 " has a disconnected region beyond its parent bag");
    // Parent-bag vertices with an edge into the fresh set.  The connected
    // subtree condition forces them into this node's bag as well.
    std::set<VertexId> att;
    for (VertexId v : nd.fresh)
      for (VertexId w : sk.comm.adj[v])
        if (parent_bag.count(w)) att.insert(w);
    nd.attached.assign(att.begin(), att.end());
    std::set<VertexId> bag_set(nd.bag.begin(), nd.bag.end());
    for (VertexId a : nd.attached)
      if (!bag_set.count(a))
        throw SimError("attached boundary vertex missing from bag " +
                       bag_id_to_string(nd.id));
  }

  uint32_t max_level = 0;
  for (const Node& nd : sk.nodes)
    max_level = std::max<uint32_t>(max_level, nd.id.size());
  sk.at_level.assign(max_level + 1, {});
  for (size_t i = 0; i < sk.nodes.size(); ++i)
    sk.at_level[sk.nodes[i].id.size()].push_back(i);

  sk.sigma.resize(g.n);
  for (VertexId v = 0; v < g.n; ++v) sk.sigma[v] = canonical_string(td, v);

  for (const auto& arc : g.arcs()) {
    if (arc.from == arc.to || arc.cost == kInf) continue;
    fold_min(sk.gmin, arc.from, arc.to, arc.cost);
  }
  return sk;
}

// The region graph of a node: its fresh vertices, the attached parent-bag
// vertices, and every arc with at least one fresh endpoint.  Arcs between
// two attached vertices are deliberately absent; they belong to shallower
// region graphs.
ArcGraph lit_region_graph(const Skeleton& sk, const Node& nd) {
  ArcGraph ar;
  std::set<VertexId> vs(nd.fresh.begin(), nd.fresh.end());
  vs.insert(nd.attached.begin(), nd.attached.end());
  ar.verts.assign(vs.begin(), vs.end());
  for (VertexId v : nd.fresh) {
    for (VertexId w : sk.comm.adj[v]) {
      if (!vs.count(w)) continue;
      auto it = sk.gmin.find({v, w});
      if (it != sk.gmin.end()) fold_min(ar.arcs, v, w, it->second);
      it = sk.gmin.find({w, v});
      if (it != sk.gmin.end()) fold_min(ar.arcs, w, v, it->second);
    }
  }
  ar.finalize();
  return ar;
}

// Host-side compressed graph of an internal node: vertices are the bag;
// costs fold the input arcs that meet the fresh set with the compressed
// distances of every child, evaluated between bag vertices.
ArcGraph host_compressed(const Skeleton& sk, const Node& nd,
                         const std::vector<ArcGraph>& hgraph) {
  ArcGraph h;
  h.verts = nd.bag;
  for (VertexId a : nd.bag) {
    for (VertexId b : nd.bag) {
      if (a == b) continue;
      if (!nd.is_fresh(a) && !nd.is_fresh(b)) continue;
      auto it = sk.gmin.find({a, b});
      if (it != sk.gmin.end()) fold_min(h.arcs, a, b, it->second);
    }
  }
  for (size_t k : nd.kids) {
    const ArcGraph& ch = hgraph[k];
    for (VertexId a : nd.bag) {
      if (!ch.has_vertex(a)) continue;
      auto da = ch.from(a);
      for (VertexId b : nd.bag)
        if (b != a && ch.has_vertex(b)) fold_min(h.arcs, a, b, dist_or_inf(da, b));
    }
  }
  h.finalize();
  return h;
}

}  // namespace

Weight decode(const DistanceLabel& lu, const DistanceLabel& lv) {
  Weight best = kInf;
  bool common = false;
  auto it = lu.fwd.begin();
  auto jt = lv.bwd.begin();
  while (it != lu.fwd.end() && jt != lv.bwd.end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      common = true;
      best = std::min(best, wadd(it->second, jt->second));
      ++it;
      ++jt;
    }
  }
  if (!common) throw DisjointHubSets("labels share no hub vertex");
  return best;
}

DlResult build_labels(const MultiGraph& g, const TreeDecomposition& td,
                      uint64_t max_rounds) {
  Skeleton sk = build_skeleton(g, td);
  const WireCodec& codec = sk.codec;
  std::vector<ArcGraph> hgraph(sk.nodes.size());
  dist::RunStats stats;

  // Bottom-up over decomposition levels.  Each level runs one pipelined
  // broadcast over the vertex-disjoint fresh sets of its nodes; afterwards
  // every fresh vertex of a node knows the node's compressed graph.
  for (uint32_t level = sk.at_level.size(); level-- > 0;) {
    const std::vector<size_t>& here = sk.at_level[level];
    if (here.empty()) continue;

    std::set<VertexId> taken;
    for (size_t i : here)
      for (VertexId v : sk.nodes[i].fresh)
        if (!taken.insert(v).second)
          throw SimError("fresh sets of one level overlap");

    for (size_t i : here) {
      const Node& nd = sk.nodes[i];
      hgraph[i] = nd.leaf ? lit_region_graph(sk, nd) : host_compressed(sk, nd, hgraph);
    }

    dist::Collection col(sk.comm.n);
    std::vector<size_t> part_node;
    for (size_t i : here) {
      col.add_induced_part(sk.comm, sk.nodes[i].fresh);
      part_node.push_back(i);
    }
    col.validate(sk.comm);

    // Every broadcast word carries one vertex pair with both directed
    // costs.  Holders only enqueue what they know first-hand: an input
    // arc is held by a fresh endpoint, and the compressed distances of a
    // child are held by the child's smallest fresh vertex, which learned
    // the child's compressed graph one level below.
    dist::PerPart<std::vector<uint64_t>> items(sk.comm.n);
    uint32_t budget = 1;
    for (uint32_t p = 0; p < col.num_parts; ++p) {
      const Node& nd = sk.nodes[part_node[p]];
      uint32_t count = 0;
      auto emit = [&](VertexId holder, VertexId a, VertexId b, Weight ab, Weight ba) {
        if (ab == kInf && ba == kInf) return;
        items[holder][p].push_back(codec.pack_pair(a, b, ab, ba));
        ++count;
      };
      if (nd.leaf) {
        const ArcGraph& ar = hgraph[part_node[p]];
        std::set<VertexPair> seen;
        for (const auto& [ab, c] : ar.arcs) {
          (void)c;
          VertexPair key = ab.first < ab.second ? ab : VertexPair{ab.second, ab.first};
          if (!seen.insert(key).second) continue;
          VertexId holder = nd.is_fresh(key.first) ? key.first : key.second;
          emit(holder, key.first, key.second, arc_or_inf(ar.arcs, key),
               arc_or_inf(ar.arcs, {key.second, key.first}));
        }
      } else {
        for (size_t ai = 0; ai < nd.bag.size(); ++ai) {
          for (size_t bi = ai + 1; bi < nd.bag.size(); ++bi) {
            VertexId a = nd.bag[ai], b = nd.bag[bi];
            if (!nd.is_fresh(a) && !nd.is_fresh(b)) continue;
            auto fit = sk.gmin.find({a, b});
            auto bit = sk.gmin.find({b, a});
            Weight ab = fit == sk.gmin.end() ? kInf : fit->second;
            Weight ba = bit == sk.gmin.end() ? kInf : bit->second;
            emit(nd.is_fresh(a) ? a : b, a, b, ab, ba);
          }
        }
        for (size_t k : nd.kids) {
          const ArcGraph& ch = hgraph[k];
          VertexId rep = sk.nodes[k].fresh.front();
          std::map<VertexId, std::map<VertexId, Weight>> rows;
          for (VertexId a : nd.bag)
            if (ch.has_vertex(a)) rows[a] = ch.from(a);
          for (auto it = rows.begin(); it != rows.end(); ++it) {
            for (auto jt = std::next(it); jt != rows.end(); ++jt) {
              Weight ab = dist_or_inf(it->second, jt->first);
              Weight ba = dist_or_inf(jt->second, it->first);
              emit(rep, it->first, jt->first, ab, ba);
            }
          }
        }
      }
      budget = std::max(budget, count);
    }

    dist::BctOut out = dist::bct(sk.comm, col, budget, codec.pair_width(), items, max_rounds);
    stats += out.stats;

    // Reception check: every fresh vertex folds what it received back into
    // a compressed graph, which must match the host computation exactly.
    for (uint32_t p = 0; p < col.num_parts; ++p) {
      const Node& nd = sk.nodes[part_node[p]];
      for (VertexId u : nd.fresh) {
        ArcMap got;
        auto pit = out.items[u].find(p);
        if (pit != out.items[u].end()) {
          for (const auto& item : pit->second) {
            WireCodec::PairCosts pc = codec.unpack_pair(item.payload);
            fold_min(got, pc.a, pc.b, pc.ab);
            fold_min(got, pc.b, pc.a, pc.ba);
          }
        }
        if (got != hgraph[part_node[p]].arcs)
          throw SimError("broadcast reconstruction diverged at node " +
                         bag_id_to_string(nd.id));
      }
    }
  }

  // Consistency of the compressed graphs against materialized region
  // graphs: exact distance agreement on bag pairs, and the sampled
  // two-level composition identity through a child.
  for (size_t i = 0; i < sk.nodes.size(); ++i) {
    const Node& nd = sk.nodes[i];
    if (nd.leaf) continue;
    ArcGraph region = lit_region_graph(sk, nd);
    std::map<VertexId, std::map<VertexId, Weight>> hrows;
    for (VertexId a : nd.bag) {
      auto dh = hgraph[i].from(a);
      auto dg = region.from(a);
      for (VertexId b : nd.bag)
        if (dist_or_inf(dh, b) != dist_or_inf(dg, b))
          throw SimError("compressed graph distance diverges from the region at node " +
                         bag_id_to_string(nd.id));
      hrows[a] = std::move(dh);
    }

    SplitMix64 rng(mix_seed(0x646c6c34ull, static_cast<uint64_t>(i)));
    for (int trial = 0; trial < 3; ++trial) {
      size_t k = nd.kids[rng.below(nd.kids.size())];
      ArcGraph child = lit_region_graph(sk, sk.nodes[k]);
      std::set<VertexId> us(child.verts.begin(), child.verts.end());
      us.insert(nd.bag.begin(), nd.bag.end());
      std::vector<VertexId> universe(us.begin(), us.end());
      VertexId u = universe[rng.below(universe.size())];
      VertexId v = universe[rng.below(universe.size())];

      Weight lhs = dist_or_inf(region.from(u), v);
      auto in_child = [&](VertexId x) { return child.has_vertex(x); };
      std::map<VertexId, Weight> cu, cv;
      if (in_child(u)) cu = child.from(u);
      if (in_child(v)) cv = child.into(v);
      auto d_child = [&](VertexId x, VertexId y, bool from_u) -> Weight {
        if (x == y) return 0;
        if (!in_child(x) || !in_child(y)) return kInf;
        return from_u ? dist_or_inf(cu, y) : dist_or_inf(cv, x);
      };
      Weight rhs = d_child(u, v, true);
      for (VertexId s : nd.bag) {
        Weight dus = d_child(u, s, true);
        if (dus == kInf) continue;
        for (VertexId t : nd.bag) {
          Weight dtv = d_child(t, v, false);
          if (dtv == kInf) continue;
          Weight mid = s == t ? 0 : dist_or_inf(hrows.at(s), t);
          rhs = std::min(rhs, wadd(wadd(dus, mid), dtv));
        }
      }
      if (lhs != rhs)
        throw SimError("two-level composition identity failed at node " +
                       bag_id_to_string(nd.id));
    }
  }

  // Every vertex now derives its label from the compressed graphs along the
  // root path of its canonical bag, all of which its fresh memberships
  // received during the level loop.
  DlResult result;
  result.labels.resize(g.n);
  for (VertexId u = 0; u < g.n; ++u) {
    ArcMap merged;
    std::set<VertexId> hubs;
    for (size_t len = 0; len <= sk.sigma[u].size(); ++len) {
      BagId prefix(sk.sigma[u].begin(), sk.sigma[u].begin() + len);
      size_t i = sk.index_of.at(prefix);
      hubs.insert(sk.nodes[i].bag.begin(), sk.nodes[i].bag.end());
      for (const auto& [ab, c] : hgraph[i].arcs)
        fold_min(merged, ab.first, ab.second, c);
    }
    auto dfwd = dijkstra_from(out_lists(merged, false), u);
    auto dbwd = dijkstra_from(out_lists(merged, true), u);
    DistanceLabel& lab = result.labels[u];
    lab.owner = u;
    for (VertexId s : hubs) {
      lab.fwd[s] = dist_or_inf(dfwd, s);
      lab.bwd[s] = dist_or_inf(dbwd, s);
    }
    if (lab.fwd.at(u) != 0 || lab.bwd.at(u) != 0)
      throw SimError("label does not place its owner at distance zero");
    if (lab.fwd.size() + lab.bwd.size() > 2 * hubs.size())
      throw SimError("label size bound violated");
  }
  result.stats = stats;
  return result;
}

SsspResult sssp_from(const MultiGraph& g, const TreeDecomposition& td,
                     VertexId source, uint64_t max_rounds) {
  if (source >= g.n) throw InvalidInput("source vertex out of range");
  DlResult built = build_labels(g, td, max_rounds);
  const DistanceLabel& src = built.labels[source];

  CommGraph comm = derive_comm_graph(g);
  dist::Collection col = dist::Collection::single_part(comm);
  WireCodec codec = WireCodec::make(g);

  dist::PerPart<std::vector<uint64_t>> items(g.n);
  for (const auto& [s, f] : src.fwd)
    items[source][0].push_back(codec.pack_hub(s, f, src.bwd.at(s)));
  uint32_t budget = std::max<uint32_t>(1, static_cast<uint32_t>(src.fwd.size()));
  dist::BctOut out = dist::bct(comm, col, budget, codec.hub_width(), items, max_rounds);

  SsspResult result;
  result.dist.assign(g.n, kInf);
  for (VertexId v = 0; v < g.n; ++v) {
    DistanceLabel received;
    received.owner = source;
    auto pit = out.items[v].find(0);
    if (pit != out.items[v].end()) {
      for (const auto& item : pit->second) {
        WireCodec::HubCosts hc = codec.unpack_hub(item.payload);
        received.fwd[hc.s] = hc.fwd;
        received.bwd[hc.s] = hc.bwd;
      }
    }
    if (!(received == src))
      throw SimError("broadcast source label diverged at vertex " + std::to_string(v));
    result.dist[v] = decode(received, built.labels[v]);
  }
  result.stats = built.stats;
  result.stats += out.stats;
  return result;
}

}  // namespace lowtw::dl
