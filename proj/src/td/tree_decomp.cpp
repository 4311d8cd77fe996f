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

#include "td/tree_decomp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace lowtw::td {

namespace {

// One open recursion node: `comp` is the vertex set of the component the
// node still has to decompose (disjoint from every other open node), and
// `boundary` holds the parent-bag vertices attached to it — together they
// form the node's subproblem, and the eventual bag is a subset of their
// union.
struct ActiveNode {
  BagId id;
  std::vector<VertexId> comp;
  std::vector<VertexId> boundary;
};

std::vector<VertexId> sorted_union(const std::vector<VertexId>& a,
                                   const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

// Components of the subgraph induced on `keep` (sorted), keyed by their
// minimum vertex id; used to cross-check the distributed detection.
std::map<VertexId, std::vector<VertexId>> host_components(
    const CommGraph& g, const std::vector<VertexId>& keep) {
  std::set<VertexId> open(keep.begin(), keep.end());
  std::map<VertexId, std::vector<VertexId>> comps;
  while (!open.empty()) {
    std::vector<VertexId> stack{*open.begin()};
    open.erase(open.begin());
    std::vector<VertexId> comp;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId w : g.adj[v]) {
        auto it = open.find(w);
        if (it != open.end()) {
          open.erase(it);
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.emplace(comp.front(), std::move(comp));
  }
  return comps;
}

// Number of halvings the configured balance guarantees before every
// component has at most two vertices; the recursion depth can never
// exceed it because each child component shrinks by the factor
// alpha_num/alpha_den in exact integer arithmetic.
uint64_t depth_bound_for(uint64_t n, const sep::SepConfig& cfg) {
  uint64_t bound = 0;
  for (uint64_t m = n; m > 2; m = (m * cfg.alpha_num) / cfg.alpha_den) ++bound;
  return bound;
}

}  // namespace

TdResult build_tree_decomposition(const MultiGraph& g, const sep::SepConfig& cfg,
                                  uint64_t seed, uint64_t max_rounds) {
  cfg.validate();
  const CommGraph comm = derive_comm_graph(g);
  if (comm.n == 0) throw InvalidInput("build_tree_decomposition: empty graph");
  if (!comm.connected())
    throw Disconnected("build_tree_decomposition: communication graph is not connected");

  TdResult out;
  const uint64_t depth_bound = depth_bound_for(comm.n, cfg);

  std::vector<ActiveNode> active;
  {
    std::vector<VertexId> all(comm.n);
    for (VertexId v = 0; v < comm.n; ++v) all[v] = v;
    active.push_back(ActiveNode{{}, std::move(all), {}});
  }

  uint32_t level = 0;
  while (!active.empty()) {
    if (level > depth_bound)
      throw SimError("build_tree_decomposition: depth bound exceeded");

    // All open components at this level are vertex disjoint, so one
    // parallel invocation covers them.
    std::vector<std::vector<VertexId>> parts;
    parts.reserve(active.size());
    for (const ActiveNode& node : active) parts.push_back(node.comp);
    auto ps = sep::parallel_separators(comm, parts, parts, cfg,
                                       mix_seed(seed, level), max_rounds);
    out.stats += ps.stats;

    // Assemble bags and decide which nodes stay open.
    std::vector<size_t> pending;
    for (size_t i = 0; i < active.size(); ++i) {
      const ActiveNode& node = active[i];
      const std::vector<VertexId>& sep_set = ps.results[i].separator;
      out.max_terminal_t =
          std::max(out.max_terminal_t, ps.results[i].terminal_t);
      const bool leaf =
          node.comp.size() <= 2 * sep_set.size() + node.boundary.size();
      std::vector<VertexId> bag =
          leaf ? sorted_union(node.comp, node.boundary)
               : sorted_union(sep_set, node.boundary);
      out.td.add_bag(node.id, std::move(bag));
      if (!leaf) pending.push_back(i);
    }

    std::vector<ActiveNode> next;
    if (!pending.empty()) {
      // Children are the components left after deleting the bag from the
      // subproblem; one connected-component detection spans all pending
      // nodes, each hosted inside its (connected) component part.
      dist::Collection col(comm.n);
      dist::PerPart<std::vector<VertexId>> indicated(comm.n);
      std::vector<std::vector<VertexId>> removed;
      removed.reserve(pending.size());
      for (size_t i : pending) {
        const ActiveNode& node = active[i];
        const std::vector<VertexId>& sep_set = ps.results[i].separator;
        uint32_t p = col.add_induced_part(comm, node.comp);
        std::vector<VertexId> rem;
        std::set_difference(node.comp.begin(), node.comp.end(),
                            sep_set.begin(), sep_set.end(),
                            std::back_inserter(rem));
        std::set<VertexId> rem_set(rem.begin(), rem.end());
        for (VertexId v : node.comp) {
          auto& slot = indicated[v][p];
          if (!rem_set.count(v)) continue;
          for (VertexId w : comm.adj[v])
            if (rem_set.count(w)) slot.push_back(w);
        }
        removed.push_back(std::move(rem));
      }
      col.validate(comm);
      auto cc = dist::ccd(comm, col, indicated, max_rounds);
      out.stats += cc.stats;

      for (size_t pi = 0; pi < pending.size(); ++pi) {
        const ActiveNode& node = active[pending[pi]];
        const std::vector<VertexId>& bag = out.td.bag(node.id);
        const uint32_t p = static_cast<uint32_t>(pi);

        std::map<VertexId, std::vector<VertexId>> groups;
        for (VertexId v : removed[pi])
          groups[cc.component[v].at(p)].push_back(v);
        if (groups != host_components(comm, removed[pi]))
          throw SimError(
              "build_tree_decomposition: component detection disagrees with "
              "central recomputation");
        if (groups.empty())
          throw SimError(
              "build_tree_decomposition: open node produced no children");

        std::set<VertexId> bag_set(bag.begin(), bag.end());
        uint32_t index = 0;
        for (auto& [min_id, child_comp] : groups) {
          // Exact per-child balance, the source of the depth bound.
          if (child_comp.size() * cfg.alpha_den >
              cfg.alpha_num * node.comp.size())
            throw SimError(
                "build_tree_decomposition: child component violates balance");
          std::set<VertexId> attached;
          for (VertexId u : child_comp)
            for (VertexId w : comm.adj[u])
              if (bag_set.count(w)) attached.insert(w);
          if (attached.empty())
            throw SimError(
                "build_tree_decomposition: child component detached from bag");
          ActiveNode child;
          child.id = node.id;
          child.id.push_back(index++);
          child.comp = std::move(child_comp);
          child.boundary.assign(attached.begin(), attached.end());
          next.push_back(std::move(child));
        }
      }
    }
    active = std::move(next);
    ++level;
  }

  out.depth = out.td.depth();
  const DecompositionReport report = validate_tree_decomposition(g, out.td);
  if (!report.valid)
    throw SimError("build_tree_decomposition: invalid decomposition: " +
                   (report.violations.empty() ? std::string("unknown")
                                              : report.violations.front()));
  // Per-bag budget: every bag is a union of at most depth+1 separators,
  // doubled by the leaf rule, each within the configured size bound.
  const uint64_t tt = out.max_terminal_t;
  const uint64_t per_sep = cfg.size_bound_mult * tt * tt;  // 2x the size cap
  if (static_cast<uint64_t>(report.width) + 1 > per_sep * (out.depth + 1))
    throw SimError("build_tree_decomposition: width exceeds separator budget");
  return out;
}

int decomposition_witness_width(const TreeDecomposition& td) {
  return td.width();
}

}  // namespace lowtw::td
