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

// Centralized reference implementations, used only to verify distributed
// outputs.  They share nothing with the distributed code paths beyond the
// core data types, and they only ever run at small scale.

#pragma once

#include <set>
#include <vector>

#include "core/constraint.hpp"
#include "core/multigraph.hpp"
#include "core/types.hpp"

namespace lowtw {

// Exact directed distances d[s][t] by Dijkstra per source.  Infinite-cost
// edges are treated as absent.
std::vector<std::vector<Weight>> oracle_apsp(const MultiGraph& g);

// Maximum cardinality of a matching; throws NotBipartite (a self-loop counts
// as an odd cycle).
uint32_t oracle_matching(const MultiGraph& g);

struct CycleWitness {
  Weight weight = kInf;           // kInf when the graph has no cycle
  std::vector<EdgeId> edges;      // a witness shortest simple cycle, in order
};

// Weight of the shortest simple cycle (directed cycles for directed inputs).
// Requires positive finite weights for the simple-cycle semantics to hold.
CycleWitness oracle_girth(const MultiGraph& g);

// Shortest weight over walks of at most max_len edges folding to each state.
// Indexed [s][t][q]; [s][s][init] is 0 via the empty walk.
struct WalkTable {
  uint32_t n = 0;
  uint32_t num_states = 0;
  std::vector<Weight> d;
  Weight& at(VertexId s, VertexId t, uint32_t q) {
    return d[(static_cast<size_t>(s) * n + t) * num_states + q];
  }
  Weight at(VertexId s, VertexId t, uint32_t q) const {
    return d[(static_cast<size_t>(s) * n + t) * num_states + q];
  }
};
WalkTable oracle_constrained_walks(const MultiGraph& g,
                                   const StatefulConstraint& c,
                                   uint32_t max_len);

// Minimum number of vertices outside X and Y whose removal disconnects X
// from Y in the communication graph; kInf when X and Y share a vertex or an
// edge.  The witness lists the cut vertices.
struct VertexCut {
  Weight size = kInf;
  std::vector<VertexId> cut;
};
VertexCut oracle_min_vertex_cut(const MultiGraph& g,
                                const std::set<VertexId>& xs,
                                const std::set<VertexId>& ys);

// True iff every connected component of Comm(G) - S has measure
// mu_X(component) <= (alpha_num/alpha_den) * mu_X(V); compared exactly.
bool oracle_balance(const MultiGraph& g, const std::vector<VertexId>& s,
                    const std::set<VertexId>& xs, uint64_t alpha_num,
                    uint64_t alpha_den);

}  // namespace lowtw
