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

#pragma once

#include <map>
#include <vector>

#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"
#include "dist/primitives.hpp"

namespace lowtw::dl {

// Exact distance label of one vertex: directed distances in the full graph
// between the owner and every vertex of its hub set (the union of the bags
// on the path from the decomposition root to the owner's canonical bag).
// fwd[s] = d(owner, s), bwd[s] = d(s, owner); both maps share the hub key
// set, so a label carries exactly 2 * |hubs| distance triples.
struct DistanceLabel {
  VertexId owner = 0;
  std::map<VertexId, Weight> fwd;
  std::map<VertexId, Weight> bwd;

  bool operator==(const DistanceLabel&) const = default;
};

// d(u, v) = min over shared hubs s of fwd_u(s) + bwd_v(s). Exact for labels
// of one build. Throws DisjointHubSets when the labels share no hub, which
// a decomposition-backed build can never produce (both contain the root
// bag); it guards against mixing labels of different builds.
Weight decode(const DistanceLabel& lu, const DistanceLabel& lv);

struct DlResult {
  std::vector<DistanceLabel> labels;  // indexed by vertex
  dist::RunStats stats;
};

// Distributed label construction over a valid rooted tree decomposition.
// Bottom-up by decomposition level: every node of the decomposition owns a
// compressed graph — leaves their whole subproblem, inner nodes their bag
// with edge costs folded through the children — and one pipelined
// broadcast per level delivers those edge lists to the vertices that need
// them; every vertex then derives its label locally from the received
// union. Every broadcast reception, the compressed-graph distance identity,
// and the child-composition identity are re-checked against centralized
// recomputation (SimError on disagreement).
//
// Throws InvalidDecomposition when the decomposition fails validation or
// when a decomposition node's fresh region (its subtree's vertices minus
// the parent bag) is empty or disconnected — the per-level broadcast
// arenas need connected regions, and the builder in this repository
// always produces them.
DlResult build_labels(const MultiGraph& g, const TreeDecomposition& td,
                      uint64_t max_rounds = dist::kDefaultMaxRounds);

struct SsspResult {
  std::vector<Weight> dist;  // d(source, v) per vertex
  dist::RunStats stats;
};

// Single-source distances: builds labels, broadcasts the source's label to
// every vertex, and each vertex decodes its own distance. Errors as
// build_labels, plus InvalidInput for an out-of-range source.
SsspResult sssp_from(const MultiGraph& g, const TreeDecomposition& td,
                     VertexId source,
                     uint64_t max_rounds = dist::kDefaultMaxRounds);

}  // namespace lowtw::dl
