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

// Constrained shortest walks.  A finite-state constraint classifies every
// walk by folding per-edge transitions; the shortest walk reaching a given
// state is found as an unconstrained shortest path in a product graph whose
// vertices pair a graph vertex with a walk state.  On top of the reduction
// this module offers constrained distance labels: plain distance labels of
// the product graph, grouped per original vertex.

#pragma once

#include <cstdint>
#include <vector>

#include "core/constraint.hpp"
#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"
#include "core/types.hpp"
#include "dist/primitives.hpp"
#include "dl/distance_labels.hpp"
#include "sim/engine.hpp"

namespace lowtw::walks {

// The product of a graph and a constraint.  Vertex (u, q) means "arrived at
// u with walk state q".  Edges:
//   (1) for every graph edge e = (u, v) and every state i, a transition arc
//       ((u, i), (v, step_e(i))) carrying the cost of e (both orientations
//       for undirected e);
//   (2) a zero-cost shortcut ((u, i), (u, reject)) for every i != reject, so
//       the underlying communication diameter exceeds the original by at
//       most two hops.
// Parallel arcs between one state pair collapse to the cheapest, with the
// smallest originating edge id breaking cost ties.  The product is always
// directed, because transitions need not be symmetric.
struct ProductGraph {
  static constexpr EdgeId kNoOrigin = static_cast<EdgeId>(-1);

  MultiGraph graph;  // num_states * base_n vertices, directed
  uint32_t base_n = 0;
  uint32_t num_states = 0;
  // Per product edge id: the graph edge realizing the arc, kNoOrigin for the
  // reject shortcuts of rule (2).
  std::vector<EdgeId> origin;

  VertexId encode(VertexId u, uint32_t q) const { return u * num_states + q; }
  VertexId base_of(VertexId pv) const { return pv / num_states; }
  uint32_t state_of(VertexId pv) const { return pv % num_states; }
};

// Materializes the product graph.  Throws MalformedConstraint when the
// constraint fails its well-formedness checks, InvalidInput when it holds a
// transition table for an edge the graph does not have or when the product
// vertex ids would overflow.
ProductGraph build_product_graph(const MultiGraph& g, const StatefulConstraint& c);

// The product network realized on the original one: logical vertex (u, q)
// lives at physical vertex u, so co-located product traffic is free and all
// remaining product arcs ride original edges.  `physical` must be the
// communication graph of the base graph and must outlive the projection.
sim::Projection product_projection(const ProductGraph& pg, const CommGraph& physical);

// Lifts a decomposition of the base graph to the product graph by replacing
// every bag vertex u with all of (u, q).  Bag identifiers are unchanged; the
// width grows by a factor of num_states.
TreeDecomposition lift_decomposition(const TreeDecomposition& td, const ProductGraph& pg);

// Shortest weighted length over walks from s to t whose state fold ends at
// q, computed as an unconstrained shortest path from (s, init) to (t, q) in
// the product graph; kInf when no such walk exists.  Throws InvalidState for
// the reject state and InvalidInput for out-of-range arguments.
Weight constrained_distance(const MultiGraph& g, const StatefulConstraint& c,
                            VertexId s, VertexId t, uint32_t q);

// A shortest constrained walk, reported the way the walk's own nodes would
// output it: every walk position carries its distance from the source and
// its predecessor position's vertex.
struct ConstrainedWalk {
  std::vector<EdgeId> edges;          // in order from s to t
  std::vector<VertexId> vertices;     // edges.size() + 1 entries, s first
  std::vector<uint32_t> states;       // state after each prefix; init first
  std::vector<Weight> prefix_weight;  // distance from s at each position
  Weight weight = 0;
};

// Finds one shortest walk witnessing constrained_distance(g, c, s, t, q) by
// walking predecessors backwards from (t, q): a predecessor is any product
// in-neighbor whose distance plus arc cost matches, smallest product vertex
// id on ties.  Throws Unreachable when the distance is infinite, plus the
// argument errors of constrained_distance.
ConstrainedWalk extract_constrained_walk(const MultiGraph& g,
                                         const StatefulConstraint& c,
                                         VertexId s, VertexId t, uint32_t q);

// Constrained distance labels: labels[u][q] is the plain distance label of
// product vertex (u, q), so one vertex's row is exactly what it would hold
// after simulating its product copies.  Decoding state q between u and v
// reads the init-state label of u against the q-state label of v.
struct CdlResult {
  std::vector<std::vector<dl::DistanceLabel>> labels;  // [u][q]
  uint32_t num_states = 0;
  dist::RunStats stats;
};

// Builds the labels by running the distance-labeling construction on the
// materialized product graph under the lifted decomposition.  `td` must be a
// decomposition of the base graph that the labeling construction accepts;
// its errors propagate.
CdlResult cdl_build(const MultiGraph& g, const StatefulConstraint& c,
                    const TreeDecomposition& td,
                    uint64_t max_rounds = dist::kDefaultMaxRounds);

// Constrained distance from the owner of `lu` to the owner of `lv` with
// terminal state q.  Throws InvalidState for the reject state, InvalidInput
// when q is out of range for either label row.
Weight cdl_decode(uint32_t q, const std::vector<dl::DistanceLabel>& lu,
                  const std::vector<dl::DistanceLabel>& lv);

}  // namespace lowtw::walks
