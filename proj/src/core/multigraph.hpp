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

#include <set>
#include <vector>

#include "core/types.hpp"

namespace lowtw {

/// Directed or undirected weighted multigraph over vertices [0, n).
/// Parallel edges and self-loops are allowed; edge ids are unique.
struct MultiGraph {
  struct Edge {
    EdgeId id;
    VertexId from;
    VertexId to;
    Weight cost;
    bool operator==(const Edge&) const = default;
  };

  uint32_t n = 0;
  bool directed = true;
  std::vector<Edge> edges;  // kept sorted by id

  bool operator==(const MultiGraph&) const = default;

  void add_edge(EdgeId id, VertexId u, VertexId v, Weight c);
  const Edge& edge(EdgeId id) const;
  bool has_edge_id(EdgeId id) const;
  Weight max_finite_cost() const;

  /// Directional traversal view: one arc per directed edge, two per
  /// undirected edge (self-loops contribute a single arc either way).
  struct Arc {
    EdgeId edge;
    VertexId from;
    VertexId to;
    Weight cost;
  };
  std::vector<Arc> arcs() const;
  /// Arcs grouped by tail vertex.
  std::vector<std::vector<Arc>> out_arcs() const;

  /// Minimum cost over parallel edges u -> v (kInf when absent).
  Weight min_cost(VertexId u, VertexId v) const;
};

/// Underlying simple undirected communication graph: orientations dropped,
/// parallel edges merged, self-loops removed.
struct CommGraph {
  uint32_t n = 0;
  std::vector<std::vector<VertexId>> adj;  // sorted, no duplicates

  bool has_edge(VertexId u, VertexId v) const;
  /// Hop diameter of the largest component (kInf-free: returns max finite
  /// eccentricity; disconnected pairs are ignored).
  uint32_t diameter() const;
  bool connected() const;
  std::vector<uint32_t> component_ids() const;
};

CommGraph derive_comm_graph(const MultiGraph& g);

/// Vertex-subset measure mu(Y) = |Y intersect X|.
struct WeightedMeasure {
  std::vector<bool> in_x;
  explicit WeightedMeasure(uint32_t n) : in_x(n, false) {}
  WeightedMeasure(uint32_t n, const std::set<VertexId>& xs) : in_x(n, false) {
    for (VertexId v : xs) in_x.at(v) = true;
  }
  uint64_t mu(const std::vector<VertexId>& ys) const {
    uint64_t m = 0;
    for (VertexId y : ys) m += in_x.at(y) ? 1 : 0;
    return m;
  }
  uint64_t total() const {
    uint64_t m = 0;
    for (bool b : in_x) m += b ? 1 : 0;
    return m;
  }
};

}  // namespace lowtw
