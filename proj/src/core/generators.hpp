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

#include <cstdint>
#include <string>

#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"
#include "core/types.hpp"

namespace lowtw {

// Shared generator knobs.  keep_num/keep_den is the per-edge survival
// probability as an exact rational; weights are drawn uniformly from
// [weight_min, weight_max].  In directed mode each surviving underlying edge
// becomes a forward arc, a backward arc, or both, each variant with
// probability 1/3 and independently drawn weights.
struct GenOptions {
  uint64_t keep_num = 1;
  uint64_t keep_den = 1;
  Weight weight_min = 1;
  Weight weight_max = 1;
  bool directed = false;
};

struct GeneratedKtree {
  MultiGraph graph;
  TreeDecomposition witness;  // width k by construction
};

// Random k-tree (vertex i > k attaches to a uniformly chosen existing
// k-clique) thinned by keep_prob.  The witness decomposition of the full
// k-tree is returned; it stays valid for every subgraph of the k-tree.
// bipartite additionally assigns each vertex a random side and drops
// edges inside a side.
GeneratedKtree generate_partial_ktree(uint32_t n, uint32_t k,
                                      const GenOptions& opt, uint64_t seed,
                                      bool bipartite = false);

MultiGraph generate_path(uint32_t n, const GenOptions& opt, uint64_t seed);
// Directed mode orients the cycle consistently instead of per-edge sampling.
MultiGraph generate_cycle(uint32_t n, const GenOptions& opt, uint64_t seed);
MultiGraph generate_grid(uint32_t rows, uint32_t cols, const GenOptions& opt,
                         uint64_t seed);
MultiGraph generate_star(uint32_t n, const GenOptions& opt, uint64_t seed);

// Dispatch on a family name: ktree, bipartite-ktree, path, cycle, grid, star.
// k is used by ktree families; grid uses k as the column count (rows chosen as
// ceil(n / k)).  Throws InvalidInput on unknown family names.
GeneratedKtree generate_family(const std::string& family, uint32_t n,
                               uint32_t k, const GenOptions& opt,
                               uint64_t seed);

}  // namespace lowtw
