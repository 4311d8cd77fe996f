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

#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"
#include "dist/primitives.hpp"
#include "sep/separator.hpp"

namespace lowtw::td {

// Result of the distributed decomposition build. `depth` mirrors
// td.depth(); `max_terminal_t` is the largest doubling value any separator
// invocation terminated with, which fixes the per-bag size budget.
struct TdResult {
  TreeDecomposition td;
  dist::RunStats stats;
  uint32_t depth = 0;
  uint32_t max_terminal_t = 0;
};

// Builds a rooted tree decomposition of Comm(g) by recursive balanced
// separation. Level by level, the still-open components are vertex
// disjoint, so their separators run in parallel; each new bag is the
// separator found in the component plus the parent-bag vertices attached
// to it, and the recursion closes a node as a leaf (bag = every vertex of
// its subproblem) as soon as the subproblem is at most twice its
// separator.
//
// The returned decomposition always passes validate_tree_decomposition;
// construction-time invariants (bag containment, per-child balance, the
// depth bound implied by the configured balance) are re-checked centrally
// and any disagreement throws SimError. Throws InvalidInput on an empty
// graph and Disconnected when Comm(g) is not connected.
TdResult build_tree_decomposition(const MultiGraph& g, const sep::SepConfig& cfg,
                                  uint64_t seed,
                                  uint64_t max_rounds = dist::kDefaultMaxRounds);

// Width a decomposition certifies: max bag size - 1, or -1 for a
// decomposition with no bags.
int decomposition_witness_width(const TreeDecomposition& td);

}  // namespace lowtw::td
