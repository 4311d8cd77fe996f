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
#include <map>
#include <vector>

#include "core/multigraph.hpp"
#include "dist/primitives.hpp"

// Balanced (X, alpha)-separators for low-treewidth graphs, built from
// spanning-tree splitting, iterated root removal, and randomly sampled
// minimum vertex cuts, with a doubling estimate of the treewidth parameter
// t. Every operation that costs communication is realized as a run of the
// message-passing collection primitives; the returned stats accumulate all
// of those runs.
namespace lowtw::sep {

using dist::RunStats;

// All tuning constants of the separator construction. `paper()` keeps the
// asymptotic-regime defaults; at the instance sizes this repository can
// simulate, those make the measure cutoff fire immediately (base_cutoff *
// t^2 already exceeds mu at t = 2), so `desk()` shrinks the cutoff, the
// balance target, and the sampling width enough to exercise the full
// splitting and cut-sampling machinery on graphs of a few hundred vertices.
struct SepConfig {
  // Balance target: every component left by the separator must hold at most
  // alpha_num/alpha_den of the total measure.
  uint64_t alpha_num = 14399;
  uint64_t alpha_den = 14400;
  // The construction halts immediately with S = X once mu(G) <= base_cutoff
  // * t^2.
  uint64_t base_cutoff = 200;
  // Ordered tree pairs sampled per iteration in the cut-sampling step.
  uint32_t pair_samples = 95;
  // Output size bound: |S| <= size_bound_mult * t^2 / 2 for the terminal t.
  uint64_t size_bound_mult = 400;
  // Cut-sampling trials before t doubles: trials * ceil(log2 n).
  uint32_t trials = 5;
  // Split size windows: pieces measure at least mu(G)/(split_lo_div * t);
  // trees above mu(G)/(split_hi_div * t) go back to the working set.
  uint64_t split_lo_div = 12;
  uint64_t split_hi_div = 4;
  // Iterations of the split/remove loop: t_hat = t + ceil(t * (iter_num -
  // iter_den) / iter_den).
  uint64_t iter_num = 301;
  uint64_t iter_den = 300;

  static SepConfig paper() { return SepConfig{}; }
  static SepConfig desk() {
    SepConfig c;
    c.alpha_num = 3;
    c.alpha_den = 4;
    c.base_cutoff = 4;
    c.pair_samples = 20;
    return c;
  }
  // Throws InvalidInput when a field is out of range. alpha must lie in
  // [1/2, 1): the halting test checks only the components of the current
  // working graph, which certifies global balance only when no two
  // components can both exceed the alpha fraction.
  void validate() const;
};

// Identity and size of one finished split tree, as every member of the
// tree knows it: the iteration that produced it, the tree ID (root id plus
// the largest id among the root's children, the root id again for a
// single-vertex tree; trees can share a root, never a root and its child
// set), and the tree's measure.
struct SplitTreeProfile {
  uint32_t iteration = 0;
  VertexId root = 0;
  VertexId max_child = 0;
  uint64_t mu = 0;
};

// One tree produced by a single Split invocation. `parent` maps each piece
// vertex to its parent within the piece (the root maps to itself), so a
// piece can re-enter the working set as a rooted tree directly.
struct SplitPiece {
  VertexId root = 0;
  VertexId max_child = 0;  // largest child of the root in the piece; root if none
  std::vector<VertexId> vertices;  // sorted, includes the root
  std::map<VertexId, VertexId> parent;
  uint64_t mu = 0;
  bool to_working = false;  // detached/merged piece with mu * split_hi_div * t > mu_g
};

struct SplitOut {
  VertexId center = 0;
  std::vector<SplitPiece> pieces;
};

// One Split invocation on one rooted tree: find the measure-center c
// (every component left by removing c has measure at most mu(T)/2;
// smallest qualifying vertex id wins), re-root at c, detach the child
// subtrees of measure at least mu_g/(split_lo_div * t), then either merge
// the light remainder into the first detached subtree or group the light
// child subtrees around c greedily. Pieces partition the tree's vertices
// except that grouped pieces share the center; the connector edges of
// detached subtrees belong to no piece. Requires mu(T) * split_hi_div * t
// > mu_g (throws InvalidInput otherwise); piece size windows are checked
// inline and violations throw SimError.
SplitOut split(const std::vector<VertexId>& vertices,
               const std::map<VertexId, VertexId>& parent,
               const WeightedMeasure& mu, uint64_t mu_g, uint32_t t,
               const SepConfig& cfg);

struct SepResult {
  std::vector<VertexId> separator;  // sorted
  uint32_t terminal_t = 0;          // the t value in force when output happened
  RunStats stats;
};

// Computes an (X, alpha)-balanced separator of the connected graph g.
// x lists the measured vertices (mu_X(Y) = |Y intersect X|); the balance
// and size postconditions are re-checked against a centralized component
// scan on every run before returning. Throws Disconnected when g is not
// connected, InvalidInput on bad arguments.
SepResult find_balanced_separator(const CommGraph& g,
                                  const std::vector<VertexId>& x,
                                  const SepConfig& cfg, uint64_t seed,
                                  uint64_t max_rounds = dist::kDefaultMaxRounds);

struct ParallelSepOut {
  std::vector<SepResult> results;  // one per part, same order as `parts`
  RunStats stats;                  // rounds = max over parts, traffic summed
};

// Runs the separator construction on several vertex-disjoint connected
// parts of g at once. Parts share no vertices, hence no edges, so their
// message-passing executions never contend for bandwidth: interleaving
// them costs exactly the rounds of the slowest part, which is how the
// combined stats are accounted. x_sets[i] must be a subset of parts[i].
ParallelSepOut parallel_separators(const CommGraph& g,
                                   const std::vector<std::vector<VertexId>>& parts,
                                   const std::vector<std::vector<VertexId>>& x_sets,
                                   const SepConfig& cfg, uint64_t seed,
                                   uint64_t max_rounds = dist::kDefaultMaxRounds);

}  // namespace lowtw::sep
