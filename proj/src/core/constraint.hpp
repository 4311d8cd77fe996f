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
#include <string>
#include <vector>

#include "core/types.hpp"

namespace lowtw {

// Finite-state walk constraint.  A walk is classified by folding the per-edge
// transition over its edges starting from the initial state; a walk is
// admitted while its state stays off the reject state.  Two state slots are
// fixed so every consumer agrees on them:
//   slot 0 = "init"  (the empty walk; nothing ever transitions back into it)
//   slot 1 = "bot"   (absorbing reject)
struct StatefulConstraint {
  static constexpr uint32_t kInit = 0;
  static constexpr uint32_t kReject = 1;

  std::vector<std::string> names;  // names.size() == |Q|; [0]="init", [1]="bot"
  // Per-edge transition table, each of size |Q|.  Edges without an entry send
  // every state to the reject state.
  std::map<EdgeId, std::vector<uint32_t>> delta;

  uint32_t num_states() const { return static_cast<uint32_t>(names.size()); }

  // delta lookup; edges with no table reject everything except that
  // bot stays bot (trivially satisfied since bot -> bot anyway).
  uint32_t step(EdgeId e, uint32_t q) const;

  // Fold over an edge sequence from the initial state.
  uint32_t classify(const std::vector<EdgeId>& walk) const;

  // Throws MalformedConstraint unless: at least the two fixed states exist
  // with their required names, all names unique and non-empty, every table
  // has |Q| entries in range, bot is absorbing, and nothing maps into init.
  void check_well_formed() const;
};

// The two canonical constraint families.
//
// colored: states are the c colors; consecutive walk edges must change color.
// An edge moves any state (including init) to its own color, except that
// repeating the current color rejects.  coloring values must lie in [0, c).
StatefulConstraint colored_constraint(uint32_t c,
                                      const std::map<EdgeId, uint32_t>& coloring);

// count: edges carry bits; a walk is admitted while the bit-sum stays at most
// c.  States are the partial sums 0..c.  bit values must be 0 or 1.
StatefulConstraint count_constraint(uint32_t c,
                                    const std::map<EdgeId, uint32_t>& bits);

// Text format: a `states` line naming every state in slot order (slots 0 and
// 1 must be the literal names init and bot), then one line per edge,
// `edge_id: q->q' q->q' ...`; transitions not listed map to bot, and the
// bot->bot transition is implied.  Serialization is canonical: edges
// ascending, transitions in source-state order, reject transitions omitted.
std::string serialize_constraint(const StatefulConstraint& c);
StatefulConstraint parse_constraint(const std::string& text);

}  // namespace lowtw
