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

#include "core/multigraph.hpp"
#include "core/types.hpp"

namespace lowtw {

// Bag identifiers are strings over the alphabet [0, n-1], stored as integer
// sequences so the alphabet is not limited to printable characters.  The root
// is the empty sequence; the parent of a non-root id drops the last symbol.
using BagId = std::vector<uint32_t>;

// True iff a is a (not necessarily proper) prefix of b.
bool is_prefix(const BagId& a, const BagId& b);

std::string bag_id_to_string(const BagId& id);

// Rooted tree decomposition.  Bags are kept sorted; the node set is the key
// set of `bags`.  The structure is permissive on construction: validity is
// established by validate_tree_decomposition, never assumed.
struct TreeDecomposition {
  std::map<BagId, std::vector<VertexId>> bags;

  void add_bag(const BagId& id, std::vector<VertexId> vertices);
  bool has_bag(const BagId& id) const { return bags.count(id) != 0; }
  const std::vector<VertexId>& bag(const BagId& id) const;

  // Child symbols of id that are present as nodes, ascending.
  std::vector<uint32_t> children(const BagId& id) const;

  int width() const;       // max bag size - 1, or -1 when empty
  uint32_t depth() const;  // max id length
};

struct DecompositionReport {
  bool valid = false;
  int width = -1;
  uint32_t depth = 0;
  std::vector<std::string> violations;
};

// Checks structural prefix-closure plus the three decomposition conditions:
// (a) bags cover V(G), (b) every edge has both endpoints in some bag,
// (c) the bags containing any fixed vertex form a connected subtree.
DecompositionReport validate_tree_decomposition(const MultiGraph& g,
                                                const TreeDecomposition& td);

// The unique shortest bag id whose bag contains v.  Uniqueness is a
// consequence of condition (c); ambiguity or absence throws InvalidInput.
BagId canonical_string(const TreeDecomposition& td, VertexId v);

// Union of the bags at every prefix of canonical_string(v), inclusive.
std::vector<VertexId> upward_bags(const TreeDecomposition& td, VertexId v);

}  // namespace lowtw
