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

#include <string>

#include "core/multigraph.hpp"
#include "core/tree_decomposition.hpp"

namespace lowtw {

// Line-oriented graph text.  Header `n m directed|undirected`, then m lines
// `edge_id u v weight` with weight a decimal or the token `inf`.  Serialization
// is canonical (edges ascending by id, single spaces, trailing newline), so
// parse and serialize invert each other bit-exactly on canonical text.
std::string serialize_graph(const MultiGraph& g);
MultiGraph parse_graph(const std::string& text);

// One bag per line: the bag id symbols, a colon, then the sorted vertices,
// e.g. `0 2 : 1 5 7`.  The root line starts with the bare colon.
std::string serialize_decomposition(const TreeDecomposition& td);
TreeDecomposition parse_decomposition(const std::string& text);

}  // namespace lowtw
