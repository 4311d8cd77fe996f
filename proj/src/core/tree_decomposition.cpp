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

#include "core/tree_decomposition.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lowtw {

bool is_prefix(const BagId& a, const BagId& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

std::string bag_id_to_string(const BagId& id) {
  std::ostringstream os;
  for (size_t i = 0; i < id.size(); ++i) {
    if (i) os << ' ';
    os << id[i];
  }
  return os.str();
}

void TreeDecomposition::add_bag(const BagId& id, std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!bags.emplace(id, std::move(vertices)).second)
    throw InvalidInput("duplicate bag id");
}

const std::vector<VertexId>& TreeDecomposition::bag(const BagId& id) const {
  auto it = bags.find(id);
  if (it == bags.end()) throw InvalidInput("unknown bag id");
  return it->second;
}

std::vector<uint32_t> TreeDecomposition::children(const BagId& id) const {
  std::vector<uint32_t> out;
  BagId child = id;
  child.push_back(0);
  for (auto it = bags.lower_bound(child); it != bags.end(); ++it) {
    if (!is_prefix(id, it->first)) break;
    if (it->first.size() == id.size() + 1) out.push_back(it->first.back());
  }
  return out;
}

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& [id, b] : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

uint32_t TreeDecomposition::depth() const {
  size_t d = 0;
  for (const auto& [id, b] : bags) d = std::max(d, id.size());
  return static_cast<uint32_t>(d);
}

DecompositionReport validate_tree_decomposition(const MultiGraph& g,
                                                const TreeDecomposition& td) {
  DecompositionReport rep;
  rep.width = td.width();
  rep.depth = td.depth();

  for (const auto& [id, b] : td.bags) {
    if (!id.empty()) {
      BagId parent(id.begin(), id.end() - 1);
      if (!td.has_bag(parent))
        rep.violations.push_back("bag " + bag_id_to_string(id) +
                                 " has no parent node");
    }
    for (VertexId v : b)
      if (v >= g.n)
        rep.violations.push_back("bag " + bag_id_to_string(id) +
                                 " contains out-of-range vertex " +
                                 std::to_string(v));
  }

  // (a) coverage of V(G)
  std::vector<char> covered(g.n, 0);
  for (const auto& [id, b] : td.bags)
    for (VertexId v : b)
      if (v < g.n) covered[v] = 1;
  for (VertexId v = 0; v < g.n; ++v)
    if (!covered[v])
      rep.violations.push_back("vertex " + std::to_string(v) + " in no bag");

  // (b) edge coverage
  for (const auto& e : g.edges) {
    bool ok = false;
    for (const auto& [id, b] : td.bags) {
      if (std::binary_search(b.begin(), b.end(), e.from) &&
          std::binary_search(b.begin(), b.end(), e.to)) {
        ok = true;
        break;
      }
    }
    if (!ok)
      rep.violations.push_back("edge " + std::to_string(e.id) + " (" +
                               std::to_string(e.from) + "," +
                               std::to_string(e.to) + ") uncovered");
  }

  // (c) connected occurrence: among the bags holding v, exactly one may have
  // its parent outside the set (the topmost one).
  std::map<VertexId, std::vector<const BagId*>> holding;
  for (const auto& [id, b] : td.bags)
    for (VertexId v : b)
      if (v < g.n) holding[v].push_back(&id);
  for (const auto& [v, ids] : holding) {
    std::set<BagId> in_set;
    for (const BagId* id : ids) in_set.insert(*id);
    int tops = 0;
    for (const BagId* idp : ids) {
      if (idp->empty()) {
        ++tops;
        continue;
      }
      BagId parent(idp->begin(), idp->end() - 1);
      if (!in_set.count(parent)) ++tops;
    }
    if (tops != 1)
      rep.violations.push_back("vertex " + std::to_string(v) +
                               " occurs in a disconnected bag set");
  }

  rep.valid = rep.violations.empty();
  return rep;
}

BagId canonical_string(const TreeDecomposition& td, VertexId v) {
  const BagId* best = nullptr;
  bool tie = false;
  for (const auto& [id, b] : td.bags) {
    if (!std::binary_search(b.begin(), b.end(), v)) continue;
    if (!best || id.size() < best->size()) {
      best = &id;
      tie = false;
    } else if (id.size() == best->size()) {
      tie = true;
    }
  }
  if (!best) throw InvalidInput("vertex appears in no bag");
  if (tie) throw InvalidInput("shortest bag for vertex is not unique");
  return *best;
}

std::vector<VertexId> upward_bags(const TreeDecomposition& td, VertexId v) {
  BagId st = canonical_string(td, v);
  std::set<VertexId> acc;
  for (size_t len = 0; len <= st.size(); ++len) {
    BagId prefix(st.begin(), st.begin() + len);
    auto it = td.bags.find(prefix);
    if (it != td.bags.end()) acc.insert(it->second.begin(), it->second.end());
  }
  return std::vector<VertexId>(acc.begin(), acc.end());
}

}  // namespace lowtw
