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

#include "sep/separator.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/types.hpp"
#include "oracle/oracles.hpp"

namespace lowtw::sep {

void SepConfig::validate() const {
  if (alpha_num == 0 || alpha_num >= alpha_den)
    throw InvalidInput("sep: alpha must satisfy 0 < alpha < 1");
  // The halting test inspects only the components of the current working
  // graph; with alpha < 1/2 two components could exceed the alpha fraction
  // simultaneously and the local test would no longer certify global
  // balance.
  if (alpha_num * 2 < alpha_den)
    throw InvalidInput("sep: alpha must be at least 1/2");
  if (base_cutoff == 0 || pair_samples == 0 || size_bound_mult == 0 || trials == 0)
    throw InvalidInput("sep: multipliers must be positive");
  if (split_hi_div < 2 || split_lo_div < 3 * split_hi_div)
    throw InvalidInput("sep: split divisors must satisfy lo >= 3*hi, hi >= 2");
  if (iter_num <= iter_den || iter_den == 0)
    throw InvalidInput("sep: iteration fraction must exceed 1");
  // A step-1 exit outputs X itself, of size mu(G) <= base_cutoff * t^2;
  // that must stay within the advertised output bound.
  if (base_cutoff * 2 > size_bound_mult)
    throw InvalidInput("sep: base_cutoff * 2 must not exceed size_bound_mult");
}

namespace {

using dist::AggOp;
using dist::Collection;
using dist::MvcPair;
using dist::PerPart;

uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

// ---------------------------------------------------------------------------
// Rooted-tree bookkeeping shared by split() and the driver.
// ---------------------------------------------------------------------------

struct Rooted {
  VertexId root = 0;
  std::vector<VertexId> order;  // BFS order from the root
  std::map<VertexId, std::vector<VertexId>> children;  // ascending ids
  std::map<VertexId, uint64_t> sub;  // subtree measures
};

// Validates a (vertices, parent) pair as a rooted tree and computes
// children lists, a BFS order, and subtree measures. Throws InvalidInput
// when the parent map is not a single tree over exactly these vertices.
Rooted analyze(const std::vector<VertexId>& vertices,
               const std::map<VertexId, VertexId>& parent,
               const WeightedMeasure& mu) {
  Rooted r;
  if (vertices.empty()) throw InvalidInput("split: empty tree");
  if (parent.size() != vertices.size())
    throw InvalidInput("split: parent map size mismatch");
  bool root_found = false;
  for (VertexId v : vertices) {
    auto it = parent.find(v);
    if (it == parent.end()) throw InvalidInput("split: vertex missing parent");
    if (!std::binary_search(vertices.begin(), vertices.end(), it->second))
      throw InvalidInput("split: parent outside the tree");
    if (it->second == v) {
      if (root_found) throw InvalidInput("split: several roots");
      root_found = true;
      r.root = v;
    }
  }
  if (!root_found) throw InvalidInput("split: no root");
  for (VertexId v : vertices) {
    if (v != r.root) r.children[parent.at(v)].push_back(v);
  }
  r.order.push_back(r.root);
  for (size_t i = 0; i < r.order.size(); ++i) {
    auto it = r.children.find(r.order[i]);
    if (it != r.children.end())
      r.order.insert(r.order.end(), it->second.begin(), it->second.end());
  }
  if (r.order.size() != vertices.size())
    throw InvalidInput("split: parent pointers contain a cycle");
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    uint64_t& s = r.sub[*it];
    s += mu.in_x[*it] ? 1 : 0;
    if (*it != r.root) r.sub[parent.at(*it)] += s;
  }
  return r;
}

// Vertices of the subtree rooted at u, sorted.
std::vector<VertexId> subtree_vertices(const Rooted& r, VertexId u) {
  std::vector<VertexId> out{u};
  for (size_t i = 0; i < out.size(); ++i) {
    auto it = r.children.find(out[i]);
    if (it != r.children.end())
      out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Smallest vertex id that qualifies as a measure center: its own subtree
// holds at least half the tree's measure while each child subtree holds at
// most half. Removing such a vertex leaves only components of measure at
// most mu(T)/2.
VertexId find_center(const std::vector<VertexId>& vertices, const Rooted& r,
                     uint64_t mu_t) {
  for (VertexId v : vertices) {
    if (r.sub.at(v) * 2 < mu_t) continue;
    bool ok = true;
    auto it = r.children.find(v);
    if (it != r.children.end()) {
      for (VertexId u : it->second) {
        if (r.sub.at(u) * 2 > mu_t) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return v;
  }
  throw SimError("split: no measure center exists");
}

// Parent map rerooted at c: edges along the path from c to the old root
// flip, everything else is unchanged.
std::map<VertexId, VertexId> reroot(const std::map<VertexId, VertexId>& parent,
                                    VertexId c) {
  std::map<VertexId, VertexId> out = parent;
  VertexId cur = c;
  VertexId nxt = parent.at(c);
  out[c] = c;
  while (nxt != cur) {
    VertexId after = parent.at(nxt);
    out[nxt] = cur;
    cur = nxt;
    nxt = after;
  }
  return out;
}

enum class PieceKind : uint8_t { Detached, Merged, Group };

}  // namespace

SplitOut split(const std::vector<VertexId>& vertices,
               const std::map<VertexId, VertexId>& parent,
               const WeightedMeasure& mu, uint64_t mu_g, uint32_t t,
               const SepConfig& cfg) {
  std::vector<VertexId> vs = vertices;
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    throw InvalidInput("split: duplicate vertices");
  Rooted orig = analyze(vs, parent, mu);
  const uint64_t mu_t = orig.sub.at(orig.root);
  const uint64_t lo = cfg.split_lo_div * static_cast<uint64_t>(t);
  const uint64_t hi = cfg.split_hi_div * static_cast<uint64_t>(t);
  if (mu_t * hi <= mu_g)
    throw InvalidInput("split: tree measure not above mu_g/(split_hi_div*t)");

  const VertexId center = find_center(vs, orig, mu_t);
  std::map<VertexId, VertexId> par2 = reroot(parent, center);
  Rooted re = analyze(vs, par2, mu);

  // Partition the center's child subtrees into heavy (detached as whole
  // pieces) and light (remainder around the center).
  std::vector<VertexId> heavy, light;
  uint64_t mu_heavy = 0;
  if (auto it = re.children.find(center); it != re.children.end()) {
    for (VertexId u : it->second) {
      if (re.sub.at(u) * lo >= mu_g) {
        heavy.push_back(u);
        mu_heavy += re.sub.at(u);
      } else {
        light.push_back(u);
      }
    }
  }
  const uint64_t mu_rem = mu_t - mu_heavy;
  const bool merge_remainder = !heavy.empty() && mu_rem * lo < mu_g;

  SplitOut out;
  out.center = center;
  std::vector<PieceKind> kinds;
  std::vector<uint64_t> group_child_mu;  // per Group piece: measure excluding c

  auto emit = [&](VertexId proot, std::vector<VertexId> pvs, PieceKind kind) {
    SplitPiece p;
    p.root = proot;
    std::sort(pvs.begin(), pvs.end());
    p.vertices = std::move(pvs);
    p.max_child = proot;
    bool has_child = false;
    for (VertexId v : p.vertices) {
      VertexId q = par2.at(v);
      p.parent[v] = q;
      if (v != proot && q == proot && (!has_child || v > p.max_child)) {
        p.max_child = v;
        has_child = true;
      }
    }
    p.parent[proot] = proot;
    p.mu = mu.mu(p.vertices);
    p.to_working = kind != PieceKind::Group && p.mu * hi > mu_g;
    out.pieces.push_back(std::move(p));
    kinds.push_back(kind);
  };

  // Detached subtrees, ascending by root id; when the remainder is light
  // it merges into the detached subtree with the smallest root, keeping
  // the connecting edge and the center as the merged piece's root.
  for (VertexId u : heavy) {
    if (merge_remainder && u == heavy.front()) {
      std::vector<VertexId> pvs = subtree_vertices(re, u);
      pvs.push_back(center);
      for (VertexId y : light) {
        auto sv = subtree_vertices(re, y);
        pvs.insert(pvs.end(), sv.begin(), sv.end());
      }
      emit(center, std::move(pvs), PieceKind::Merged);
    } else {
      emit(u, subtree_vertices(re, u), PieceKind::Detached);
    }
  }

  if (!merge_remainder) {
    // Group the light child subtrees around the center greedily: a group
    // closes as soon as its measure (excluding the center) reaches
    // mu_g/(lo); trailing children that never close a group join the last
    // closed one. Every group keeps the center as its root.
    std::vector<std::pair<std::vector<VertexId>, uint64_t>> groups;
    std::vector<VertexId> open;
    uint64_t open_mu = 0;
    for (VertexId y : light) {
      open.push_back(y);
      open_mu += re.sub.at(y);
      if (open_mu * lo >= mu_g) {
        groups.emplace_back(std::move(open), open_mu);
        open.clear();
        open_mu = 0;
      }
    }
    if (!open.empty()) {
      if (!groups.empty()) {
        auto& last = groups.back();
        last.first.insert(last.first.end(), open.begin(), open.end());
        last.second += open_mu;
      } else {
        groups.emplace_back(std::move(open), open_mu);
      }
    }
    if (groups.empty()) groups.emplace_back(std::vector<VertexId>{}, 0);
    for (size_t k = 0; k < groups.size(); ++k) {
      std::vector<VertexId> pvs{center};
      for (VertexId y : groups[k].first) {
        auto sv = subtree_vertices(re, y);
        pvs.insert(pvs.end(), sv.begin(), sv.end());
      }
      emit(center, std::move(pvs), PieceKind::Group);
      group_child_mu.push_back(groups[k].second);
    }
  }

  // Postcondition checks. Pieces cover the tree's vertices, sharing only
  // the center (and only among groups); sizes respect the windows that the
  // working-set recursion relies on.
  size_t total = 0, num_groups = 0;
  for (size_t k = 0; k < out.pieces.size(); ++k) {
    total += out.pieces[k].vertices.size();
    if (kinds[k] == PieceKind::Group) ++num_groups;
  }
  if (total != vs.size() + (num_groups > 0 ? num_groups - 1 : 0))
    throw SimError("split: pieces do not cover the tree exactly");
  size_t group_seen = 0;
  for (size_t k = 0; k < out.pieces.size(); ++k) {
    const SplitPiece& p = out.pieces[k];
    if (p.mu * lo < mu_g)
      throw SimError("split: piece below the lower size window");
    switch (kinds[k]) {
      case PieceKind::Detached:
        if (p.mu * 2 > mu_t)
          throw SimError("split: detached subtree above half the tree");
        break;
      case PieceKind::Merged:
        if (p.mu * 6 > 5 * mu_t)
          throw SimError("split: merged piece above 5/6 of the tree");
        break;
      case PieceKind::Group: {
        const uint64_t child_mu = group_child_mu[group_seen];
        const bool last = group_seen + 1 == group_child_mu.size();
        // Interior groups stay under 2*mu_g/lo, the last (which absorbs
        // the trailing children) under 3*mu_g/lo; with lo = 12t these are
        // the mu(G)/(6t) and mu(G)/(4t) windows. A lone group that never
        // reached the closing threshold is below mu_g/lo outright.
        uint64_t cap = last ? 3 : 2;
        if (group_child_mu.size() == 1 && child_mu * lo < mu_g) cap = 1;
        if (child_mu * lo >= cap * mu_g)
          throw SimError("split: group above its size window");
        ++group_seen;
        break;
      }
    }
    if (p.to_working && p.mu * 6 > 5 * mu_t)
      throw SimError("split: working-set piece does not shrink");
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Driver. The construction below orchestrates a sequence of distributed
// primitive executions; all decision state it keeps between runs mirrors
// what individual nodes (or the elected coordinators) already know locally
// from those executions, and every distributed result is cross-checked
// against a centralized recomputation before it is used.
// ---------------------------------------------------------------------------

struct Tree {
  VertexId root = 0;
  std::vector<VertexId> vertices;  // sorted
  std::map<VertexId, VertexId> parent;
};

struct TreeRec {
  SplitTreeProfile profile;
  std::vector<VertexId> vertices;  // sorted
};

struct SepCtx {
  const CommGraph& g;
  const SepConfig& cfg;
  std::vector<VertexId> universe;  // sorted
  std::vector<VertexId> xs;        // sorted
  WeightedMeasure mu;
  uint64_t mu_g = 0;
  uint64_t max_rounds = 0;
  RunStats stats;
};

Collection induced_collection(const CommGraph& g,
                              const std::vector<std::vector<VertexId>>& parts) {
  Collection col(g.n);
  for (const auto& p : parts) col.add_induced_part(g, p);
  return col;
}

// Per-(vertex, part) 0/1 inputs marking measured vertices.
PerPart<uint64_t> x_inputs(const SepCtx& ctx, const Collection& col) {
  PerPart<uint64_t> in(ctx.g.n);
  for (VertexId v = 0; v < ctx.g.n; ++v)
    for (const auto& [p, nbrs] : col.adj[v]) in[v][p] = ctx.mu.in_x[v] ? 1 : 0;
  return in;
}

struct Packer {
  uint64_t word = 0;
  uint32_t used = 0;
  void put(uint64_t v, uint32_t bits) {
    if (used + bits > 64)
      throw SimError("sep: packed payload exceeds one machine word");
    word |= v << used;
    used += bits;
  }
};

// One parallel Split pass over every tree in the working set, followed by
// the bookkeeping that files each produced piece into the working set or
// the finished list. Communication: subtree aggregation for sizes, part
// aggregation for tree totals, leader election for the center, a second
// subtree aggregation that realizes the rerooting, and a single-item
// broadcast over the center's child subtrees that propagates each piece's
// profile.
void split_invocation(SepCtx& ctx, std::deque<Tree>& working, uint32_t t,
                      uint32_t iteration, std::vector<TreeRec>* finished) {
  const CommGraph& g = ctx.g;
  std::vector<Tree> trees(working.begin(), working.end());
  working.clear();

  std::vector<std::vector<VertexId>> parts;
  parts.reserve(trees.size());
  for (const Tree& tr : trees) parts.push_back(tr.vertices);
  Collection col = induced_collection(g, parts);

  PerPart<uint64_t> xin = x_inputs(ctx, col);
  PerPart<VertexId> par(g.n);
  for (size_t p = 0; p < trees.size(); ++p)
    for (VertexId v : trees[p].vertices)
      par[v][static_cast<uint32_t>(p)] = trees[p].parent.at(v);

  auto sub_out = dist::sta(g, col, AggOp::Sum, 1, xin, par, ctx.max_rounds);
  ctx.stats += sub_out.stats;
  auto tot_out = dist::pa(g, col, AggOp::Sum, 1, xin, ctx.max_rounds);
  ctx.stats += tot_out.stats;

  // Center candidacy is decided from values each node holds after the
  // subtree aggregation (its own subtree size, its children's, and the
  // tree total).
  std::vector<Rooted> analyzed;
  analyzed.reserve(trees.size());
  PerPart<uint8_t> cand(g.n);
  for (size_t p = 0; p < trees.size(); ++p) {
    const Tree& tr = trees[p];
    Rooted r = analyze(tr.vertices, tr.parent, ctx.mu);
    const uint64_t mu_t = r.sub.at(tr.root);
    const auto pid = static_cast<uint32_t>(p);
    for (VertexId v : tr.vertices) {
      if (sub_out.value[v][pid] != r.sub.at(v))
        throw SimError("sep: subtree aggregation disagrees with recomputation");
      if (tot_out.value[v][pid] != mu_t)
        throw SimError("sep: part aggregation disagrees with recomputation");
      bool ok = r.sub.at(v) * 2 >= mu_t;
      if (ok) {
        auto it = r.children.find(v);
        if (it != r.children.end())
          for (VertexId u : it->second)
            if (r.sub.at(u) * 2 > mu_t) {
              ok = false;
              break;
            }
      }
      cand[v][pid] = ok ? 1 : 0;
    }
    analyzed.push_back(std::move(r));
  }

  auto elect = dist::sle(g, col, cand, ctx.max_rounds);
  ctx.stats += elect.stats;

  // Split every tree; the elected center must match the one the pure
  // procedure picks (both take the smallest qualifying id).
  std::vector<SplitOut> outs;
  outs.reserve(trees.size());
  PerPart<uint64_t> cin(g.n);
  for (size_t p = 0; p < trees.size(); ++p) {
    const auto pid = static_cast<uint32_t>(p);
    SplitOut so =
        split(trees[p].vertices, trees[p].parent, ctx.mu, ctx.mu_g, t, ctx.cfg);
    if (so.center != elect.leader[trees[p].root][pid])
      throw SimError("sep: elected center disagrees with split");
    for (VertexId v : trees[p].vertices)
      cin[v][pid] = v == so.center ? 1 : 0;
    outs.push_back(std::move(so));
  }

  // Rerooting: aggregate an indicator of the center over the old tree; a
  // node's new parent is the child whose subtree contains the center, or
  // the old parent when no child does.
  auto flip = dist::sta(g, col, AggOp::Sum, 1, cin, par, ctx.max_rounds);
  ctx.stats += flip.stats;
  for (size_t p = 0; p < trees.size(); ++p) {
    const auto pid = static_cast<uint32_t>(p);
    std::set<VertexId> on_path;
    for (VertexId v = outs[p].center;; v = trees[p].parent.at(v)) {
      on_path.insert(v);
      if (trees[p].parent.at(v) == v) break;
    }
    for (VertexId v : trees[p].vertices)
      if (flip.value[v][pid] != (on_path.count(v) ? 1u : 0u))
        throw SimError("sep: reroot indicator disagrees with recomputation");
  }

  // Profile propagation: each child subtree of a center learns, from its
  // own root, which piece it belongs to (piece root, max child, measure,
  // and whether the piece returns to the working set). The child subtrees
  // are pairwise disjoint, so they form one valid collection even though
  // pieces may share the center.
  const uint32_t bits_v = bits_for(g.n > 0 ? g.n - 1 : 0);
  const uint32_t bits_m = bits_for(ctx.mu_g);
  std::vector<std::vector<VertexId>> sub_parts;
  PerPart<std::vector<uint64_t>> items(g.n);
  for (size_t p = 0; p < trees.size(); ++p) {
    const VertexId c = outs[p].center;
    std::map<VertexId, VertexId> par2 = reroot(trees[p].parent, c);
    Rooted re = analyze(trees[p].vertices, par2, ctx.mu);
    auto it = re.children.find(c);
    if (it == re.children.end()) continue;
    // Map each child of the center to its piece.
    std::map<VertexId, const SplitPiece*> piece_of;
    for (const SplitPiece& piece : outs[p].pieces) {
      if (piece.root != c) {
        piece_of[piece.root] = &piece;
      } else {
        for (const auto& [v, q] : piece.parent)
          if (q == c && v != c) piece_of[v] = &piece;
      }
    }
    for (VertexId u : it->second) {
      sub_parts.push_back(subtree_vertices(re, u));
      const SplitPiece* piece = piece_of.at(u);
      Packer pk;
      pk.put(piece->root, bits_v);
      pk.put(piece->max_child, bits_v);
      pk.put(piece->mu, bits_m);
      pk.put(piece->to_working ? 1 : 0, 1);
      items[u][static_cast<uint32_t>(sub_parts.size() - 1)] = {pk.word};
    }
  }
  if (!sub_parts.empty()) {
    Collection col2 = induced_collection(g, sub_parts);
    auto b = dist::bct(g, col2, 1, 2 * bits_v + bits_m + 1, items, ctx.max_rounds);
    ctx.stats += b.stats;
  }

  for (size_t p = 0; p < trees.size(); ++p) {
    for (SplitPiece& piece : outs[p].pieces) {
      if (piece.to_working) {
        working.push_back(
            Tree{piece.root, std::move(piece.vertices), std::move(piece.parent)});
      } else {
        finished->push_back(
            TreeRec{SplitTreeProfile{iteration, piece.root, piece.max_child,
                                     piece.mu},
                    std::move(piece.vertices)});
      }
    }
  }
}

// Component scan of `part` minus `removed`, realized as component
// detection over the indicated (surviving) edges, a part aggregation per
// component for its measure, and a max-aggregation over the whole part for
// the verdict. Returns every component, the heaviest one (ties to the
// smaller component id), and whether all components meet the balance
// target.
struct CompScan {
  std::map<VertexId, std::vector<VertexId>> comps;
  uint64_t max_mu = 0;
  VertexId heaviest = 0;
  bool balanced = false;
};

CompScan scan_removed(SepCtx& ctx, const std::vector<VertexId>& part,
                      const std::set<VertexId>& removed) {
  const CommGraph& g = ctx.g;
  std::set<VertexId> in_part(part.begin(), part.end());
  Collection col = induced_collection(g, {part});
  PerPart<std::vector<VertexId>> ind(g.n);
  for (VertexId v : part) {
    ind[v][0];
    if (removed.count(v)) continue;
    for (VertexId w : g.adj[v])
      if (in_part.count(w) && !removed.count(w)) ind[v][0].push_back(w);
  }
  auto cc = dist::ccd(g, col, ind, ctx.max_rounds);
  ctx.stats += cc.stats;

  CompScan out;
  for (VertexId v : part)
    if (!removed.count(v)) out.comps[cc.component[v][0]].push_back(v);

  if (!out.comps.empty()) {
    std::vector<std::vector<VertexId>> comp_parts;
    comp_parts.reserve(out.comps.size());
    for (const auto& [cid, vs] : out.comps) comp_parts.push_back(vs);
    Collection colc = induced_collection(g, comp_parts);
    PerPart<uint64_t> xin = x_inputs(ctx, colc);
    auto sums = dist::pa(g, colc, AggOp::Sum, 1, xin, ctx.max_rounds);
    ctx.stats += sums.stats;

    PerPart<uint64_t> min(g.n);
    uint32_t cidx = 0;
    const uint32_t width = bits_for(ctx.g.n);
    for (const auto& [cid, vs] : out.comps) {
      const uint64_t host_mu = ctx.mu.mu(vs);
      for (VertexId v : vs) {
        if (sums.value[v][cidx] != host_mu)
          throw SimError("sep: component measure disagrees with recomputation");
        min[v][0] = host_mu;
      }
      if (host_mu > out.max_mu) {
        out.max_mu = host_mu;
        out.heaviest = cid;
      }
      ++cidx;
    }
    for (VertexId v : part)
      if (removed.count(v)) min[v][0] = 0;
    auto peak = dist::pa(g, col, AggOp::Max, width, min, ctx.max_rounds);
    ctx.stats += peak.stats;
    if (peak.value[part.front()][0] != out.max_mu)
      throw SimError("sep: maximum component measure disagrees");
  }
  out.balanced = out.max_mu * ctx.cfg.alpha_den <= ctx.cfg.alpha_num * ctx.mu_g;
  return out;
}

// Full separator construction over one connected vertex subset of g. The
// caller guarantees the induced subgraph is connected and xs is a sorted
// subset of the (sorted) universe.
SepResult sep_on_universe(const CommGraph& g, std::vector<VertexId> universe,
                          std::vector<VertexId> xs, const SepConfig& cfg,
                          uint64_t seed, uint64_t max_rounds) {
  SepCtx ctx{g,
             cfg,
             std::move(universe),
             std::move(xs),
             WeightedMeasure(g.n),
             0,
             max_rounds,
             RunStats{}};
  for (VertexId v : ctx.xs) ctx.mu.in_x[v] = true;

  // Total measure, known to every node after one part aggregation.
  Collection col_u = induced_collection(g, {ctx.universe});
  {
    PerPart<uint64_t> xin = x_inputs(ctx, col_u);
    auto total = dist::pa(g, col_u, AggOp::Sum, 1, xin, ctx.max_rounds);
    ctx.stats += total.stats;
    ctx.mu_g = total.value[ctx.universe.front()][0];
    if (ctx.mu_g != ctx.xs.size())
      throw SimError("sep: total measure disagrees with recomputation");
  }

  const uint64_t trials_per_t =
      std::max<uint64_t>(1, static_cast<uint64_t>(cfg.trials) *
                                bits_for(ctx.universe.size() - 1));
  const uint32_t bits_v = bits_for(g.n > 0 ? g.n - 1 : 0);

  std::vector<VertexId> sep_out;
  uint32_t terminal = 0;
  bool done = false;

  for (uint64_t t = 2; !done; t *= 2) {
    // Step 1: when the whole measure already fits the size budget, the
    // measured set itself is a (trivially balanced) separator.
    if (ctx.mu_g <= cfg.base_cutoff * t * t) {
      sep_out = ctx.xs;
      terminal = static_cast<uint32_t>(t);
      break;
    }

    const uint64_t t_hat =
        t + ceil_div(t * (cfg.iter_num - cfg.iter_den), cfg.iter_den);

    // Steps 2-3 are deterministic for a fixed t (smallest-id elections,
    // ascending child orderings), so they run once; only the cut sampling
    // of step 4 differs between trials.
    std::vector<TreeRec> trees;
    std::set<VertexId> r_star;
    std::vector<VertexId> g_cur = ctx.universe;
    for (uint32_t i = 1; i <= t_hat && !done; ++i) {
      auto wave = dist::rst(g, induced_collection(g, {g_cur}), ctx.max_rounds);
      ctx.stats += wave.stats;
      Tree tstar;
      tstar.root = wave.leader[g_cur.front()][0];
      tstar.vertices = g_cur;
      for (VertexId v : g_cur) tstar.parent[v] = wave.parent[v][0];

      const size_t first = trees.size();
      std::deque<Tree> working{std::move(tstar)};
      while (!working.empty())
        split_invocation(ctx, working, static_cast<uint32_t>(t), i, &trees);

      std::set<VertexId> r_i;
      for (size_t k = first; k < trees.size(); ++k)
        r_i.insert(trees[k].profile.root);
      r_star.insert(r_i.begin(), r_i.end());

      CompScan scan = scan_removed(ctx, g_cur, r_i);
      if (scan.balanced) {
        sep_out.assign(r_star.begin(), r_star.end());
        terminal = static_cast<uint32_t>(t);
        done = true;
      } else {
        g_cur = scan.comps.at(scan.heaviest);
      }
    }
    if (done) break;

    // Step 4: elect a coordinator, gather every finished tree's profile to
    // it, then repeatedly sample tree pairs, extract small vertex cuts
    // between the sampled pairs, and test the union for balance.
    {
      auto lead = dist::rst(g, col_u, ctx.max_rounds);
      ctx.stats += lead.stats;
      const VertexId leader = lead.leader[ctx.universe.front()][0];

      const uint32_t bits_i = bits_for(t_hat);
      const uint32_t bits_m = bits_for(ctx.mu_g);
      PerPart<std::vector<uint64_t>> profile_items(g.n);
      for (VertexId v : ctx.universe) profile_items[v][0];
      for (const TreeRec& rec : trees) {
        Packer pk;
        pk.put(rec.profile.iteration, bits_i);
        pk.put(rec.profile.root, bits_v);
        pk.put(rec.profile.max_child, bits_v);
        pk.put(rec.profile.mu, bits_m);
        profile_items[rec.profile.root][0].push_back(pk.word);
      }
      auto gather = dist::bct(g, col_u, static_cast<uint32_t>(trees.size()),
                              bits_i + 2 * bits_v + bits_m, profile_items,
                              ctx.max_rounds);
      ctx.stats += gather.stats;
      if (gather.items[leader][0].size() != trees.size())
        throw SimError("sep: profile gather lost items");

      std::map<uint32_t, std::vector<size_t>> by_iter;
      for (size_t k = 0; k < trees.size(); ++k)
        by_iter[trees[k].profile.iteration].push_back(k);

      for (uint64_t trial = 0; trial < trials_per_t && !done; ++trial) {
        SplitMix64 rng(mix_seed(seed, (t << 32) | trial));
        std::vector<std::pair<size_t, size_t>> kept;
        for (uint32_t i = 1; i <= t_hat; ++i) {
          auto it = by_iter.find(i);
          if (it == by_iter.end()) continue;
          const auto& pool = it->second;
          for (uint32_t s = 0; s < cfg.pair_samples; ++s) {
            size_t a = pool[rng.below(pool.size())];
            size_t b = pool[rng.below(pool.size())];
            // Trees sharing a root share exactly that vertex, so no
            // disjoint cut exists; such pairs (the diagonal included)
            // contribute nothing.
            if (trees[a].profile.root == trees[b].profile.root) continue;
            std::vector<VertexId> inter;
            std::set_intersection(trees[a].vertices.begin(),
                                  trees[a].vertices.end(),
                                  trees[b].vertices.begin(),
                                  trees[b].vertices.end(),
                                  std::back_inserter(inter));
            if (!inter.empty())
              throw SimError("sep: distinct-root trees overlap");
            kept.emplace_back(a, b);
          }
        }

        std::set<VertexId> z;
        if (!kept.empty()) {
          PerPart<std::vector<uint64_t>> pair_items(g.n);
          for (VertexId v : ctx.universe) pair_items[v][0];
          for (const auto& [a, b] : kept) {
            Packer pk;
            pk.put(trees[a].profile.iteration, bits_i);
            pk.put(trees[a].profile.root, bits_v);
            pk.put(trees[a].profile.max_child, bits_v);
            pk.put(trees[b].profile.root, bits_v);
            pk.put(trees[b].profile.max_child, bits_v);
            pair_items[leader][0].push_back(pk.word);
          }
          auto announce = dist::bct(g, col_u, static_cast<uint32_t>(kept.size()),
                                    bits_i + 4 * bits_v, pair_items,
                                    ctx.max_rounds);
          ctx.stats += announce.stats;

          std::map<uint32_t, std::vector<MvcPair>> mvc_pairs;
          for (const auto& [a, b] : kept)
            mvc_pairs[0].emplace_back(trees[a].vertices, trees[b].vertices);
          auto cuts = dist::mvc(g, col_u, mvc_pairs, static_cast<uint32_t>(t),
                                ctx.max_rounds);
          ctx.stats += cuts.stats;
          for (const auto& res : cuts.result.at(0))
            if (res.cut_size >= 0) z.insert(res.cut.begin(), res.cut.end());
        }

        CompScan scan = scan_removed(ctx, ctx.universe, z);
        if (scan.balanced) {
          sep_out.assign(z.begin(), z.end());
          terminal = static_cast<uint32_t>(t);
          done = true;
        }
      }
    }
  }

  // Output validation, run unconditionally: exact balance via the
  // centralized component oracle, and the size budget for the terminal t.
  {
    MultiGraph mg;
    mg.n = g.n;
    mg.directed = false;
    std::vector<char> in_u(g.n, 0);
    for (VertexId v : ctx.universe) in_u[v] = 1;
    EdgeId next_id = 0;
    for (VertexId v : ctx.universe)
      for (VertexId w : g.adj[v])
        if (w > v && in_u[w]) mg.add_edge(next_id++, v, w, 1);
    std::set<VertexId> xset(ctx.xs.begin(), ctx.xs.end());
    if (!oracle_balance(mg, sep_out, xset, cfg.alpha_num, cfg.alpha_den))
      throw SimError("sep: output fails the balance oracle");
    const uint64_t tt = static_cast<uint64_t>(terminal);
    if (sep_out.size() * 2 > cfg.size_bound_mult * tt * tt)
      throw SimError("sep: output exceeds the size bound");
  }
  return SepResult{std::move(sep_out), terminal, ctx.stats};
}

// Sorts, deduplicates, and bounds-checks a vertex list.
std::vector<VertexId> normalize(const std::vector<VertexId>& vs, uint32_t n,
                                const char* what) {
  std::vector<VertexId> out = vs;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (VertexId v : out)
    if (v >= n) throw InvalidInput(std::string(what) + ": vertex out of range");
  return out;
}

}  // namespace

SepResult find_balanced_separator(const CommGraph& g,
                                  const std::vector<VertexId>& x,
                                  const SepConfig& cfg, uint64_t seed,
                                  uint64_t max_rounds) {
  cfg.validate();
  if (g.n == 0) throw InvalidInput("separator: empty graph");
  if (!g.connected()) throw Disconnected("separator: graph is not connected");
  std::vector<VertexId> xs = normalize(x, g.n, "separator");
  std::vector<VertexId> universe(g.n);
  for (VertexId v = 0; v < g.n; ++v) universe[v] = v;
  // Seed derivation matches part 0 of parallel_separators, so running the
  // whole graph as a single part gives bit-identical output.
  return sep_on_universe(g, std::move(universe), std::move(xs), cfg,
                         mix_seed(seed, 0), max_rounds);
}

ParallelSepOut parallel_separators(const CommGraph& g,
                                   const std::vector<std::vector<VertexId>>& parts,
                                   const std::vector<std::vector<VertexId>>& x_sets,
                                   const SepConfig& cfg, uint64_t seed,
                                   uint64_t max_rounds) {
  cfg.validate();
  if (parts.size() != x_sets.size())
    throw InvalidInput("separator: one X set per part required");
  std::vector<std::vector<VertexId>> norm;
  std::vector<char> seen(g.n, 0);
  for (const auto& part : parts) {
    std::vector<VertexId> p = normalize(part, g.n, "separator");
    if (p.empty()) throw InvalidInput("separator: empty part");
    for (VertexId v : p) {
      if (seen[v]) throw InvalidInput("separator: parts share a vertex");
      seen[v] = 1;
    }
    // Induced connectivity check.
    std::set<VertexId> in_p(p.begin(), p.end());
    std::vector<VertexId> stack{p.front()};
    std::set<VertexId> vis{p.front()};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId w : g.adj[v])
        if (in_p.count(w) && vis.insert(w).second) stack.push_back(w);
    }
    if (vis.size() != p.size())
      throw Disconnected("separator: part is not connected");
    norm.push_back(std::move(p));
  }

  ParallelSepOut out;
  for (size_t i = 0; i < norm.size(); ++i) {
    std::vector<VertexId> xs = normalize(x_sets[i], g.n, "separator");
    for (VertexId v : xs)
      if (!std::binary_search(norm[i].begin(), norm[i].end(), v))
        throw InvalidInput("separator: X set leaves its part");
    SepResult r = sep_on_universe(g, norm[i], std::move(xs), cfg,
                                  mix_seed(seed, i), max_rounds);
    // Vertex-disjoint parts share no edges, so the per-part executions
    // never compete for bandwidth: running them side by side costs the
    // rounds of the slowest part while traffic adds up.
    out.stats.rounds = std::max(out.stats.rounds, r.stats.rounds);
    out.stats.messages_sent += r.stats.messages_sent;
    out.stats.max_message_bits =
        std::max(out.stats.max_message_bits, r.stats.max_message_bits);
    out.stats.bandwidth_bits =
        std::max(out.stats.bandwidth_bits, r.stats.bandwidth_bits);
    out.stats.overhead_factor =
        std::max(out.stats.overhead_factor, r.stats.overhead_factor);
    for (const auto& [label, rounds] : r.stats.per_algorithm_rounds) {
      uint64_t& slot = out.stats.per_algorithm_rounds[label];
      slot = std::max(slot, rounds);
    }
    out.results.push_back(std::move(r));
  }
  return out;
}

}  // namespace lowtw::sep
