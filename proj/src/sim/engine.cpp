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

#include "sim/engine.hpp"

#include <algorithm>
#include <deque>
#include <memory>

namespace lowtw::sim {
namespace detail {

enum class Wait { Running, NextRound, Idle, Barrier, Done };

struct OutBundle {
  std::vector<Bits> parts;
  uint32_t bits = 0;
};

struct NodeState {
  Engine* engine = nullptr;
  uint32_t instance = 0;
  VertexId v = 0;
  Wait wait = Wait::Running;
  std::coroutine_handle<> resume_point;
  NodeTask task;
  Ctx ctx;
  std::vector<std::pair<VertexId, Bits>> inbox;
  std::vector<std::pair<VertexId, Bits>> staged;
  std::map<VertexId, OutBundle> outgoing;
  bool quiet_wake = false;
};

struct InstanceState {
  std::string label;
  const NodeProgram* program = nullptr;
  std::vector<std::unique_ptr<NodeState>> nodes;
  uint64_t tick = 0;
  uint64_t outstanding = 0;
  uint32_t live = 0;
};

// One physical transmission: the bundle of messages one logical vertex sent
// to one logical neighbor within one logical round.
struct Flight {
  uint32_t instance;
  VertexId from;
  VertexId to;
  std::vector<Bits> parts;
  uint32_t bits;
};

class Engine {
 public:
  Engine(const CommGraph& logical, const std::vector<VertexId>* to_physical,
         const CommGraph* physical, uint64_t max_rounds, uint32_t bandwidth_factor)
      : logical_(logical),
        to_physical_(to_physical),
        max_rounds_(max_rounds),
        bandwidth_(bandwidth_bits_for(logical.n, bandwidth_factor)),
        prefix_width_(bits_for(bandwidth_)) {
    if (to_physical_) {
      if (physical == nullptr) throw InvalidInput("projection lacks a physical graph");
      if (to_physical_->size() != logical_.n)
        throw InvalidInput("projection size does not match logical vertex count");
      for (VertexId a = 0; a < logical_.n; ++a) {
        VertexId pa = (*to_physical_)[a];
        if (pa >= physical->n) throw InvalidInput("projection target out of range");
        for (VertexId b : logical_.adj[a]) {
          VertexId pb = (*to_physical_)[b];
          if (pa != pb && !physical->has_edge(pa, pb))
            throw InvalidInput("logical edge does not map to a physical edge");
        }
      }
    }
  }

  void add_instance(const std::string& label, const NodeProgram& program) {
    auto inst = std::make_unique<InstanceState>();
    inst->label = label;
    inst->program = &program;
    instances_.push_back(std::move(inst));
  }

  RunStats execute() {
    stats_.bandwidth_bits = bandwidth_;
    // Round 0: activate every node of every instance.
    for (uint32_t ii = 0; ii < instances_.size(); ++ii) {
      InstanceState& inst = *instances_[ii];
      inst.nodes.reserve(logical_.n);
      for (VertexId v = 0; v < logical_.n; ++v) {
        auto node = std::make_unique<NodeState>();
        node->engine = this;
        node->instance = ii;
        node->v = v;
        node->ctx.node_ = node.get();
        inst.nodes.push_back(std::move(node));
        inst.live += 1;
      }
      for (VertexId v = 0; v < logical_.n; ++v) {
        NodeState& node = *inst.nodes[v];
        node.task = (*inst.program)(node.ctx);
        node.resume_point = node.task.handle();
        resume(node);
      }
    }

    uint64_t round_index = 0;
    while (live_total() > 0) {
      round_index += 1;
      if (round_index > max_rounds_)
        throw RoundLimitExceeded("round limit " + std::to_string(max_rounds_) +
                                 " reached with live nodes remaining");
      bool activity = false;

      // Transport: each directed physical edge delivers one queued bundle.
      for (auto& [edge, queue] : fifos_) {
        if (queue.empty()) continue;
        Flight flight = std::move(queue.front());
        queue.pop_front();
        activity = true;
        stats_.messages_sent += 1;
        stats_.max_message_bits = std::max(stats_.max_message_bits, flight.bits);
        InstanceState& inst = *instances_[flight.instance];
        inst.outstanding -= 1;
        NodeState& target = *inst.nodes[flight.to];
        if (target.wait != Wait::Done)
          for (Bits& part : flight.parts)
            target.staged.emplace_back(flight.from, std::move(part));
      }

      // Logical rounds: an instance advances once the whole previous batch
      // has been delivered, so nodes always observe complete rounds.
      for (auto& inst_ptr : instances_) {
        InstanceState& inst = *inst_ptr;
        if (inst.live == 0 || inst.outstanding > 0) continue;
        bool has_next = false, has_mail = false, has_idle = false;
        for (auto& node : inst.nodes) {
          if (node->wait == Wait::NextRound) has_next = true;
          if (node->wait == Wait::Idle) {
            has_idle = true;
            if (!node->staged.empty()) has_mail = true;
          }
        }
        if (has_next || has_mail) {
          advance(inst, /*wake_idle_all=*/false, /*quiet=*/false, /*release_barrier=*/false);
          activity = true;
        } else if (has_idle) {
          // Quiet: nothing queued, staged, or outstanding anywhere in the
          // instance can ever wake an idle node again without intervention.
          advance(inst, /*wake_idle_all=*/true, /*quiet=*/true, /*release_barrier=*/false);
          activity = true;
        } else {
          // All live nodes are at the barrier and nothing is in flight.
          advance(inst, /*wake_idle_all=*/false, /*quiet=*/false, /*release_barrier=*/true);
          activity = true;
        }
      }

      if (!activity) throw SimError("simulation stalled with live nodes");
      stats_.rounds = round_index;
    }

    uint64_t max_tick = 0;
    for (auto& inst : instances_) {
      auto [it, inserted] = stats_.per_algorithm_rounds.try_emplace(inst->label, inst->tick);
      if (!inserted) it->second = std::max(it->second, inst->tick);
      max_tick = std::max(max_tick, inst->tick);
    }
    stats_.overhead_factor =
        max_tick == 0 ? 1.0
                      : static_cast<double>(stats_.rounds) / static_cast<double>(max_tick);
    return stats_;
  }

  // --- called from Ctx and the awaiters ---

  void send(NodeState& node, VertexId neighbor, Bits payload) {
    const auto& adj = logical_.adj[node.v];
    if (!std::binary_search(adj.begin(), adj.end(), neighbor))
      throw MisaddressedMessage("vertex " + std::to_string(node.v) +
                                " sent to non-neighbor " + std::to_string(neighbor));
    OutBundle& bundle = node.outgoing[neighbor];
    uint64_t cost = static_cast<uint64_t>(prefix_width_) + payload.count;
    if (bundle.bits + cost > bandwidth_)
      throw BandwidthExceeded("edge bandwidth " + std::to_string(bandwidth_) +
                              " bits exceeded from vertex " + std::to_string(node.v) +
                              " toward " + std::to_string(neighbor));
    bundle.bits += static_cast<uint32_t>(cost);
    bundle.parts.push_back(std::move(payload));
  }

  uint32_t budget(const NodeState& node, VertexId neighbor) const {
    uint32_t used = 0;
    auto it = node.outgoing.find(neighbor);
    if (it != node.outgoing.end()) used = it->second.bits;
    uint32_t reserve = used + prefix_width_;
    return reserve >= bandwidth_ ? 0 : bandwidth_ - reserve;
  }

  void suspend(NodeState& node, std::coroutine_handle<> h, Wait wait) {
    node.resume_point = h;
    node.wait = wait;
    flush(node);
  }

  const CommGraph& logical() const { return logical_; }
  uint32_t bandwidth() const { return bandwidth_; }
  uint64_t tick_of(const NodeState& node) const { return instances_[node.instance]->tick; }

 private:
  uint32_t live_total() const {
    uint32_t total = 0;
    for (const auto& inst : instances_) total += inst->live;
    return total;
  }

  // Moves a node's queued outbound bundles into the transport. Bundles
  // between co-located vertices skip the physical network entirely.
  void flush(NodeState& node) {
    InstanceState& inst = *instances_[node.instance];
    for (auto& [target, bundle] : node.outgoing) {
      VertexId pf = to_physical_ ? (*to_physical_)[node.v] : node.v;
      VertexId pt = to_physical_ ? (*to_physical_)[target] : target;
      if (pf == pt) {
        NodeState& local = *inst.nodes[target];
        if (local.wait != Wait::Done)
          for (Bits& part : bundle.parts) local.staged.emplace_back(node.v, std::move(part));
      } else {
        fifos_[{pf, pt}].push_back(Flight{node.instance, node.v, target,
                                          std::move(bundle.parts), bundle.bits});
        inst.outstanding += 1;
      }
    }
    node.outgoing.clear();
  }

  // Advances one logical round. The wake set and every woken node's inbox
  // are fixed before any node runs, so messages sent during this round can
  // only be observed in a later round.
  void advance(InstanceState& inst, bool wake_idle_all, bool quiet, bool release_barrier) {
    inst.tick += 1;
    std::vector<NodeState*> wake_set;
    for (auto& node : inst.nodes) {
      bool is_idle = node->wait == Wait::Idle;
      bool eligible = node->wait == Wait::NextRound ||
                      (is_idle && (wake_idle_all || !node->staged.empty())) ||
                      (node->wait == Wait::Barrier && release_barrier);
      if (!eligible) continue;
      node->inbox.clear();
      std::stable_sort(node->staged.begin(), node->staged.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      node->inbox.swap(node->staged);
      node->quiet_wake = quiet && is_idle;
      wake_set.push_back(node.get());
    }
    for (NodeState* node : wake_set) resume(*node);
  }

  void resume(NodeState& node) {
    node.wait = Wait::Running;
    node.resume_point.resume();
    NodeTask::Handle top = node.task.handle();
    if (top.done()) {
      if (top.promise().exception) std::rethrow_exception(top.promise().exception);
      flush(node);
      node.wait = Wait::Done;
      instances_[node.instance]->live -= 1;
    } else if (node.wait == Wait::Running) {
      throw SimError("node program suspended outside a round gate");
    }
  }

  const CommGraph& logical_;
  const std::vector<VertexId>* to_physical_;
  uint64_t max_rounds_;
  uint32_t bandwidth_;
  uint32_t prefix_width_;
  std::vector<std::unique_ptr<InstanceState>> instances_;
  std::map<std::pair<VertexId, VertexId>, std::deque<Flight>> fifos_;
  RunStats stats_;
};

}  // namespace detail

void RoundAwaiter::await_suspend(std::coroutine_handle<> h) const {
  node->engine->suspend(*node, h, detail::Wait::NextRound);
}

void IdleAwaiter::await_suspend(std::coroutine_handle<> h) const {
  node->engine->suspend(*node, h, detail::Wait::Idle);
}

Event IdleAwaiter::await_resume() const noexcept { return Event{node->quiet_wake}; }

void BarrierAwaiter::await_suspend(std::coroutine_handle<> h) const {
  node->engine->suspend(*node, h, detail::Wait::Barrier);
}

VertexId Ctx::id() const { return node_->v; }
uint32_t Ctx::n() const { return node_->engine->logical().n; }
const std::vector<VertexId>& Ctx::neighbors() const {
  return node_->engine->logical().adj[node_->v];
}
bool Ctx::has_neighbor(VertexId v) const {
  const auto& adj = neighbors();
  return std::binary_search(adj.begin(), adj.end(), v);
}
uint64_t Ctx::round() const { return node_->engine->tick_of(*node_); }
uint32_t Ctx::bandwidth() const { return node_->engine->bandwidth(); }
uint32_t Ctx::budget(VertexId neighbor) const { return node_->engine->budget(*node_, neighbor); }
void Ctx::send(VertexId neighbor, Bits payload) {
  node_->engine->send(*node_, neighbor, std::move(payload));
}
const std::vector<std::pair<VertexId, Bits>>& Ctx::inbox() const { return node_->inbox; }

RunStats& RunStats::operator+=(const RunStats& other) {
  rounds += other.rounds;
  messages_sent += other.messages_sent;
  max_message_bits = std::max(max_message_bits, other.max_message_bits);
  bandwidth_bits = std::max(bandwidth_bits, other.bandwidth_bits);
  overhead_factor = std::max(overhead_factor, other.overhead_factor);
  for (const auto& [label, ticks] : other.per_algorithm_rounds)
    per_algorithm_rounds[label] += ticks;
  return *this;
}

uint32_t bandwidth_bits_for(uint32_t n, uint32_t bandwidth_factor) {
  if (n < 2) return 0;
  return bandwidth_factor * bits_for(n - 1);
}

RunStats run(const CommGraph& comm, const NodeProgram& program, uint64_t max_rounds,
             uint32_t bandwidth_factor, const std::string& label) {
  detail::Engine engine(comm, nullptr, nullptr, max_rounds, bandwidth_factor);
  engine.add_instance(label, program);
  return engine.execute();
}

RunStats run_multiplexed(const CommGraph& comm, const std::vector<Instance>& instances,
                         uint64_t max_rounds, uint32_t bandwidth_factor) {
  detail::Engine engine(comm, nullptr, nullptr, max_rounds, bandwidth_factor);
  for (const Instance& inst : instances) engine.add_instance(inst.label, inst.program);
  return engine.execute();
}

RunStats run_projected(const Projection& proj, const NodeProgram& program,
                       uint64_t max_rounds, uint32_t bandwidth_factor,
                       const std::string& label) {
  detail::Engine engine(proj.logical, &proj.to_physical, proj.physical, max_rounds,
                        bandwidth_factor);
  engine.add_instance(label, program);
  return engine.execute();
}

}  // namespace lowtw::sim
