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

#include <coroutine>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/multigraph.hpp"
#include "core/types.hpp"
#include "sim/bits.hpp"

namespace lowtw::sim {

// Synchronous message-passing simulator. Every node runs one coroutine; a
// round delivers at most one bounded-size physical message per directed edge.
// Node programs express per-round state machines by suspending at the round
// gates below; local computation between suspensions is unrestricted.

class Ctx;
namespace detail {
class Engine;
struct NodeState;
}  // namespace detail

// Coroutine task for node programs and their subroutines. Awaiting a task
// runs it to completion (it may suspend at round gates many times) and then
// resumes the awaiter, propagating exceptions.
class NodeTask {
 public:
  struct promise_type {
    std::coroutine_handle<> continuation = std::noop_coroutine();
    std::exception_ptr exception;

    NodeTask get_return_object() {
      return NodeTask(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    struct FinalAwaiter {
      bool await_ready() const noexcept { return false; }
      std::coroutine_handle<> await_suspend(
          std::coroutine_handle<promise_type> h) const noexcept {
        return h.promise().continuation;
      }
      void await_resume() const noexcept {}
    };
    FinalAwaiter final_suspend() noexcept { return {}; }
    void return_void() {}
    void unhandled_exception() { exception = std::current_exception(); }
  };
  using Handle = std::coroutine_handle<promise_type>;

  NodeTask() = default;
  explicit NodeTask(Handle h) : h_(h) {}
  NodeTask(NodeTask&& other) noexcept : h_(std::exchange(other.h_, {})) {}
  NodeTask& operator=(NodeTask&& other) noexcept {
    if (h_) h_.destroy();
    h_ = std::exchange(other.h_, {});
    return *this;
  }
  NodeTask(const NodeTask&) = delete;
  NodeTask& operator=(const NodeTask&) = delete;
  ~NodeTask() {
    if (h_) h_.destroy();
  }

  struct SubtaskAwaiter {
    Handle h;
    bool await_ready() const noexcept { return false; }
    std::coroutine_handle<> await_suspend(std::coroutine_handle<> parent) const noexcept {
      h.promise().continuation = parent;
      return h;
    }
    void await_resume() const {
      if (h.promise().exception) std::rethrow_exception(h.promise().exception);
    }
  };
  SubtaskAwaiter operator co_await() && noexcept { return SubtaskAwaiter{h_}; }

  Handle handle() const { return h_; }

 private:
  Handle h_;
};

// Result of Ctx::idle(): either at least one message arrived this round, or
// the instance went quiet (no node of this instance can be woken by a message
// that is queued, in flight, or pending: every live node is blocked and all
// channels are empty).
struct Event {
  bool quiet = false;
};

struct RoundAwaiter {
  detail::NodeState* node;
  bool await_ready() const noexcept { return false; }
  void await_suspend(std::coroutine_handle<> h) const;
  void await_resume() const noexcept {}
};

struct IdleAwaiter {
  detail::NodeState* node;
  bool await_ready() const noexcept { return false; }
  void await_suspend(std::coroutine_handle<> h) const;
  Event await_resume() const noexcept;
};

struct BarrierAwaiter {
  detail::NodeState* node;
  bool await_ready() const noexcept { return false; }
  void await_suspend(std::coroutine_handle<> h) const;
  void await_resume() const noexcept {}
};

// Per-node view of the network handed to a node program. Valid only while
// the owning run is executing.
class Ctx {
 public:
  VertexId id() const;
  uint32_t n() const;
  // Neighbors in the communication graph, ascending.
  const std::vector<VertexId>& neighbors() const;
  bool has_neighbor(VertexId v) const;
  // Logical round number of this node's instance; the initial activation
  // runs in round 0.
  uint64_t round() const;
  // Bits per edge direction per round.
  uint32_t bandwidth() const;
  // Payload bits still available for one more message to `neighbor` in the
  // current round (framing overhead already subtracted).
  uint32_t budget(VertexId neighbor) const;
  // Queues a message to a neighbor; it is delivered at the start of the
  // receiver's next logical round. All messages queued to one neighbor in one
  // round share that round's bandwidth. Throws MisaddressedMessage if
  // `neighbor` is not adjacent, BandwidthExceeded if over budget.
  void send(VertexId neighbor, Bits payload);
  // Messages delivered at the start of the current logical round, sorted by
  // sender (per-sender send order preserved).
  const std::vector<std::pair<VertexId, Bits>>& inbox() const;

  // Suspends until the next round. The node wakes unconditionally.
  RoundAwaiter next_round() { return RoundAwaiter{node_}; }
  // Suspends until a message arrives (Event{quiet=false}) or the whole
  // instance is quiet (Event{quiet=true}).
  IdleAwaiter idle() { return IdleAwaiter{node_}; }
  // Suspends until every live node of the instance is at a barrier and no
  // message is queued or in flight anywhere in the instance.
  BarrierAwaiter barrier() { return BarrierAwaiter{node_}; }

 private:
  friend class detail::Engine;
  friend struct detail::NodeState;
  detail::NodeState* node_ = nullptr;
};

using NodeProgram = std::function<NodeTask(Ctx&)>;

struct RunStats {
  // Physical communication rounds consumed (a run whose nodes all halt
  // during their initial activation consumes 0).
  uint64_t rounds = 0;
  // Physical point-to-point transmissions (one per edge direction per round
  // at most).
  uint64_t messages_sent = 0;
  // Largest physical message observed, in bits (framing included).
  uint32_t max_message_bits = 0;
  // Bandwidth bound in force, in bits.
  uint32_t bandwidth_bits = 0;
  // Physical rounds divided by the largest logical round count; exceeds 1
  // only when logical channels are multiplexed over shared physical edges.
  double overhead_factor = 1.0;
  // Logical rounds per instance label.
  std::map<std::string, uint64_t> per_algorithm_rounds;

  bool operator==(const RunStats&) const = default;
  RunStats& operator+=(const RunStats& other);
};

struct Instance {
  std::string label;
  NodeProgram program;
};

inline constexpr uint32_t kDefaultBandwidthFactor = 32;

// Bandwidth in bits for an n-node network: factor * ceil(log2 n).
uint32_t bandwidth_bits_for(uint32_t n, uint32_t bandwidth_factor);

// Runs one program instance on every vertex of `comm` until all halt.
// Throws RoundLimitExceeded if any node is still live after `max_rounds`
// physical rounds.
RunStats run(const CommGraph& comm, const NodeProgram& program, uint64_t max_rounds,
             uint32_t bandwidth_factor = kDefaultBandwidthFactor,
             const std::string& label = "main");

// Runs several independent instances concurrently over one physical network.
// Each instance keeps its synchronous logical round structure; messages of
// distinct instances crossing the same directed edge are serialized one per
// physical round, deterministically.
RunStats run_multiplexed(const CommGraph& comm, const std::vector<Instance>& instances,
                         uint64_t max_rounds,
                         uint32_t bandwidth_factor = kDefaultBandwidthFactor);

// A logical network realized on a physical one: logical vertex a lives at
// physical vertex to_physical[a]. Logical edges between co-located vertices
// cost no physical traffic; all other logical edges must map to physical
// edges.
struct Projection {
  CommGraph logical;
  std::vector<VertexId> to_physical;
  const CommGraph* physical = nullptr;
};

// Runs a program on the logical network of `proj`, serializing the logical
// traffic through the physical edges. The program observes exactly the same
// network as `run` on the materialized logical graph would show it; only the
// physical accounting (rounds, messages, overhead_factor) differs.
RunStats run_projected(const Projection& proj, const NodeProgram& program,
                       uint64_t max_rounds,
                       uint32_t bandwidth_factor = kDefaultBandwidthFactor,
                       const std::string& label = "main");

}  // namespace lowtw::sim
