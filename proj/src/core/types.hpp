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
#include <limits>
#include <stdexcept>
#include <string>

namespace lowtw {

using VertexId = uint32_t;
using EdgeId = uint32_t;

// Edge costs and distances. kInf is the reserved "unreachable" value; it is
// absorbing under wadd so distance arithmetic stays closed.
using Weight = uint64_t;
inline constexpr Weight kInf = std::numeric_limits<Weight>::max();

inline Weight wadd(Weight a, Weight b) {
  if (a == kInf || b == kInf) return kInf;
  Weight s = a + b;
  if (s < a) return kInf;
  return s;
}

inline uint32_t bits_for(uint64_t max_value) {
  uint32_t b = 1;
  while (max_value >>= 1) ++b;
  return b;
}

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BandwidthExceeded : SimError {
  using SimError::SimError;
};
struct RoundLimitExceeded : SimError {
  using SimError::SimError;
};
struct MisaddressedMessage : SimError {
  using SimError::SimError;
};
struct InvalidCollection : SimError {
  using SimError::SimError;
};
struct InvalidInput : SimError {
  using SimError::SimError;
};
struct NotATree : SimError {
  using SimError::SimError;
};
struct NoCandidate : SimError {
  using SimError::SimError;
};
struct TooManySources : SimError {
  using SimError::SimError;
};
struct InvalidPair : SimError {
  using SimError::SimError;
};
struct Disconnected : SimError {
  using SimError::SimError;
};
struct InvalidDecomposition : SimError {
  using SimError::SimError;
};
struct DisjointHubSets : SimError {
  using SimError::SimError;
};
struct InvalidState : SimError {
  using SimError::SimError;
};
struct Unreachable : SimError {
  using SimError::SimError;
};
struct NotBipartite : SimError {
  using SimError::SimError;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedConstraint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Portable deterministic RNG helpers. std::uniform_int_distribution is not
// stable across standard library implementations, so all sampling goes
// through these.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform value in [0, n). Rejection-free multiply-shift; bias is below
  // 2^-32 for the n used here, identical on every platform.
  uint64_t below(uint64_t n) { return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64); }
  bool chance(uint64_t num, uint64_t den) { return below(den) < num; }
};

inline uint64_t mix_seed(uint64_t base, uint64_t salt) {
  SplitMix64 r(base ^ (0x6a09e667f3bcc909ull + salt * 0x3c6ef372fe94f82bull));
  r.next();
  return r.next();
}

}  // namespace lowtw
