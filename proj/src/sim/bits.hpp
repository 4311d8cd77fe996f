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
#include <vector>

#include "core/types.hpp"

namespace lowtw::sim {

// Message payloads are raw bit strings so bandwidth accounting is exact.
// Bits are stored LSB-first within bytes; equality is value equality.
struct Bits {
  std::vector<uint8_t> bytes;
  uint32_t count = 0;
  bool operator==(const Bits&) const = default;
};

class BitWriter {
 public:
  // Appends the low `width` bits of value (width <= 64).
  void push(uint64_t value, uint32_t width) {
    for (uint32_t i = 0; i < width; ++i) {
      uint32_t pos = out_.count + i;
      if (pos % 8 == 0) out_.bytes.push_back(0);
      if (value >> i & 1) out_.bytes[pos / 8] |= static_cast<uint8_t>(1u << (pos % 8));
    }
    out_.count += width;
  }
  uint32_t bit_count() const { return out_.count; }
  Bits take() { return std::move(out_); }

 private:
  Bits out_;
};

class BitReader {
 public:
  explicit BitReader(const Bits& bits) : bits_(bits) {}
  uint64_t pull(uint32_t width) {
    if (pos_ + width > bits_.count) throw SimError("bit payload underrun");
    uint64_t value = 0;
    for (uint32_t i = 0; i < width; ++i, ++pos_)
      if (bits_.bytes[pos_ / 8] >> (pos_ % 8) & 1) value |= 1ull << i;
    return value;
  }
  uint32_t remaining() const { return bits_.count - pos_; }

 private:
  const Bits& bits_;
  uint32_t pos_ = 0;
};

}  // namespace lowtw::sim
