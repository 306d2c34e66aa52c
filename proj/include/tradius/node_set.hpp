// Copyright 2026 The tradius Authors
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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>

namespace tradius {

/// Maximum number of nodes a Graph may hold (one bit per node).
inline constexpr std::size_t kMaxNodes = 64;

/// A set of node *indices* (0-based positions in a Graph), stored as a bitmask.
///
/// Indices follow ascending identifier order, so iterating a NodeSet visits
/// nodes in identifier order as well.
class NodeSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = std::size_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr std::size_t operator*() const {
      return static_cast<std::size_t>(std::countr_zero(rest_));
    }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr NodeSet single(std::size_t index) {
    return NodeSet(std::uint64_t{1} << index);
  }
  /// {0, 1, ..., count-1}
  static constexpr NodeSet first(std::size_t count) {
    return count >= 64 ? NodeSet(~std::uint64_t{0})
                       : NodeSet((std::uint64_t{1} << count) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  constexpr bool contains(std::size_t index) const {
    return (bits_ >> index) & 1U;
  }
  constexpr bool contains(NodeSet other) const {
    return (other.bits_ & ~bits_) == 0;
  }
  constexpr bool intersects(NodeSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  /// Smallest index in the set; undefined on the empty set.
  constexpr std::size_t front() const {
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }

  constexpr void insert(std::size_t index) { bits_ |= std::uint64_t{1} << index; }
  constexpr void erase(std::size_t index) { bits_ &= ~(std::uint64_t{1} << index); }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  constexpr NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
  constexpr NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
  constexpr NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
  constexpr NodeSet& operator|=(NodeSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator&=(NodeSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator-=(NodeSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  constexpr bool operator==(const NodeSet&) const = default;
  constexpr auto operator<=>(const NodeSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace tradius
