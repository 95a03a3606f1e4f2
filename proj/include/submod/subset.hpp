// Copyright 2026 The Authors.
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
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace submod {

/// A ground set of n elements, indexed 0..n-1.
struct GroundSet {
  int n;

  explicit GroundSet(int size) : n(size) {
    if (n < 1) throw std::invalid_argument("GroundSet: size must be >= 1");
  }
};

/// A subset of a fixed ground set, stored as a packed bit vector
/// (bit i set <=> element i is in the subset). All set algebra is
/// word-at-a-time; operands must share the same universe size.
class SubsetMask {
 public:
  SubsetMask() = default;

  /// Empty subset over a universe of `n` elements.
  explicit SubsetMask(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) throw std::invalid_argument("SubsetMask: negative universe");
  }

  explicit SubsetMask(const GroundSet& ground) : SubsetMask(ground.n) {}

  static SubsetMask full(int n) {
    SubsetMask m(n);
    for (auto& w : m.words_) w = ~std::uint64_t{0};
    m.clear_tail();
    return m;
  }

  /// Builds a mask from the low `n` bits of an integer (n <= 64).
  static SubsetMask from_bits(std::uint64_t bits, int n) {
    if (n > 64) throw std::invalid_argument("from_bits: universe exceeds 64");
    SubsetMask m(n);
    if (n > 0) {
      if (n < 64 && (bits >> n) != 0)
        throw std::invalid_argument("from_bits: bits outside universe");
      m.words_[0] = bits;
    } else if (bits != 0) {
      throw std::invalid_argument("from_bits: bits outside universe");
    }
    return m;
  }

  static SubsetMask of(std::initializer_list<int> elements, int n) {
    SubsetMask m(n);
    for (int e : elements) m.add(e);
    return m;
  }

  int universe_size() const { return n_; }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  int cardinality() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool contains(int i) const {
    check_element(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void add(int i) {
    check_element(i);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void remove(int i) {
    check_element(i);
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }

  SubsetMask& operator&=(const SubsetMask& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }

  /// Set difference: removes every element of `o`.
  SubsetMask& operator-=(const SubsetMask& o) {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }

  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
  friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }

  SubsetMask complemented() const {
    SubsetMask m(*this);
    for (auto& w : m.words_) w = ~w;
    m.clear_tail();
    return m;
  }

  bool is_subset_of(const SubsetMask& o) const {
    check_same(o);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  bool operator==(const SubsetMask& o) const = default;

  /// Orders masks by their value as an n-bit integer (element i has
  /// weight 2^i). Used for deterministic tie-breaking.
  int compare_numeric(const SubsetMask& o) const {
    check_same(o);
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w] != o.words_[w]) return words_[w] < o.words_[w] ? -1 : 1;
    }
    return 0;
  }

  /// The mask as an integer; only valid for universes of at most 64 elements.
  std::uint64_t to_bits() const {
    if (n_ > 64) throw std::logic_error("to_bits: universe exceeds 64");
    return words_.empty() ? 0 : words_[0];
  }

  /// Calls `fn(i)` for every element i in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int i = static_cast<int>(w * 64) + std::countr_zero(bits);
        fn(i);
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(cardinality());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int i) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    });
    return s + "}";
  }

 private:
  static std::size_t word_count(int n) {
    return static_cast<std::size_t>((n + 63) / 64);
  }

  void check_element(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("SubsetMask: element out of range");
  }

  void check_same(const SubsetMask& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SubsetMask: universe size mismatch");
  }

  // Bits at positions >= n_ in the last word are kept zero.
  void clear_tail() {
    if (n_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace submod
