#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#if defined(__GNUC__) || defined(__clang__)
#include <bit>
#endif

namespace dialect {

// Fixed-size bit vector over 64-bit blocks. Used both for message patterns
// (bits indexed by message) and for element sets over a poset (bits indexed
// by element). Size is fixed at construction; binary operations require
// operands of equal size.
class Bits {
 public:
  Bits() = default;

  explicit Bits(int size) : size_(size), blocks_((size + 63) / 64, 0) {}

  static Bits with_all_set(int size) {
    Bits b(size);
    for (auto& w : b.blocks_) w = ~std::uint64_t{0};
    b.clear_tail();
    return b;
  }

  int size() const { return size_; }

  bool test(int i) const {
    return (blocks_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }

  void set(int i) { blocks_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }

  void reset(int i) { blocks_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void assign(int i, bool v) { v ? set(i) : reset(i); }

  bool any() const {
    for (auto w : blocks_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  int count() const {
    int n = 0;
    for (auto w : blocks_) n += std::popcount(w);
    return n;
  }

  // a is a subset of b iff a & ~b is empty.
  bool is_subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k] & ~o.blocks_[k]) return false;
    return true;
  }

  bool intersects(const Bits& o) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k] & o.blocks_[k]) return true;
    return false;
  }

  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] &= o.blocks_[k];
    return *this;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] |= o.blocks_[k];
    return *this;
  }

  // this &= ~o
  Bits& subtract(const Bits& o) {
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] &= ~o.blocks_[k];
    return *this;
  }

  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  bool operator==(const Bits& o) const { return size_ == o.size_ && blocks_ == o.blocks_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  // Index of the lowest set bit, or -1 when empty.
  int find_first() const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k]) return static_cast<int>(k * 64 + std::countr_zero(blocks_[k]));
    return -1;
  }

  // Lowest set bit of this XOR other, or -1 when equal. Operands must have
  // equal size.
  int first_difference(const Bits& o) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      std::uint64_t x = blocks_[k] ^ o.blocks_[k];
      if (x) return static_cast<int>(k * 64 + std::countr_zero(x));
    }
    return -1;
  }

  // Calls f(i) for every set bit, in ascending index order.
  template <class F>
  void for_each_set(F f) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      std::uint64_t w = blocks_[k];
      while (w) {
        int i = static_cast<int>(k * 64 + std::countr_zero(w));
        f(i);
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_indices() const {
    std::vector<int> r;
    r.reserve(static_cast<std::size_t>(count()));
    for_each_set([&](int i) { r.push_back(i); });
    return r;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull ^ static_cast<std::size_t>(size_);
    for (auto w : blocks_) {
      h ^= static_cast<std::size_t>(w);
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  void clear_tail() {
    int tail = size_ & 63;
    if (tail && !blocks_.empty()) blocks_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  int size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace dialect
