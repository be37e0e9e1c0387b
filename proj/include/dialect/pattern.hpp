#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dialect/bits.hpp"
#include "dialect/error.hpp"

namespace dialect {

// Ordered list of distinct message names. The position of a name is its
// message index; every MessagePattern is a bit vector over one universe's
// indices.
class MessageUniverse {
 public:
  MessageUniverse() = default;
  explicit MessageUniverse(std::vector<std::string> names);

  // "m0", "m1", ... placeholder names for posets built without a named
  // universe.
  static MessageUniverse placeholder(int width);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const;
  const std::vector<std::string>& names() const { return names_; }

  // -1 when absent.
  int index_of(std::string_view name) const;
  int require(std::string_view name) const;  // IndexError when absent

  bool operator==(const MessageUniverse& o) const { return names_ == o.names_; }
  bool operator!=(const MessageUniverse& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// Set of messages observed for one file, as a bit vector whose width equals
// the universe size. Width is fixed at construction; operations on patterns
// of different widths throw WidthMismatchError.
class MessagePattern {
 public:
  MessagePattern() = default;
  explicit MessagePattern(int width) : bits_(width) {}

  static MessagePattern of(int width, std::initializer_list<int> on) {
    MessagePattern p(width);
    for (int i : on) p.set(i);
    return p;
  }

  int width() const { return bits_.size(); }
  bool test(int i) const { return check_index(i), bits_.test(i); }
  void set(int i, bool v = true) { check_index(i), bits_.assign(i, v); }
  int popcount() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  const Bits& bits() const { return bits_; }

  bool is_subset_of(const MessagePattern& o) const {
    check_width(o);
    return bits_.is_subset_of(o.bits_);
  }

  bool is_strict_subset_of(const MessagePattern& o) const {
    return is_subset_of(o) && bits_ != o.bits_;
  }

  bool operator==(const MessagePattern& o) const { return bits_ == o.bits_; }
  bool operator!=(const MessagePattern& o) const { return !(*this == o); }

  // Canonical order: popcount ascending, ties by the lowest differing bit
  // (the pattern holding that bit sorts first). Total order on any one
  // width; the element order of every poset.
  static bool canonical_less(const MessagePattern& a, const MessagePattern& b) {
    a.check_width(b);
    int pa = a.popcount(), pb = b.popcount();
    if (pa != pb) return pa < pb;
    int d = a.bits_.first_difference(b.bits_);
    return d >= 0 && a.bits_.test(d);
  }

  std::vector<int> indices() const { return bits_.to_indices(); }

  // "{}" or "{a b c}" with names from the universe.
  std::string to_string(const MessageUniverse& u) const;

  std::size_t hash() const { return bits_.hash(); }

  struct Hash {
    std::size_t operator()(const MessagePattern& p) const { return p.hash(); }
  };

 private:
  void check_index(int i) const {
    if (i < 0 || i >= bits_.size())
      throw IndexError("message index " + std::to_string(i) + " out of range for width " +
                       std::to_string(bits_.size()));
  }

  void check_width(const MessagePattern& o) const {
    if (bits_.size() != o.bits_.size())
      throw WidthMismatchError("pattern widths differ: " + std::to_string(bits_.size()) + " vs " +
                               std::to_string(o.bits_.size()));
  }

  Bits bits_;
};

}  // namespace dialect
