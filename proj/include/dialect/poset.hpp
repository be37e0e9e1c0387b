#pragma once

#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dialect/bits.hpp"
#include "dialect/pattern.hpp"

namespace dialect {

// Observed message patterns ordered by set inclusion. Elements are stored in
// canonical order (popcount ascending, then lowest differing bit), so element
// index order is a linear extension of the partial order. Immutable after
// construction and safe to share across threads.
//
// Only patterns that actually occur are elements; the poset is not completed
// to a lattice.
class PatternPoset {
 public:
  PatternPoset() = default;

  int size() const { return static_cast<int>(elements_.size()); }
  const MessagePattern& element(int i) const;
  const std::vector<MessagePattern>& elements() const { return elements_; }
  const MessageUniverse& universe() const { return universe_; }

  // Cover relations as (lower, upper) index pairs, lexicographically sorted.
  const std::vector<std::pair<int, int>>& hasse_edges() const { return hasse_; }

  bool leq(int i, int j) const { return i == j || strict_down(j).test(i); }

  // All elements strictly below / above, as index sets.
  const Bits& strict_down(int i) const;
  const Bits& strict_up(int i) const;

  // U_y = {x : x >= y}. Always contains y.
  Bits upper_set(int y) const;

  // Elements of `subset` with no strictly smaller element in `subset`.
  Bits minimal_elements(const Bits& subset) const;

  Bits all() const { return Bits::with_all_set(size()); }

  // -1 when the pattern is not an element.
  int index_of(const MessagePattern& p) const;

  // Same universe and same elements; the relation follows from the elements.
  bool operator==(const PatternPoset& o) const {
    return universe_ == o.universe_ && elements_ == o.elements_;
  }
  bool operator!=(const PatternPoset& o) const { return !(*this == o); }

 private:
  void check_index(int i) const;

  MessageUniverse universe_;
  std::vector<MessagePattern> elements_;
  std::vector<Bits> down_, up_;
  std::vector<std::pair<int, int>> hasse_;
  std::unordered_map<MessagePattern, int, MessagePattern::Hash> index_;

  friend PatternPoset build_poset(std::vector<MessagePattern> patterns, MessageUniverse universe);
};

using PosetPtr = std::shared_ptr<const PatternPoset>;

// Deduplicates the input patterns, sorts them canonically and computes the
// cover relation. All patterns must share the universe's width
// (WidthMismatchError otherwise). The empty input yields the empty poset.
PatternPoset build_poset(std::vector<MessagePattern> patterns, MessageUniverse universe);

// Same, with placeholder message names derived from the patterns' width.
PatternPoset build_poset(std::vector<MessagePattern> patterns);

inline PosetPtr share(PatternPoset p) { return std::make_shared<const PatternPoset>(std::move(p)); }

}  // namespace dialect
