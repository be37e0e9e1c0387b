#include "dialect/poset.hpp"

#include <algorithm>

#include "dialect/error.hpp"

namespace dialect {

const MessagePattern& PatternPoset::element(int i) const {
  check_index(i);
  return elements_[static_cast<std::size_t>(i)];
}

const Bits& PatternPoset::strict_down(int i) const {
  check_index(i);
  return down_[static_cast<std::size_t>(i)];
}

const Bits& PatternPoset::strict_up(int i) const {
  check_index(i);
  return up_[static_cast<std::size_t>(i)];
}

Bits PatternPoset::upper_set(int y) const {
  check_index(y);
  Bits u = up_[static_cast<std::size_t>(y)];
  u.set(y);
  return u;
}

Bits PatternPoset::minimal_elements(const Bits& subset) const {
  if (subset.size() != size())
    throw IndexError("subset over " + std::to_string(subset.size()) + " elements given to poset of size " +
                     std::to_string(size()));
  Bits out(size());
  subset.for_each_set([&](int i) {
    if (!down_[static_cast<std::size_t>(i)].intersects(subset)) out.set(i);
  });
  return out;
}

int PatternPoset::index_of(const MessagePattern& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

void PatternPoset::check_index(int i) const {
  if (i < 0 || i >= size())
    throw IndexError("element index " + std::to_string(i) + " out of range for poset of size " +
                     std::to_string(size()));
}

PatternPoset build_poset(std::vector<MessagePattern> patterns, MessageUniverse universe) {
  PatternPoset p;
  p.universe_ = std::move(universe);

  for (const auto& x : patterns)
    if (x.width() != p.universe_.size())
      throw WidthMismatchError("pattern width " + std::to_string(x.width()) +
                               " does not match universe of size " + std::to_string(p.universe_.size()));

  std::sort(patterns.begin(), patterns.end(), MessagePattern::canonical_less);
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  p.elements_ = std::move(patterns);

  int n = p.size();
  p.down_.assign(static_cast<std::size_t>(n), Bits(n));
  p.up_.assign(static_cast<std::size_t>(n), Bits(n));
  for (int i = 0; i < n; ++i) p.index_.emplace(p.elements_[static_cast<std::size_t>(i)], i);

  // Strict order rows. Element order ascends by popcount, so only earlier
  // elements can be strict subsets of a later one.
  for (int j = 0; j < n; ++j) {
    const auto& pj = p.elements_[static_cast<std::size_t>(j)];
    for (int i = 0; i < j; ++i) {
      const auto& pi = p.elements_[static_cast<std::size_t>(i)];
      if (pi.popcount() >= pj.popcount()) continue;
      if (pi.bits().is_subset_of(pj.bits())) {
        p.down_[static_cast<std::size_t>(j)].set(i);
        p.up_[static_cast<std::size_t>(i)].set(j);
      }
    }
  }

  // Cover edges: i is covered by j iff i is maximal among j's strict
  // predecessors. Scanning candidates by descending popcount keeps the kept
  // set an antichain, so one subset test per kept element suffices.
  for (int j = 0; j < n; ++j) {
    std::vector<int> cands = p.down_[static_cast<std::size_t>(j)].to_indices();
    std::sort(cands.begin(), cands.end(), [&](int a, int b) {
      int pa = p.elements_[static_cast<std::size_t>(a)].popcount();
      int pb = p.elements_[static_cast<std::size_t>(b)].popcount();
      if (pa != pb) return pa > pb;
      return a < b;
    });
    std::vector<int> covers;
    for (int c : cands) {
      bool below_kept = false;
      for (int k : covers)
        if (p.down_[static_cast<std::size_t>(k)].test(c)) {
          below_kept = true;
          break;
        }
      if (!below_kept) covers.push_back(c);
    }
    for (int c : covers) p.hasse_.emplace_back(c, j);
  }
  std::sort(p.hasse_.begin(), p.hasse_.end());
  return p;
}

PatternPoset build_poset(std::vector<MessagePattern> patterns) {
  int width = patterns.empty() ? 0 : patterns.front().width();
  return build_poset(std::move(patterns), MessageUniverse::placeholder(width));
}

}  // namespace dialect
