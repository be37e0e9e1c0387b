#pragma once

#include <utility>
#include <vector>

#include "dialect/poset.hpp"
#include "dialect/rational.hpp"

namespace dialect {

// Nonnegative function on the elements of a poset: usually how many files
// exhibit each pattern, or an expected count under a mixture model. Values
// are exact; integer counts and rational probabilities share one type.
class CountFunction {
 public:
  CountFunction() = default;
  CountFunction(PosetPtr poset, std::vector<Rational> values);

  const PatternPoset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }
  int size() const { return static_cast<int>(values_.size()); }
  const Rational& at(int i) const;
  const std::vector<Rational>& values() const { return values_; }

  Rational total() const;
  bool is_integer_valued() const;

  bool operator==(const CountFunction& o) const {
    if (values_ != o.values_) return false;
    if (poset_ == o.poset_) return true;
    return poset_ && o.poset_ && *poset_ == *o.poset_;
  }

 private:
  PosetPtr poset_;
  std::vector<Rational> values_;
};

// {x : f(x) > 0} as an element set.
Bits support(const CountFunction& f);

// One decomposition term: a function g supported on the upper set of `root`,
// monotonic decreasing there. Zero values are not stored; value_at returns 0
// for any index without an entry.
struct MonotonicTerm {
  int root = -1;
  std::vector<std::pair<int, Rational>> g;  // ascending index, values > 0

  Rational value_at(int x) const;
  const Rational& root_count() const;  // g(root); zero() when absent

  bool operator==(const MonotonicTerm& o) const { return root == o.root && g == o.g; }
};

// Entries sorted by index form a function on an explicit domain (the key
// set). Used by max_monotonic_lower_bound and pointwise_max, whose contracts
// speak about a fixed domain rather than a term.
using BoundedMap = std::vector<std::pair<int, Rational>>;

// f written as a sum of indicator-masked monotonic terms, in discovery
// order. Carries a copy of the source so reconstruction and refinement
// checks need no external state.
struct MonotonicDecomposition {
  CountFunction source;
  std::vector<MonotonicTerm> terms;
};

struct DecomposeOptions {
  // Permutation of the element indices; within one sweep layer, roots are
  // processed in the order their indices appear here. Empty means canonical
  // (index) order.
  std::vector<int> layer_order;
  // Re-verify per-term monotonicity and violation non-increase after every
  // extraction. On by default; large synthetic corpora may switch it off.
  bool check_invariants = true;
};

// Elements y for which some x < y has f(x) < f(y), i.e. where f fails to be
// monotonic decreasing. Empty iff f is monotonic decreasing.
Bits count_violations(const CountFunction& f);

// The unique pointwise-greatest monotonic decreasing g <= f on `domain`,
// which must be upward closed (DomainError otherwise). Computed layer by
// layer from the domain's minimal elements up:
//   g(m) = min({f(m)} union {g(x) : x < m, x in domain}).
// The result has one entry per domain element, zeros included.
BoundedMap max_monotonic_lower_bound(const CountFunction& f, const Bits& domain);

// Greedy decomposition. Sweeps the poset from its minimal elements upward:
// each layer takes the minimal elements of the not-yet-processed region, and
// for each such root (tie-broken by options.layer_order) extracts the
// maximal monotonic lower bound of the residual on the root's upper set,
// then subtracts it. Layers repeat on the shrunk region until the residual
// is exhausted. All-zero terms are dropped, so the output is irredundant;
// every emitted term satisfies g(root) = residual(root) at extraction time.
//
// The result reconstructs f exactly and is minimal in the refinement
// preorder: any decomposition of f it refines refines it back.
MonotonicDecomposition decompose(const CountFunction& f, const DecomposeOptions& options = {});

// Pointwise maximum of two monotonic decreasing maps bounded by f on a
// common domain; the result is again monotonic decreasing and bounded by f.
// ContractError when the domains differ or either input breaks the
// precondition.
BoundedMap pointwise_max(const BoundedMap& g1, const BoundedMap& g2, const CountFunction& f);

// d1 refines d2 iff every term of d1 fits inside some term of d2: the root
// of the d2 term lies below the d1 term's root and the d1 term's values
// never exceed the d2 term's on the d1 term's upper set. Both arguments
// must decompose the same source (ComparisonError otherwise).
bool refines(const MonotonicDecomposition& d1, const MonotonicDecomposition& d2);

// True when no term is identically zero.
bool is_irredundant(const MonotonicDecomposition& d);

// Removes identically-zero terms; the remaining terms keep their order.
MonotonicDecomposition drop_zero_terms(const MonotonicDecomposition& d);

// Greedy redundancy removal on a list of sets covering `space`: repeatedly
// drop the first set (in list order) contained in the union of the others,
// restarting the scan after each removal. Sets are judged restricted to
// `space`; the survivors are returned unrestricted, in their original order.
// CoverError when the input does not cover `space`.
std::vector<Bits> irredundant_cover(const std::vector<Bits>& sets, const Bits& space);

// Number of nonzero terms of d. For a minimally refined irredundant input
// (decompose's output) this is the least term count any decomposition of
// the source can have, so no partition of the corpus into monotone-behaved
// groups can use fewer groups than this.
int dialect_count_lower_bound(const MonotonicDecomposition& d);

// For integer-valued f only (DomainError otherwise): f(y) copies of the
// single-point indicator term at every y with f(y) > 0, roots in canonical
// order. Refines every decomposition of f.
MonotonicDecomposition max_refined_decomposition(const CountFunction& f);

// Exhaustively enumerates the irredundant integer decompositions of f with
// at most max_terms terms, one representative per reordering class (terms
// are emitted in a fixed total order). Guarded: poset size <= 6 and total
// mass <= 16, SizeError beyond that.
std::vector<MonotonicDecomposition> enumerate_integer_decompositions(const CountFunction& f,
                                                                     int max_terms);

// --- helpers shared by tests, the oracle subcommand and the acceptance
// suite ---

// Entries lie in U_root, values are nonnegative, and g is monotonic
// decreasing on U_root (missing entries count as zero).
bool is_valid_term(const PatternPoset& poset, const MonotonicTerm& term);

// The terms sum back to the source at every element.
bool reconstructs(const MonotonicDecomposition& d);

// Equality as term multisets.
bool equal_up_to_reorder(const MonotonicDecomposition& a, const MonotonicDecomposition& b);

// Fixed total order on terms: by root, then by values along the root's
// upper set. enumerate_integer_decompositions emits terms in this order.
bool term_less(const MonotonicTerm& a, const MonotonicTerm& b);

// Everything cli_oracle reports about one desk-sized instance.
struct OracleVerdict {
  std::size_t enumerated = 0;       // irredundant decompositions found
  std::size_t minimal_count = 0;    // how many of them use the fewest terms
  bool greedy_minimal = false;      // greedy refines nothing strictly below it
  bool roots_shared = false;        // fewest-term decompositions same roots
  std::vector<int> shared_roots;    // that common root set (sorted indices)
  int greedy_terms = 0;
  int lower_bound = 0;
};

OracleVerdict oracle_verdict(const CountFunction& f, int max_terms);

}  // namespace dialect
