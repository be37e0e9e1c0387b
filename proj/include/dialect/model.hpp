#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dialect/decompose.hpp"
#include "dialect/pattern.hpp"
#include "dialect/rational.hpp"

namespace dialect {

// One behavioral dialect: a set of messages every file of the dialect
// triggers, plus independent occurrence probabilities for the optional
// messages. Marginals must stay strictly below 1/2 so that pattern
// probabilities fall off as patterns grow.
struct DialectSpec {
  MessagePattern required;
  std::map<int, Rational> marginals;  // message index -> P(message occurs)
  Rational weight;                    // mixture proportion, in (0, 1]
};

// Weighted mixture of dialects over one message universe. Validated on
// construction: weights sum to exactly 1, required sets are distinct, every
// marginal lies in [0, 1/2), required messages carry no marginal.
class MixtureSpec {
 public:
  MixtureSpec(MessageUniverse universe, std::vector<DialectSpec> dialects);

  const MessageUniverse& universe() const { return universe_; }
  const std::vector<DialectSpec>& dialects() const { return dialects_; }
  int width() const { return universe_.size(); }

 private:
  MessageUniverse universe_;
  std::vector<DialectSpec> dialects_;
};

// P(pattern | dialect): zero unless the required set is contained in the
// pattern; otherwise the product of marginals for present optional messages
// and complements for absent ones. Optional messages without a listed
// marginal have probability zero.
Rational pattern_probability(const DialectSpec& dialect, const MessagePattern& pattern);

// Sum of per-dialect probabilities weighted by mixture proportion.
Rational mixture_probability(const MixtureSpec& mixture, const MessagePattern& pattern);

// Patterns with positive mixture probability, deduplicated, in canonical
// order. Guarded: a dialect may list at most 20 positive marginals
// (SizeError), since the support grows as 2^marginals.
std::vector<MessagePattern> support_patterns(const MixtureSpec& mixture);

// Draws n_files patterns i.i.d. from the mixture. The generator is the
// standard-specified mt19937_64, so one seed reproduces the same corpus on
// every platform: per file one uniform draw picks the dialect by cumulative
// weight, then one draw per listed marginal (ascending message index)
// decides each optional message.
std::vector<MessagePattern> sample_corpus(const MixtureSpec& mixture, int n_files,
                                          std::uint64_t seed);

// Identifier of the sampling generator, recorded in provenance blocks.
inline const char* kSampleGenerator = "mt19937_64";

// f(x) = n_files * mixture_probability(x) over the given poset, exactly.
// Every poset element must have positive mixture probability (ContractError
// otherwise): the poset is meant to be built from support_patterns or from
// an observed corpus of the mixture.
CountFunction expected_count_function(const MixtureSpec& mixture, const Rational& n_files,
                                      PosetPtr poset);

}  // namespace dialect
