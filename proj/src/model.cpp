#include "dialect/model.hpp"

#include <algorithm>
#include <random>

#include "dialect/error.hpp"

namespace dialect {

namespace {

Rational half() { return Rational(1, 2); }

// Uniform in [0, 1) with 53 random bits; arithmetic on doubles keeps the
// draw sequence identical across platforms.
double next_u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

MixtureSpec::MixtureSpec(MessageUniverse universe, std::vector<DialectSpec> dialects)
    : universe_(std::move(universe)), dialects_(std::move(dialects)) {
  if (dialects_.empty()) throw ValidationError("mixture needs at least one dialect");

  Rational weight_sum = 0;
  for (std::size_t a = 0; a < dialects_.size(); ++a) {
    const DialectSpec& d = dialects_[a];
    std::string where = "dialect " + std::to_string(a);
    if (d.required.width() != universe_.size())
      throw ValidationError(where + ": required pattern width " + std::to_string(d.required.width()) +
                            " does not match universe of size " + std::to_string(universe_.size()));
    if (d.weight <= 0 || d.weight > 1)
      throw ValidationError(where + ": weight " + rational_to_string(d.weight) + " outside (0, 1]");
    weight_sum += d.weight;
    for (const auto& [msg, p] : d.marginals) {
      if (msg < 0 || msg >= universe_.size())
        throw ValidationError(where + ": marginal for message index " + std::to_string(msg) +
                              " outside the universe");
      if (d.required.test(msg))
        throw ValidationError(where + ": required message '" + universe_.name(msg) +
                              "' must not carry a marginal");
      if (p < 0 || p >= half())
        throw ValidationError(where + ": marginal for '" + universe_.name(msg) + "' is " +
                              rational_to_string(p) + ", outside [0, 1/2)");
    }
  }
  if (weight_sum != 1)
    throw ValidationError("dialect weights sum to " + rational_to_string(weight_sum) + ", expected 1");

  for (std::size_t a = 0; a < dialects_.size(); ++a)
    for (std::size_t b = a + 1; b < dialects_.size(); ++b)
      if (dialects_[a].required == dialects_[b].required)
        throw ValidationError("dialects " + std::to_string(a) + " and " + std::to_string(b) +
                              " share the required set " + dialects_[a].required.to_string(universe_));
}

Rational pattern_probability(const DialectSpec& dialect, const MessagePattern& pattern) {
  if (pattern.width() != dialect.required.width())
    throw WidthMismatchError("pattern width " + std::to_string(pattern.width()) +
                             " does not match dialect width " + std::to_string(dialect.required.width()));
  if (!dialect.required.is_subset_of(pattern)) return 0;

  // Any present message that is neither required nor listed has marginal 0.
  Bits accounted = dialect.required.bits();
  for (const auto& [msg, p] : dialect.marginals) accounted.set(msg);
  Bits extra = pattern.bits();
  extra.subtract(accounted);
  if (extra.any()) return 0;

  Rational prob = 1;
  for (const auto& [msg, p] : dialect.marginals) {
    prob *= pattern.test(msg) ? p : 1 - p;
    if (prob == 0) return 0;
  }
  return prob;
}

Rational mixture_probability(const MixtureSpec& mixture, const MessagePattern& pattern) {
  Rational total = 0;
  for (const auto& d : mixture.dialects()) total += d.weight * pattern_probability(d, pattern);
  return total;
}

std::vector<MessagePattern> support_patterns(const MixtureSpec& mixture) {
  std::vector<MessagePattern> out;
  for (std::size_t a = 0; a < mixture.dialects().size(); ++a) {
    const DialectSpec& d = mixture.dialects()[a];
    std::vector<int> optional;
    for (const auto& [msg, p] : d.marginals)
      if (p > 0) optional.push_back(msg);
    if (optional.size() > 20)
      throw SizeError("dialect " + std::to_string(a) + " has " + std::to_string(optional.size()) +
                      " positive marginals; support enumeration is limited to 20");
    std::uint64_t combos = std::uint64_t{1} << optional.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      MessagePattern p = d.required;
      for (std::size_t k = 0; k < optional.size(); ++k)
        if ((mask >> k) & 1) p.set(optional[k]);
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), MessagePattern::canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<MessagePattern> sample_corpus(const MixtureSpec& mixture, int n_files,
                                          std::uint64_t seed) {
  if (n_files < 0) throw ContractError("n_files must be nonnegative");
  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& d : mixture.dialects()) {
    acc += static_cast<double>(d.weight);
    cumulative.push_back(acc);
  }
  cumulative.back() = 1.0;  // guard against rounding in the running sum

  std::mt19937_64 rng(seed);
  std::vector<MessagePattern> corpus;
  corpus.reserve(static_cast<std::size_t>(n_files));
  for (int i = 0; i < n_files; ++i) {
    double u = next_u01(rng);
    std::size_t a = 0;
    while (a + 1 < cumulative.size() && u >= cumulative[a]) ++a;
    const DialectSpec& d = mixture.dialects()[a];
    MessagePattern p = d.required;
    for (const auto& [msg, prob] : d.marginals)
      if (next_u01(rng) < static_cast<double>(prob)) p.set(msg);
    corpus.push_back(std::move(p));
  }
  return corpus;
}

CountFunction expected_count_function(const MixtureSpec& mixture, const Rational& n_files,
                                      PosetPtr poset) {
  if (n_files < 0) throw ContractError("n_files must be nonnegative");
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(poset->size()));
  for (int i = 0; i < poset->size(); ++i) {
    Rational p = mixture_probability(mixture, poset->element(i));
    if (p == 0)
      throw ContractError("poset element " + poset->element(i).to_string(poset->universe()) +
                          " has zero probability under the mixture");
    values.push_back(n_files * p);
  }
  return CountFunction(std::move(poset), std::move(values));
}

}  // namespace dialect
