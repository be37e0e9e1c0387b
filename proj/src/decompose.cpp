#include "dialect/decompose.hpp"

#include <algorithm>
#include <numeric>

#include "dialect/error.hpp"

namespace dialect {

namespace {

const Rational kZero = 0;

// Greatest monotonic decreasing minorant of `values` on an upward closed
// domain, written densely into `g` (only domain slots are touched).
// Ascending index order is a linear extension, so every strict predecessor
// is finished before its successors are visited; this collapses the
// layer-by-layer recursion into one pass.
void mmlb_dense(const PatternPoset& poset, const std::vector<Rational>& values, const Bits& domain,
                std::vector<Rational>& g) {
  domain.for_each_set([&](int m) {
    Rational v = values[static_cast<std::size_t>(m)];
    poset.strict_down(m).for_each_set([&](int x) {
      if (domain.test(x) && g[static_cast<std::size_t>(x)] < v) v = g[static_cast<std::size_t>(x)];
    });
    g[static_cast<std::size_t>(m)] = v;
  });
}

int violation_count(const PatternPoset& poset, const std::vector<Rational>& values) {
  int n = static_cast<int>(values.size());
  int count = 0;
  for (int y = 0; y < n; ++y) {
    bool violated = false;
    poset.strict_down(y).for_each_set([&](int x) {
      if (values[static_cast<std::size_t>(x)] < values[static_cast<std::size_t>(y)]) violated = true;
    });
    if (violated) ++count;
  }
  return count;
}

void check_same_source(const MonotonicDecomposition& a, const MonotonicDecomposition& b) {
  const CountFunction& fa = a.source;
  const CountFunction& fb = b.source;
  bool same_poset = fa.poset_ptr() == fb.poset_ptr() ||
                    (fa.poset().elements() == fb.poset().elements() &&
                     fa.poset().universe() == fb.poset().universe());
  if (!same_poset || fa.values() != fb.values())
    throw ComparisonError("decompositions of different sources cannot be compared");
}

// term a fits inside term b: b's root lies below a's and b dominates a on
// a's upper set. Stored entries are the only places a is positive, so only
// they need checking.
bool term_dominated(const PatternPoset& poset, const MonotonicTerm& a, const MonotonicTerm& b) {
  if (!poset.leq(b.root, a.root)) return false;
  for (const auto& [x, v] : a.g)
    if (v > b.value_at(x)) return false;
  return true;
}

}  // namespace

CountFunction::CountFunction(PosetPtr poset, std::vector<Rational> values)
    : poset_(std::move(poset)), values_(std::move(values)) {
  if (!poset_) throw ContractError("count function requires a poset");
  if (static_cast<int>(values_.size()) != poset_->size())
    throw ContractError("count function has " + std::to_string(values_.size()) + " values for a poset of size " +
                        std::to_string(poset_->size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] < 0)
      throw ValidationError("negative value at element " + std::to_string(i));
}

const Rational& CountFunction::at(int i) const {
  if (i < 0 || i >= size())
    throw IndexError("element index " + std::to_string(i) + " out of range for count function of size " +
                     std::to_string(size()));
  return values_[static_cast<std::size_t>(i)];
}

Rational CountFunction::total() const {
  Rational t = 0;
  for (const auto& v : values_) t += v;
  return t;
}

bool CountFunction::is_integer_valued() const {
  for (const auto& v : values_)
    if (!is_integer(v)) return false;
  return true;
}

Bits support(const CountFunction& f) {
  Bits s(f.size());
  for (int i = 0; i < f.size(); ++i)
    if (f.at(i) > 0) s.set(i);
  return s;
}

Rational MonotonicTerm::value_at(int x) const {
  auto it = std::lower_bound(g.begin(), g.end(), x,
                             [](const auto& entry, int key) { return entry.first < key; });
  return it != g.end() && it->first == x ? it->second : Rational(0);
}

const Rational& MonotonicTerm::root_count() const {
  if (!g.empty() && g.front().first == root) return g.front().second;
  return kZero;
}

Bits count_violations(const CountFunction& f) {
  const PatternPoset& poset = f.poset();
  Bits out(f.size());
  for (int y = 0; y < f.size(); ++y) {
    const Rational& fy = f.at(y);
    bool violated = false;
    poset.strict_down(y).for_each_set([&](int x) {
      if (f.at(x) < fy) violated = true;
    });
    if (violated) out.set(y);
  }
  return out;
}

BoundedMap max_monotonic_lower_bound(const CountFunction& f, const Bits& domain) {
  const PatternPoset& poset = f.poset();
  if (domain.size() != f.size())
    throw DomainError("domain over " + std::to_string(domain.size()) + " elements given to function of size " +
                      std::to_string(f.size()));
  bool closed = true;
  domain.for_each_set([&](int y) {
    if (!poset.strict_up(y).is_subset_of(domain)) closed = false;
  });
  if (!closed) throw DomainError("domain is not upward closed");

  std::vector<Rational> g(static_cast<std::size_t>(f.size()));
  mmlb_dense(poset, f.values(), domain, g);
  BoundedMap out;
  domain.for_each_set([&](int x) { out.emplace_back(x, g[static_cast<std::size_t>(x)]); });
  return out;
}

MonotonicDecomposition decompose(const CountFunction& f, const DecomposeOptions& options) {
  const PatternPoset& poset = f.poset();
  int n = f.size();

  std::vector<int> rank(static_cast<std::size_t>(n));
  if (options.layer_order.empty()) {
    std::iota(rank.begin(), rank.end(), 0);
  } else {
    if (static_cast<int>(options.layer_order.size()) != n)
      throw ContractError("layer order must be a permutation of all element indices");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int k = 0; k < n; ++k) {
      int e = options.layer_order[static_cast<std::size_t>(k)];
      if (e < 0 || e >= n || seen[static_cast<std::size_t>(e)])
        throw ContractError("layer order must be a permutation of all element indices");
      seen[static_cast<std::size_t>(e)] = true;
      rank[static_cast<std::size_t>(e)] = k;
    }
  }

  std::vector<Rational> residual = f.values();
  int nonzero = 0;
  for (const auto& v : residual)
    if (v > 0) ++nonzero;

  int last_violations = options.check_invariants ? violation_count(poset, residual) : 0;

  MonotonicDecomposition out{f, {}};
  Bits remaining = Bits::with_all_set(n);
  std::vector<Rational> g(static_cast<std::size_t>(n));

  while (remaining.any() && nonzero > 0) {
    Bits layer = poset.minimal_elements(remaining);
    std::vector<int> roots = layer.to_indices();
    std::sort(roots.begin(), roots.end(),
              [&](int a, int b) { return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]; });

    for (int p : roots) {
      if (residual[static_cast<std::size_t>(p)] == 0) continue;  // would yield the zero term

      Bits u = poset.upper_set(p);
      mmlb_dense(poset, residual, u, g);

      MonotonicTerm term;
      term.root = p;
      u.for_each_set([&](int x) {
        const Rational& gx = g[static_cast<std::size_t>(x)];
        if (gx > 0) {
          term.g.emplace_back(x, gx);
          residual[static_cast<std::size_t>(x)] -= gx;
          if (residual[static_cast<std::size_t>(x)] == 0) --nonzero;
        }
      });

      // The root is the least element of its own upper set, so the bound is
      // tight there: the term absorbs the entire residual at its root.
      if (term.root_count() == 0 || !(term.g.front().first == p))
        throw Error("internal: extracted term does not start at its root");

      if (options.check_invariants) {
        if (!is_valid_term(poset, term)) throw Error("internal: extracted term is not monotonic");
        int now = violation_count(poset, residual);
        if (now > last_violations) throw Error("internal: extraction increased violation count");
        last_violations = now;
      }
      out.terms.push_back(std::move(term));
    }
    remaining.subtract(layer);
  }

  if (nonzero != 0) throw Error("internal: residual not exhausted by sweep");
  return out;
}

BoundedMap pointwise_max(const BoundedMap& g1, const BoundedMap& g2, const CountFunction& f) {
  const PatternPoset& poset = f.poset();
  if (g1.size() != g2.size()) throw ContractError("bounded maps have different domains");
  for (std::size_t k = 0; k < g1.size(); ++k)
    if (g1[k].first != g2[k].first) throw ContractError("bounded maps have different domains");

  Bits domain(f.size());
  for (const auto& [x, v] : g1) {
    if (x < 0 || x >= f.size()) throw ContractError("bounded map key out of range");
    domain.set(x);
  }

  auto check_input = [&](const BoundedMap& g, const char* which) {
    std::vector<Rational> dense(static_cast<std::size_t>(f.size()));
    for (const auto& [x, v] : g) {
      if (v < 0) throw ContractError(std::string(which) + " has a negative value");
      if (v > f.at(x)) throw ContractError(std::string(which) + " exceeds the bounding function");
      dense[static_cast<std::size_t>(x)] = v;
    }
    for (const auto& [y, v] : g) {
      bool ok = true;
      poset.strict_down(y).for_each_set([&](int x) {
        if (domain.test(x) && dense[static_cast<std::size_t>(x)] < v) ok = false;
      });
      if (!ok) throw ContractError(std::string(which) + " is not monotonic decreasing on the domain");
    }
  };
  check_input(g1, "first map");
  check_input(g2, "second map");

  BoundedMap out;
  out.reserve(g1.size());
  for (std::size_t k = 0; k < g1.size(); ++k)
    out.emplace_back(g1[k].first, g1[k].second > g2[k].second ? g1[k].second : g2[k].second);
  return out;
}

bool refines(const MonotonicDecomposition& d1, const MonotonicDecomposition& d2) {
  check_same_source(d1, d2);
  const PatternPoset& poset = d1.source.poset();
  for (const auto& a : d1.terms) {
    bool fits = false;
    for (const auto& b : d2.terms)
      if (term_dominated(poset, a, b)) {
        fits = true;
        break;
      }
    if (!fits) return false;
  }
  return true;
}

bool is_irredundant(const MonotonicDecomposition& d) {
  for (const auto& t : d.terms) {
    bool nonzero = false;
    for (const auto& [x, v] : t.g)
      if (v > 0) nonzero = true;
    if (!nonzero) return false;
  }
  return true;
}

MonotonicDecomposition drop_zero_terms(const MonotonicDecomposition& d) {
  MonotonicDecomposition out{d.source, {}};
  for (const auto& t : d.terms) {
    bool nonzero = false;
    for (const auto& [x, v] : t.g)
      if (v > 0) nonzero = true;
    if (nonzero) out.terms.push_back(t);
  }
  return out;
}

std::vector<Bits> irredundant_cover(const std::vector<Bits>& sets, const Bits& space) {
  std::vector<Bits> restricted;
  restricted.reserve(sets.size());
  Bits covered(space.size());
  for (const auto& s : sets) {
    if (s.size() != space.size()) throw ContractError("cover set and space have different sizes");
    restricted.push_back(s & space);
    covered |= restricted.back();
  }
  if (!space.is_subset_of(covered)) throw CoverError("sets do not cover the support");

  std::vector<bool> alive(sets.size(), true);
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t i = 0; i < sets.size() && !removed; ++i) {
      if (!alive[i]) continue;
      Bits others(space.size());
      for (std::size_t j = 0; j < sets.size(); ++j)
        if (alive[j] && j != i) others |= restricted[j];
      if (restricted[i].is_subset_of(others)) {
        alive[i] = false;
        removed = true;  // restart the scan from the front
      }
    }
  }

  std::vector<Bits> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (alive[i]) out.push_back(sets[i]);
  return out;
}

int dialect_count_lower_bound(const MonotonicDecomposition& d) {
  int n = 0;
  for (const auto& t : d.terms)
    if (!t.g.empty()) ++n;
  return n;
}

MonotonicDecomposition max_refined_decomposition(const CountFunction& f) {
  if (!f.is_integer_valued())
    throw DomainError("a finest decomposition exists only for integer-valued functions");
  MonotonicDecomposition out{f, {}};
  for (int y = 0; y < f.size(); ++y) {
    BigInt c = numerator(f.at(y));
    for (BigInt k = 0; k < c; ++k) {
      MonotonicTerm t;
      t.root = y;
      t.g.emplace_back(y, Rational(1));
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

bool term_less(const MonotonicTerm& a, const MonotonicTerm& b) {
  if (a.root != b.root) return a.root < b.root;
  // Lexicographic over the dense value sequence on the shared upper set;
  // missing entries are zero.
  std::size_t i = 0, j = 0;
  while (i < a.g.size() || j < b.g.size()) {
    if (j == b.g.size()) return false;  // b is zero where a is positive
    if (i == a.g.size()) return true;
    if (a.g[i].first == b.g[j].first) {
      if (a.g[i].second != b.g[j].second) return a.g[i].second < b.g[j].second;
      ++i, ++j;
    } else if (a.g[i].first < b.g[j].first) {
      return false;  // at that index a > 0, b == 0
    } else {
      return true;
    }
  }
  return false;
}

bool is_valid_term(const PatternPoset& poset, const MonotonicTerm& term) {
  int n = poset.size();
  if (term.root < 0 || term.root >= n) return false;
  int prev = -1;
  for (const auto& [x, v] : term.g) {
    if (x <= prev || x >= n) return false;
    if (v < 0) return false;
    if (!poset.leq(term.root, x)) return false;
    prev = x;
  }
  Bits u = poset.upper_set(term.root);
  for (const auto& [x, v] : term.g) {
    if (v == 0) continue;
    bool ok = true;
    poset.strict_down(x).for_each_set([&](int w) {
      if (u.test(w) && term.value_at(w) < v) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool reconstructs(const MonotonicDecomposition& d) {
  std::vector<Rational> sum(static_cast<std::size_t>(d.source.size()));
  for (const auto& t : d.terms)
    for (const auto& [x, v] : t.g) sum[static_cast<std::size_t>(x)] += v;
  return sum == d.source.values();
}

bool equal_up_to_reorder(const MonotonicDecomposition& a, const MonotonicDecomposition& b) {
  if (a.terms.size() != b.terms.size()) return false;
  auto ta = a.terms, tb = b.terms;
  std::sort(ta.begin(), ta.end(), term_less);
  std::sort(tb.begin(), tb.end(), term_less);
  return ta == tb;
}

std::vector<MonotonicDecomposition> enumerate_integer_decompositions(const CountFunction& f,
                                                                     int max_terms) {
  if (!f.is_integer_valued()) throw DomainError("enumeration requires an integer-valued function");
  if (f.size() > 6)
    throw SizeError("enumeration is limited to posets with at most 6 elements (got " +
                    std::to_string(f.size()) + ")");
  if (f.total() > 16)
    throw SizeError("enumeration is limited to total mass at most 16 (got " +
                    rational_to_string(f.total()) + "); trim the instance to desk scale");
  if (max_terms < 0) throw ContractError("max_terms must be nonnegative");

  const PatternPoset& poset = f.poset();
  int n = f.size();

  std::vector<Rational> residual = f.values();
  int nonzero = 0;
  for (const auto& v : residual)
    if (v > 0) ++nonzero;

  std::vector<MonotonicDecomposition> out;
  std::vector<MonotonicTerm> current;

  std::vector<std::vector<int>> upper(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) upper[static_cast<std::size_t>(y)] = poset.upper_set(y).to_indices();

  // Candidate terms at one root, built position by position along the upper
  // set; the monotone cap at x is the least value already chosen strictly
  // below x. Values are tried in ascending order, so candidates appear in
  // term_less order and the outer search can emit each term multiset exactly
  // once as a non-decreasing sequence.
  struct Search {
    const PatternPoset& poset;
    std::vector<Rational>& residual;
    int& nonzero;
    int max_terms;
    std::vector<MonotonicTerm>& current;
    std::vector<MonotonicDecomposition>& out;
    const CountFunction& f;
    const std::vector<std::vector<int>>& upper;

    void run(const MonotonicTerm* min_term) {
      if (nonzero == 0) {
        out.push_back({f, current});
        return;  // every further term would need positive mass
      }
      if (static_cast<int>(current.size()) == max_terms) return;
      int start_root = min_term ? min_term->root : 0;
      for (int y = start_root; y < poset.size(); ++y) {
        if (residual[static_cast<std::size_t>(y)] < 1) continue;
        MonotonicTerm t;
        t.root = y;
        extend(t, 0, min_term && min_term->root == y ? min_term : nullptr);
      }
    }

    // position k within upper[root]; bound == least chosen value below.
    void extend(MonotonicTerm& t, std::size_t k, const MonotonicTerm* min_term) {
      const auto& us = upper[static_cast<std::size_t>(t.root)];
      if (k == us.size()) {
        if (t.g.empty()) return;                                  // zero term
        if (min_term && term_less(t, *min_term)) return;          // keep sequence non-decreasing
        apply(t);
        run(&t);
        unapply(t);
        return;
      }
      int x = us[k];
      Rational cap = residual[static_cast<std::size_t>(x)];
      poset.strict_down(x).for_each_set([&](int w) {
        if (poset.leq(t.root, w)) {
          Rational below = t.value_at(w);
          if (below < cap) cap = below;
        }
      });
      long cap_i = static_cast<long>(numerator(cap).convert_to<long long>());
      for (long v = 0; v <= cap_i; ++v) {
        if (v > 0) t.g.emplace_back(x, Rational(v));
        extend(t, k + 1, min_term);
        if (v > 0) t.g.pop_back();
      }
    }

    void apply(const MonotonicTerm& t) {
      for (const auto& [x, v] : t.g) {
        residual[static_cast<std::size_t>(x)] -= v;
        if (residual[static_cast<std::size_t>(x)] == 0) --nonzero;
      }
      current.push_back(t);
    }

    void unapply(const MonotonicTerm& t) {
      current.pop_back();
      for (const auto& [x, v] : t.g) {
        if (residual[static_cast<std::size_t>(x)] == 0) ++nonzero;
        residual[static_cast<std::size_t>(x)] += v;
      }
    }
  };

  Search search{poset, residual, nonzero, max_terms, current, out, f, upper};
  search.run(nullptr);
  return out;
}

OracleVerdict oracle_verdict(const CountFunction& f, int max_terms) {
  OracleVerdict v;
  MonotonicDecomposition greedy = decompose(f);
  v.greedy_terms = static_cast<int>(greedy.terms.size());
  v.lower_bound = dialect_count_lower_bound(greedy);

  std::vector<MonotonicDecomposition> all = enumerate_integer_decompositions(f, max_terms);
  v.enumerated = all.size();

  // Minimal in the refinement preorder: anything the greedy output refines
  // refines it back, so nothing sits strictly below it.
  v.greedy_minimal = true;
  for (const auto& d : all)
    if (refines(greedy, d) && !refines(d, greedy)) v.greedy_minimal = false;

  // The rigidity statements quantify over the fewest-term decompositions,
  // not over everything that happens to refine nothing else.
  std::size_t fewest = 0;
  for (const auto& d : all)
    if (fewest == 0 || d.terms.size() < fewest) fewest = d.terms.size();
  std::vector<const MonotonicDecomposition*> minimal;
  for (const auto& d : all)
    if (!d.terms.empty() && d.terms.size() == fewest) minimal.push_back(&d);
  v.minimal_count = minimal.size();

  v.roots_shared = true;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<int> roots;
    for (const auto& t : minimal[i]->terms) roots.push_back(t.root);
    std::sort(roots.begin(), roots.end());
    if (i == 0)
      v.shared_roots = roots;
    else if (roots != v.shared_roots)
      v.roots_shared = false;
  }
  return v;
}

}  // namespace dialect
