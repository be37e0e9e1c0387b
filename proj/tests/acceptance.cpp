// Numbered acceptance checks for the shipped behavior. Each check prints one
// PASS/FAIL line with its wall time; the process exits nonzero when any
// check fails. Budgets and tolerances are the constants right below.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dialect/decompose.hpp"
#include "dialect/error.hpp"
#include "dialect/harness.hpp"
#include "dialect/io.hpp"
#include "dialect/model.hpp"
#include "dialect/report.hpp"

#include "test_util.hpp"

using namespace dialect;
using testutil::make_f;

namespace {

constexpr double kExampleBudgetMs = 1.0;     // check 1: one decomposition call
constexpr double kBoundOracleBudgetS = 60.0; // check 3: whole sweep
constexpr double kRefineOracleBudgetS = 300.0; // checks 4-6: family build + scans
constexpr double kRecoveryBudgetS = 30.0;    // check 7: whole sweep
constexpr int kBoundOraclePosets = 200;      // check 3: random labeled posets
constexpr int kOracleFamilySize = 120;       // checks 4-6: random instances kept
constexpr int kRecoveryTrials = 50;          // check 7
constexpr int kRecoveryPassFloor = 48;       // check 7: >= 95% of 50 trials
constexpr int kSampledFiles = 10000;         // check 7: corpus size per trial
const std::vector<long> kThresholds{1, 5, 25};  // check 8

const std::string kFixtures = TEST_FIXTURE_DIR;
const std::string kCli = DIALECT_CLI_PATH;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool fail(std::string& why, const std::string& message) {
  if (why.empty()) why = message;
  return false;
}

// --- fixtures ---------------------------------------------------------------

// The four subsets of two messages; counts 0 / 4 / 4 / 5 bottom to top.
PosetPtr square_poset() {
  MessageUniverse u({"B", "C"});
  return share(build_poset({MessagePattern::of(2, {}), MessagePattern::of(2, {0}),
                            MessagePattern::of(2, {1}), MessagePattern::of(2, {0, 1})},
                           u));
}

CountFunction square_f() { return make_f(square_poset(), {0, 4, 4, 5}); }

HarnessConfig fixture_config() {
  HarnessConfig c;
  c.parsers.push_back({"alpha", "sh " + kFixtures + "/parser_alpha.sh {file}", 10.0});
  c.parsers.push_back({"beta", "sh " + kFixtures + "/parser_beta.sh {file}", 10.0});
  c.rules.push_back({"alpha", "alpha-error", MessageRule::Kind::regex_on_output, "^ERROR"});
  c.rules.push_back({"alpha", "alpha-corrupt", MessageRule::Kind::exit_code_nonzero, ""});
  c.rules.push_back({"beta", "beta-warning", MessageRule::Kind::regex_on_output,
                     "warning detected"});
  c.rules.push_back({"beta", "beta-fail", MessageRule::Kind::exit_code_nonzero, ""});
  c.rules.push_back({"alpha", "alpha-any", MessageRule::Kind::regex_on_output, "."});
  return c;
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> files;
  for (char c : {'a', 'b', 'c', 'd', 'e'})
    files.push_back(kFixtures + "/corpus/" + c + ".txt");
  return files;
}

// columns in rule order: alpha-error alpha-corrupt beta-warning beta-fail alpha-any
const std::vector<std::pair<std::string, std::vector<int>>> kExpectedRows = {
    {"a.txt", {0, 0, 0, 0, 1}},
    {"b.txt", {1, 0, 0, 0, 1}},
    {"c.txt", {0, 1, 0, 0, 1}},
    {"d.txt", {1, 0, 1, 0, 1}},
    {"e.txt", {0, 1, 1, 1, 1}},
};

const FileMessageMatrix& fixture_matrix() {
  static FileMessageMatrix m = run_harness(fixture_config(), corpus_files(), 1);
  return m;
}

// Corpora accumulated by earlier checks and re-screened by check 8.
std::vector<CountFunction>& shared_corpora() {
  static std::vector<CountFunction> corpora;
  return corpora;
}

// --- check 1: the worked two-root example ----------------------------------

bool check_worked_example(std::string& why) {
  CountFunction f = square_f();
  (void)decompose(f);  // warm caches before the timed call
  Clock::time_point t0 = Clock::now();
  MonotonicDecomposition d = decompose(f);
  double ms = ms_since(t0);

  if (d.terms.size() != 2) return fail(why, "expected exactly two terms");
  std::set<int> roots{d.terms[0].root, d.terms[1].root};
  if (roots != std::set<int>{1, 2}) return fail(why, "roots are not the two singletons");
  if (!testutil::oracle_reconstructs(d)) return fail(why, "terms do not sum back to f");
  if (d.terms[0].value_at(3) + d.terms[1].value_at(3) != Rational(5))
    return fail(why, "the top element's mass is not split as 5");
  for (const MonotonicTerm& t : d.terms)
    if (!is_valid_term(f.poset(), t)) return fail(why, "a term is not monotonic on its domain");

  // Both displayed splits of the top mass occur among the two-term
  // decompositions.
  bool saw_2_3 = false, saw_3_2 = false;
  for (const MonotonicDecomposition& e : enumerate_integer_decompositions(f, 2)) {
    if (e.terms.size() != 2) continue;
    std::map<int, Rational> at_top;
    for (const MonotonicTerm& t : e.terms) at_top[t.root] = t.value_at(3);
    if (!at_top.count(1) || !at_top.count(2)) continue;
    if (at_top[1] == Rational(2) && at_top[2] == Rational(3)) saw_2_3 = true;
    if (at_top[1] == Rational(3) && at_top[2] == Rational(2)) saw_3_2 = true;
  }
  if (!saw_2_3 || !saw_3_2) return fail(why, "a displayed top split is missing");

  if (ms >= kExampleBudgetMs)
    return fail(why, "decomposition took " + std::to_string(ms) + " ms");
  shared_corpora().push_back(f);
  return true;
}

// --- check 2: the square case table under both tie-break orders -------------

bool check_case_table(std::string& why) {
  PosetPtr p = square_poset();
  const DecomposeOptions b_first{{0, 1, 2, 3}, true};
  const DecomposeOptions c_first{{0, 2, 1, 3}, true};

  for (long fb = 0; fb <= 5; ++fb)
    for (long fc = 0; fc <= 5; ++fc)
      for (long fd = 0; fd <= 5; ++fd) {
        CountFunction f = make_f(p, {0, fb, fc, fd});
        MonotonicDecomposition db = decompose(f, b_first);
        MonotonicDecomposition dc = decompose(f, c_first);
        std::string cell = " at (" + std::to_string(fb) + "," + std::to_string(fc) + "," +
                           std::to_string(fd) + ")";
        if (!reconstructs(db) || !reconstructs(dc))
          return fail(why, "reconstruction failed" + cell);

        if (fb == 0 && fc == 0) {
          std::size_t expected = fd > 0 ? 1 : 0;
          if (db.terms.size() != expected) return fail(why, "bare-top term count" + cell);
          if (fd > 0 && !(db.terms[0].root == 3 && db.terms[0].g.size() == 1 &&
                          db.terms[0].value_at(3) == Rational(fd)))
            return fail(why, "bare-top term shape" + cell);
        } else if (fb == 0 || fc == 0) {
          long side = fb == 0 ? fc : fb;
          int side_root = fb == 0 ? 2 : 1;
          if (fd > side) {
            // The top keeps only the residue above the occupied side.
            if (db.terms.size() != 2) return fail(why, "residue term count" + cell);
            bool found = false;
            for (const MonotonicTerm& t : db.terms)
              found |= t.root == 3 && t.g.size() == 1 && t.value_at(3) == Rational(fd - side);
            if (!found) return fail(why, "missing top residue term" + cell);
          } else {
            if (db.terms.size() != 1) return fail(why, "single-side term count" + cell);
            if (db.terms[0].root != side_root || db.terms[0].value_at(3) != Rational(fd))
              return fail(why, "single-side term shape" + cell);
          }
        } else {
          if (db.terms.size() != dc.terms.size())
            return fail(why, "tie-break orders disagree on term count" + cell);
        }
      }
  return true;
}

// --- check 3: greatest monotone lower bound vs exhaustive search ------------

bool check_bound_oracle(std::string& why) {
  Clock::time_point t0 = Clock::now();
  std::mt19937_64 rng(20260301);
  for (int trial = 0; trial < kBoundOraclePosets; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    PosetPtr p = testutil::random_poset(rng, n, 5);

    std::vector<long> values(static_cast<std::size_t>(n), 0);
    while (true) {
      CountFunction f = make_f(p, values);
      BoundedMap lib = max_monotonic_lower_bound(f, p->all());
      std::vector<long> best = testutil::oracle_mmlb_enumerated(*p, values);
      if (lib.size() != static_cast<std::size_t>(n))
        return fail(why, "bound domain size mismatch");
      for (int i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(i);
        if (lib[idx].first != i || lib[idx].second != Rational(best[idx]))
          return fail(why, "bound disagrees with exhaustive search on trial " +
                               std::to_string(trial));
      }
      // odometer over all value vectors with entries 0..3
      int pos = 0;
      while (pos < n && values[static_cast<std::size_t>(pos)] == 3) {
        values[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == n) break;
      ++values[static_cast<std::size_t>(pos)];
    }
  }
  double s = ms_since(t0) / 1000.0;
  if (s >= kBoundOracleBudgetS) return fail(why, "sweep took " + std::to_string(s) + " s");
  return true;
}

// --- checks 4-6: the enumerated-decomposition family ------------------------

struct OracleInstance {
  CountFunction f;
  MonotonicDecomposition greedy;
  std::vector<MonotonicDecomposition> all;  // irredundant, budget = total mass
  long mass = 0;
};

const std::vector<OracleInstance>& oracle_family() {
  static std::vector<OracleInstance> family = [] {
    std::vector<OracleInstance> out;
    auto add = [&out](CountFunction f) {
      long mass = to_int64_checked(f.total());
      if (mass <= 0) return;
      OracleInstance inst{f, decompose(f),
                          enumerate_integer_decompositions(f, static_cast<int>(mass)), mass};
      out.push_back(std::move(inst));
    };

    add(square_f());
    PosetPtr sq = square_poset();
    add(make_f(sq, {0, 0, 0, 5}));
    add(make_f(sq, {0, 0, 2, 5}));
    add(make_f(sq, {0, 0, 5, 3}));
    add(make_f(sq, {0, 3, 2, 5}));
    add(make_f(sq, {0, 2, 2, 2}));

    std::mt19937_64 rng(20260302);
    while (out.size() < static_cast<std::size_t>(kOracleFamilySize)) {
      int n = 1 + static_cast<int>(rng() % 5);
      PosetPtr p = testutil::random_poset(rng, n, 5);
      CountFunction f = testutil::random_f(rng, p, 3);
      long mass = to_int64_checked(f.total());
      if (mass < 1 || mass > 10) continue;
      add(f);
    }
    return out;
  }();
  return family;
}

// Refinement is a preorder, not a partial order: distinct decompositions can
// refine each other by hiding their terms under different witnesses. Minimal
// therefore means nothing strictly below: whatever the greedy output
// refines must refine it back.
bool check_minimal_refinement(std::string& why) {
  Clock::time_point t0 = Clock::now();
  for (std::size_t i = 0; i < oracle_family().size(); ++i) {
    const OracleInstance& inst = oracle_family()[i];
    std::string where = " on instance " + std::to_string(i);
    bool seen_self = false;
    for (const MonotonicDecomposition& e : inst.all) {
      if (equal_up_to_reorder(inst.greedy, e)) {
        seen_self = true;
        continue;
      }
      if (refines(inst.greedy, e) && !refines(e, inst.greedy))
        return fail(why, "greedy output refines a strictly coarser decomposition" + where);
    }
    if (!seen_self) return fail(why, "greedy output missing from the enumeration" + where);
  }
  double s = ms_since(t0) / 1000.0;
  if (s >= kRefineOracleBudgetS) return fail(why, "scan took " + std::to_string(s) + " s");
  return true;
}

bool check_root_rigidity(std::string& why) {
  for (std::size_t i = 0; i < oracle_family().size(); ++i) {
    const OracleInstance& inst = oracle_family()[i];
    std::string where = " on instance " + std::to_string(i);

    std::size_t fewest = SIZE_MAX;
    for (const MonotonicDecomposition& e : inst.all) fewest = std::min(fewest, e.terms.size());
    std::vector<int> shared;
    bool first = true;
    for (const MonotonicDecomposition& e : inst.all) {
      if (e.terms.size() != fewest) continue;
      std::vector<int> roots;
      for (const MonotonicTerm& t : e.terms) roots.push_back(t.root);
      std::sort(roots.begin(), roots.end());
      if (first) {
        shared = roots;
        first = false;
      } else if (roots != shared) {
        return fail(why, "fewest-term root multisets differ" + where);
      }
    }
    if (inst.greedy.terms.size() != fewest)
      return fail(why, "greedy output is not fewest-term" + where);
    if (dialect_count_lower_bound(inst.greedy) != static_cast<int>(fewest))
      return fail(why, "lower bound does not equal the fewest term count" + where);
  }
  return true;
}

bool check_maximal_refinement(std::string& why) {
  for (std::size_t i = 0; i < oracle_family().size(); ++i) {
    const OracleInstance& inst = oracle_family()[i];
    std::string where = " on instance " + std::to_string(i);
    MonotonicDecomposition m = max_refined_decomposition(inst.f);
    if (m.terms.size() != static_cast<std::size_t>(inst.mass))
      return fail(why, "expansion does not have one term per unit of mass" + where);
    if (!testutil::oracle_reconstructs(m)) return fail(why, "expansion does not sum to f" + where);
    if (!refines(m, inst.greedy)) return fail(why, "expansion does not refine greedy" + where);
    for (const MonotonicDecomposition& e : inst.all)
      if (!refines(m, e)) return fail(why, "expansion misses an enumerated target" + where);
  }
  return true;
}

// --- check 7: planted mixtures ----------------------------------------------

MixtureSpec random_mixture(std::mt19937_64& rng) {
  int width = 6 + static_cast<int>(rng() % 7);
  int k = 2 + static_cast<int>(rng() % 4);

  std::vector<int> order(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::set<int> privates(order.begin(), order.begin() + k);

  std::vector<DialectSpec> dialects;
  long weight_sum = 0;
  std::vector<long> raw_weights;
  for (int i = 0; i < k; ++i) {
    raw_weights.push_back(10 + static_cast<long>(rng() % 9));
    weight_sum += raw_weights.back();
  }
  for (int i = 0; i < k; ++i) {
    std::vector<int> required{order[static_cast<std::size_t>(i)]};
    for (int m = 0; m < width; ++m)
      if (!privates.count(m) && rng() % 3 == 0) required.push_back(m);

    std::map<int, Rational> marginals;
    for (int m = 0; m < width && marginals.size() < 4; ++m) {
      if (privates.count(m)) continue;
      if (std::find(required.begin(), required.end(), m) != required.end()) continue;
      if (rng() % 2 == 0) marginals[m] = Rational(5 + static_cast<long>(rng() % 31), 100);
    }
    MessagePattern req(width);
    for (int m : required) req.set(m);
    dialects.push_back(
        {req, marginals, Rational(raw_weights[static_cast<std::size_t>(i)], weight_sum)});
  }
  std::vector<std::string> names;
  for (int m = 0; m < width; ++m) names.push_back("m" + std::to_string(m));
  return MixtureSpec(MessageUniverse(names), dialects);
}

bool check_planted_recovery(std::string& why) {
  Clock::time_point t0 = Clock::now();
  std::mt19937_64 rng(20260303);
  int sampled_hits = 0;

  for (int trial = 0; trial < kRecoveryTrials; ++trial) {
    MixtureSpec mixture = random_mixture(rng);
    std::string where = " on trial " + std::to_string(trial);
    std::set<std::vector<int>> planted;
    for (const DialectSpec& d : mixture.dialects()) planted.insert(d.required.indices());

    // Exact expected counts must hand back exactly the planted roots.
    PosetPtr poset = share(build_poset(support_patterns(mixture), mixture.universe()));
    CountFunction expected = expected_count_function(mixture, Rational(kSampledFiles), poset);
    MonotonicDecomposition d = decompose(expected);
    std::set<std::vector<int>> roots;
    for (const MonotonicTerm& t : d.terms)
      roots.insert(expected.poset().element(t.root).indices());
    if (d.terms.size() != mixture.dialects().size())
      return fail(why, "expected counts produced extra terms" + where);
    if (roots != planted) return fail(why, "expected counts missed a planted root" + where);

    // A finite sample should usually keep the planted roots on top.
    std::vector<MessagePattern> patterns = sample_corpus(mixture, kSampledFiles, rng());
    FileMessageMatrix matrix;
    matrix.universe = mixture.universe();
    for (std::size_t i = 0; i < patterns.size(); ++i)
      matrix.rows.push_back({"s" + std::to_string(i), std::move(patterns[i])});
    auto [sample_poset, sampled] = aggregate_counts(matrix);
    MonotonicDecomposition ds = decompose(sampled);
    shared_corpora().push_back(sampled);

    std::vector<std::pair<Rational, int>> ranked;
    for (const MonotonicTerm& t : ds.terms) ranked.emplace_back(t.root_count(), t.root);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return b.first < a.first; });
    std::set<std::vector<int>> top;
    for (std::size_t i = 0; i < planted.size() && i < ranked.size(); ++i)
      top.insert(sampled.poset().element(ranked[i].second).indices());
    if (top == planted) ++sampled_hits;

    shared_corpora().push_back(expected);
  }

  if (sampled_hits < kRecoveryPassFloor)
    return fail(why, "only " + std::to_string(sampled_hits) + " of " +
                         std::to_string(kRecoveryTrials) + " sampled corpora recovered the roots");
  double s = ms_since(t0) / 1000.0;
  if (s >= kRecoveryBudgetS) return fail(why, "sweep took " + std::to_string(s) + " s");
  return true;
}

// --- check 8: dialect rows never outnumber patterns -------------------------

bool check_consolidation(std::string& why) {
  std::vector<CountFunction> corpora = shared_corpora();
  PosetPtr sq = square_poset();
  corpora.push_back(make_f(sq, {0, 0, 2, 5}));
  corpora.push_back(make_f(sq, {0, 3, 2, 5}));
  corpora.push_back(aggregate_counts(fixture_matrix()).second);
  corpora.push_back(
      aggregate_counts(invert_frequent_messages(fixture_matrix(), 0.5).first).second);

  for (std::size_t c = 0; c < corpora.size(); ++c) {
    const CountFunction& f = corpora[c];
    MonotonicDecomposition d = decompose(f);
    for (long t : kThresholds) {
      std::size_t dialects = 0, patterns = 0;
      for (const MonotonicTerm& term : d.terms)
        if (term.root_count() >= Rational(t)) ++dialects;
      for (int x = 0; x < f.size(); ++x)
        if (f.at(x) >= Rational(t)) ++patterns;
      if (dialects > patterns)
        return fail(why, "corpus " + std::to_string(c) + " has " + std::to_string(dialects) +
                             " dialects but " + std::to_string(patterns) + " patterns at " +
                             std::to_string(t));
    }
  }
  return true;
}

// --- check 9: scripted parsers and inversion --------------------------------

bool check_harness_fixture(std::string& why) {
  const FileMessageMatrix& m = fixture_matrix();
  if (m.universe.names() !=
      std::vector<std::string>{"alpha-error", "alpha-corrupt", "beta-warning", "beta-fail",
                               "alpha-any"})
    return fail(why, "message universe is not in rule order");
  if (m.rows.size() != kExpectedRows.size()) return fail(why, "row count mismatch");
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    const auto& [suffix, bits] = kExpectedRows[r];
    const FileMessageMatrix::Row& row = m.rows[r];
    if (row.file_id.size() < suffix.size() ||
        row.file_id.compare(row.file_id.size() - suffix.size(), suffix.size(), suffix) != 0)
      return fail(why, "row " + std::to_string(r) + " is not " + suffix);
    for (int i = 0; i < m.universe.size(); ++i)
      if (row.pattern.test(i) != (bits[static_cast<std::size_t>(i)] != 0))
        return fail(why, "bit mismatch in " + suffix + " column " + std::to_string(i));
  }

  auto [inverted, names] = invert_frequent_messages(m, 0.5);
  if (names != std::vector<std::string>{"alpha-any"})
    return fail(why, "inversion did not log exactly the all-ones column");
  if (inverted.universe.index_of("absence-of-alpha-any") < 0)
    return fail(why, "inverted column was not renamed");
  for (int i = 0; i < inverted.universe.size(); ++i) {
    std::size_t on = 0;
    for (const FileMessageMatrix::Row& row : inverted.rows)
      if (row.pattern.test(i)) ++on;
    if (2 * on > inverted.rows.size())
      return fail(why, "column " + inverted.universe.name(i) + " stays above half");
  }
  return true;
}

// --- check 10: command-line pipeline equals the in-process pipeline ---------

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("acc_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  int status = std::system((kCli + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128;
}

bool check_pipeline_identity(std::string& why) {
  MessageUniverse u({"m0", "m1", "m2", "m3"});
  DialectSpec left{MessagePattern::of(4, {0, 1}), {{2, Rational(1, 4)}}, Rational(3, 5)};
  DialectSpec right{MessagePattern::of(4, {2, 3}), {{0, Rational(1, 5)}}, Rational(2, 5)};
  MixtureSpec mixture(u, {left, right});
  const std::uint64_t seed = 20260822;
  const int n_files = 500;

  std::string spec_path = temp_path("mixture.json");
  std::string corpus_path = temp_path("corpus.json");
  std::string report_path = temp_path("report.json");
  write_file(spec_path, mixture_to_json(mixture).dump(2) + "\n");

  if (run_cli("synth --input " + spec_path + " --n-files " + std::to_string(n_files) +
              " --seed " + std::to_string(seed) + " --output " + corpus_path +
              " >/dev/null 2>&1") != 0)
    return fail(why, "synth exited nonzero");
  if (run_cli("decompose --input " + corpus_path + " --min-count 1 --format json --output " +
              report_path + " >/dev/null 2>&1") != 0)
    return fail(why, "decompose exited nonzero");

  std::vector<MessagePattern> patterns = sample_corpus(mixture, n_files, seed);
  FileMessageMatrix matrix;
  matrix.universe = mixture.universe();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "file-%06zu", i);
    matrix.rows.push_back({id, std::move(patterns[i])});
  }
  auto [poset, f] = aggregate_counts(matrix);
  DecompositionReport report = build_report(decompose(f), Rational(1));
  std::string expected = report_to_json(report).dump(2) + "\n";

  if (slurp(report_path) != expected)
    return fail(why, "command-line report differs from the in-process report");
  return true;
}

// --- runner -----------------------------------------------------------------

struct Outcome {
  int failures = 0;
};

void run_check(Outcome& outcome, int number, const char* label,
               bool (*fn)(std::string&)) {
  Clock::time_point t0 = Clock::now();
  std::string why;
  bool ok = false;
  try {
    ok = fn(why);
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  double ms = ms_since(t0);
  std::printf("[%s] %2d %s (%.1f ms)\n", ok ? "PASS" : "FAIL", number, label, ms);
  if (!ok) {
    if (!why.empty()) std::printf("          %s\n", why.c_str());
    ++outcome.failures;
  }
}

}  // namespace

int main() {
  Outcome outcome;
  run_check(outcome, 1, "worked example: two exact monotone terms within the time budget",
            check_worked_example);
  run_check(outcome, 2, "square case table holds under both tie-break orders",
            check_case_table);
  run_check(outcome, 3, "greatest monotone lower bound matches exhaustive search",
            check_bound_oracle);
  run_check(outcome, 4, "greedy output refines nothing strictly below it",
            check_minimal_refinement);
  run_check(outcome, 5, "fewest-term decompositions share one root multiset at the lower bound",
            check_root_rigidity);
  run_check(outcome, 6, "point-mass expansion refines greedy and every enumerated decomposition",
            check_maximal_refinement);
  run_check(outcome, 7, "planted mixtures are recovered, exactly and from samples",
            check_planted_recovery);
  run_check(outcome, 8, "dialect rows never outnumber patterns at any threshold",
            check_consolidation);
  run_check(outcome, 9, "scripted parsers reproduce the hand-computed matrix and inversion",
            check_harness_fixture);
  run_check(outcome, 10, "command-line pipeline equals the in-process pipeline byte for byte",
            check_pipeline_identity);

  if (outcome.failures == 0)
    std::printf("all 10 checks passed\n");
  else
    std::printf("%d check(s) failed\n", outcome.failures);
  return outcome.failures == 0 ? 0 : 1;
}
