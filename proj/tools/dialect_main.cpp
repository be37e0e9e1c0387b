// Command-line front end: every subcommand is a thin composition of library
// calls, so the same inputs give byte-identical results through the API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dialect/decompose.hpp"
#include "dialect/error.hpp"
#include "dialect/harness.hpp"
#include "dialect/io.hpp"
#include "dialect/model.hpp"
#include "dialect/report.hpp"

namespace {

using namespace dialect;

struct LoadedCounts {
  PosetPtr poset;
  CountFunction f;
};

bool csv_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

// Accepts a matrix (CSV or JSON with "rows") or an aggregated counts
// document (JSON with "patterns"); matrices are aggregated on the fly.
LoadedCounts load_counts_any(const std::string& path) {
  if (csv_path(path)) {
    auto [poset, f] = aggregate_counts(load_matrix(path));
    return {std::move(poset), std::move(f)};
  }
  nlohmann::json j = parse_json_file(path);
  if (j.is_object() && j.contains("patterns")) {
    auto [poset, f] = counts_to_function(pattern_counts_from_json(j));
    return {std::move(poset), std::move(f)};
  }
  if (j.is_object() && j.contains("rows")) {
    auto [poset, f] = aggregate_counts(matrix_from_json(j));
    return {std::move(poset), std::move(f)};
  }
  throw ParseError(path + ": expected a matrix (\"rows\") or a counts (\"patterns\") document");
}

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty())
    std::cout << content;
  else
    write_file(output_path, content);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void run_ingest(const std::string& input, const std::string& output,
                const std::vector<std::string>& files, int workers, double threshold,
                bool no_invert) {
  HarnessConfig config = load_harness_config(input);
  FileMessageMatrix matrix = run_harness(config, files, workers);
  std::cerr << "ingested " << matrix.rows.size() << " file(s) against " << config.parsers.size()
            << " parser(s), " << matrix.universe.size() << " message(s)\n";
  if (!no_invert) {
    double t = threshold >= 0 ? threshold : config.inversion_threshold;
    auto [inverted_matrix, inverted_names] = invert_frequent_messages(matrix, t);
    matrix = std::move(inverted_matrix);
    if (!inverted_names.empty()) {
      std::cerr << "inverted " << inverted_names.size() << " frequent message(s):";
      for (const std::string& name : inverted_names) std::cerr << ' ' << name;
      std::cerr << "\n";
    }
  }
  if (output.empty())
    std::cout << matrix_to_json(matrix).dump(2) << "\n";
  else
    save_matrix(matrix, output);
}

void run_patterns(const std::string& input, const std::string& output, std::int64_t min_count,
                  const std::string& format) {
  LoadedCounts lc = load_counts_any(input);
  std::vector<PatternRow> rows = pattern_table(lc.f, Rational(min_count));
  std::ostringstream out;
  if (format == "json")
    out << pattern_table_to_json(rows, lc.f.poset().universe()).dump(2) << "\n";
  else if (format == "csv")
    render_pattern_table_csv(rows, lc.f.poset().universe(), out);
  else
    render_pattern_table_text(rows, lc.f.poset().universe(), out);
  emit(output, out.str());
}

void run_decompose(const std::string& input, const std::string& output, std::int64_t min_count,
                   const std::string& format, const std::string& sort,
                   const std::string& annotations_path) {
  LoadedCounts lc = load_counts_any(input);
  MonotonicDecomposition d = decompose(lc.f);
  AnnotationMap annotations;
  if (!annotations_path.empty())
    annotations = annotations_from_json(parse_json_file(annotations_path));
  DecompositionReport report =
      build_report(d, Rational(min_count), annotations,
                   sort == "count" ? ReportSort::count : ReportSort::discovery);
  std::ostringstream out;
  if (format == "json")
    out << report_to_json(report).dump(2) << "\n";
  else if (format == "csv")
    render_report_csv(report, out);
  else
    render_report_text(report, out);
  emit(output, out.str());
}

void run_hasse(const std::string& input, const std::string& output) {
  LoadedCounts lc = load_counts_any(input);
  std::ostringstream out;
  write_hasse_dot(lc.f, out);
  emit(output, out.str());
}

void run_synth(const std::string& input, const std::string& output, int n_files,
               std::uint64_t seed, const std::string& emit_kind) {
  MixtureSpec mixture = load_mixture(input);
  std::vector<MessagePattern> patterns = sample_corpus(mixture, n_files, seed);

  FileMessageMatrix matrix;
  matrix.universe = mixture.universe();
  matrix.rows.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "file-%06zu", i);
    matrix.rows.push_back({id, std::move(patterns[i])});
  }
  matrix.provenance = {{"generator", kSampleGenerator},
                      {"seed", seed},
                      {"n_files", n_files},
                      {"spec_digest", json_digest(mixture_to_json(mixture))}};

  if (emit_kind == "patterns") {
    auto [poset, f] = aggregate_counts(matrix);
    PatternCounts counts = counts_from_function(f, matrix.provenance);
    if (output.empty())
      std::cout << pattern_counts_to_json(counts).dump(2) << "\n";
    else
      save_pattern_counts(counts, output);
  } else if (output.empty()) {
    std::cout << matrix_to_json(matrix).dump(2) << "\n";
  } else {
    save_matrix(matrix, output);
  }
}

void run_oracle(const std::string& input, std::int64_t max_terms) {
  LoadedCounts lc = load_counts_any(input);
  if (max_terms < 0) max_terms = to_int64_checked(lc.f.total());
  OracleVerdict v = oracle_verdict(lc.f, static_cast<int>(max_terms));

  std::cout << "irredundant decompositions with <= " << max_terms << " term(s): " << v.enumerated
            << "\n";
  std::cout << "fewest-term decompositions among them: " << v.minimal_count << "\n";
  std::cout << "greedy output (" << v.greedy_terms
            << " term(s)) minimally refined: " << yes_no(v.greedy_minimal) << "\n";
  std::cout << "all fewest-term decompositions share one root set: " << yes_no(v.roots_shared)
            << "\n";
  if (v.roots_shared && !v.shared_roots.empty()) {
    std::cout << "shared roots:";
    for (int r : v.shared_roots)
      std::cout << ' ' << lc.f.poset().element(r).to_string(lc.f.poset().universe());
    std::cout << "\n";
  }
  std::cout << "lower bound on dialect count: " << v.lower_bound << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partition a file corpus into behavioral format dialects"};
  app.require_subcommand(1);

  // ingest
  std::string in_config, in_output;
  std::vector<std::string> in_files;
  int in_workers = 1;
  double in_threshold = -1;
  bool in_no_invert = false;
  auto* ingest = app.add_subcommand("ingest", "run configured parsers over files, emit the matrix");
  ingest->add_option("--input", in_config, "harness config JSON")->required();
  ingest->add_option("--output", in_output, "matrix path (.csv or JSON); stdout when omitted");
  ingest->add_option("--workers", in_workers, "concurrent parser processes");
  ingest->add_option("--threshold", in_threshold, "inversion frequency threshold (overrides config)");
  ingest->add_flag("--no-invert", in_no_invert, "keep frequent messages as-is");
  ingest->add_option("files", in_files, "corpus files")->required();
  ingest->callback(
      [&] { run_ingest(in_config, in_output, in_files, in_workers, in_threshold, in_no_invert); });

  // patterns
  std::string pa_input, pa_output, pa_format = "text";
  std::int64_t pa_min = 5;
  auto* patterns = app.add_subcommand("patterns", "table of pattern file counts, descending");
  patterns->add_option("--input", pa_input, "matrix or counts file")->required();
  patterns->add_option("--output", pa_output, "write here instead of stdout");
  patterns->add_option("--min-count", pa_min, "smallest count to list");
  patterns->add_option("--format", pa_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  patterns->callback([&] { run_patterns(pa_input, pa_output, pa_min, pa_format); });

  // decompose
  std::string de_input, de_output, de_format = "text", de_sort = "discovery", de_annotations;
  std::int64_t de_min = 5;
  auto* dec = app.add_subcommand("decompose", "dialect report from the monotonic decomposition");
  dec->add_option("--input", de_input, "matrix or counts file")->required();
  dec->add_option("--output", de_output, "write here instead of stdout");
  dec->add_option("--min-count", de_min, "smallest root count to report");
  dec->add_option("--format", de_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  dec->add_option("--sort", de_sort, "row order")->check(CLI::IsMember({"discovery", "count"}));
  dec->add_option("--annotations", de_annotations, "sidecar JSON of required-set annotations");
  dec->callback([&] { run_decompose(de_input, de_output, de_min, de_format, de_sort, de_annotations); });

  // hasse
  std::string ha_input, ha_output;
  auto* hasse = app.add_subcommand("hasse", "Hasse diagram of observed patterns as DOT");
  hasse->add_option("--input", ha_input, "matrix or counts file")->required();
  hasse->add_option("--output", ha_output, "DOT path; stdout when omitted");
  hasse->callback([&] { run_hasse(ha_input, ha_output); });

  // synth
  std::string sy_input, sy_output, sy_emit = "matrix";
  int sy_n = 0;
  std::uint64_t sy_seed = 0;
  auto* synth = app.add_subcommand("synth", "sample a corpus from a mixture spec");
  synth->add_option("--input", sy_input, "mixture spec JSON")->required();
  synth->add_option("--output", sy_output, "output path; stdout when omitted");
  synth->add_option("--n-files", sy_n, "number of files to draw")->required();
  synth->add_option("--seed", sy_seed, "RNG seed");
  synth->add_option("--emit", sy_emit, "matrix or patterns")
      ->check(CLI::IsMember({"matrix", "patterns"}));
  synth->callback([&] { run_synth(sy_input, sy_output, sy_n, sy_seed, sy_emit); });

  // oracle
  std::string or_input;
  std::int64_t or_max = -1;
  auto* oracle = app.add_subcommand("oracle", "exhaustive check of a desk-sized instance");
  oracle->add_option("--input", or_input, "matrix or counts file")->required();
  oracle->add_option("--max-terms", or_max, "term budget for enumeration (default: total mass)");
  oracle->callback([&] { run_oracle(or_input, or_max); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
