#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialect/decompose.hpp"
#include "dialect/pattern.hpp"

namespace dialect {

// One candidate dialect row. root_count is the residual mass the
// decomposition assigned at the root, which can differ from the number of
// files showing exactly the root pattern when an earlier term already
// covers it; exact_pattern_count keeps that raw figure for display.
struct DialectReport {
  int rank = 0;  // 1-based discovery order among the reported rows
  std::vector<std::string> required;
  Rational root_count;
  int support_size = 0;
  Rational exact_pattern_count;
  std::optional<std::string> annotation;
};

struct ReportSummary {
  int patterns_at_threshold = 0;  // poset elements with count >= threshold
  int dialects_at_threshold = 0;  // rows surviving the threshold
  int lower_bound = 0;            // fewest dialects any decomposition needs
};

struct DecompositionReport {
  std::vector<DialectReport> dialects;
  ReportSummary summary;
};

enum class ReportSort { discovery, count };

// Sidecar from required-message key ("msgA msgB", names ascending by index)
// to free annotation text.
using AnnotationMap = std::map<std::string, std::string>;
AnnotationMap annotations_from_json(const nlohmann::json& j);

// Rows for the terms whose root_count reaches min_count, ranked in
// discovery order and then arranged by `sort` (rank keeps discovery order
// either way). The summary always reflects the full decomposition's lower
// bound.
DecompositionReport build_report(const MonotonicDecomposition& d, const Rational& min_count,
                                 const AnnotationMap& annotations = {},
                                 ReportSort sort = ReportSort::discovery);

nlohmann::json report_to_json(const DecompositionReport& report);
void render_report_text(const DecompositionReport& report, std::ostream& out);
void render_report_csv(const DecompositionReport& report, std::ostream& out);

// Pattern-count table: counts descending, canonical pattern order on ties.
struct PatternRow {
  MessagePattern pattern;
  Rational count;
};

std::vector<PatternRow> pattern_table(const CountFunction& f, const Rational& min_count);
nlohmann::json pattern_table_to_json(const std::vector<PatternRow>& rows,
                                     const MessageUniverse& universe);
void render_pattern_table_text(const std::vector<PatternRow>& rows,
                               const MessageUniverse& universe, std::ostream& out);
void render_pattern_table_csv(const std::vector<PatternRow>& rows, const MessageUniverse& universe,
                              std::ostream& out);

// Hasse diagram in DOT: node n<i> per element (canonical index), labeled
// with the pattern's messages and count, width growing with log(1+count);
// one edge per covering pair, lower -> upper.
void write_hasse_dot(const CountFunction& f, std::ostream& out);

}  // namespace dialect
