#include "dialect/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dialect/error.hpp"
#include "dialect/io.hpp"

namespace dialect {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

AnnotationMap annotations_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("annotation sidecar must be an object");
  AnnotationMap out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw ParseError("annotation for '" + key + "' must be a string");
    out[key] = value.get<std::string>();
  }
  return out;
}

DecompositionReport build_report(const MonotonicDecomposition& d, const Rational& min_count,
                                 const AnnotationMap& annotations, ReportSort sort) {
  const PatternPoset& poset = d.source.poset();
  DecompositionReport report;

  for (const MonotonicTerm& term : d.terms) {
    if (term.root_count() < min_count) continue;
    DialectReport row;
    row.rank = static_cast<int>(report.dialects.size()) + 1;
    for (int i : poset.element(term.root).indices()) row.required.push_back(poset.universe().name(i));
    row.root_count = term.root_count();
    row.support_size = poset.upper_set(term.root).count();
    row.exact_pattern_count = d.source.at(term.root);
    auto it = annotations.find(join(row.required, " "));
    if (it != annotations.end()) row.annotation = it->second;
    report.dialects.push_back(std::move(row));
  }

  if (sort == ReportSort::count) {
    std::stable_sort(report.dialects.begin(), report.dialects.end(),
                     [](const DialectReport& a, const DialectReport& b) {
                       if (a.root_count != b.root_count) return a.root_count > b.root_count;
                       return a.rank < b.rank;
                     });
  }

  for (int i = 0; i < d.source.size(); ++i)
    if (d.source.at(i) >= min_count) ++report.summary.patterns_at_threshold;
  report.summary.dialects_at_threshold = static_cast<int>(report.dialects.size());
  report.summary.lower_bound = dialect_count_lower_bound(d);
  return report;
}

nlohmann::json report_to_json(const DecompositionReport& report) {
  nlohmann::json dialects = nlohmann::json::array();
  for (const DialectReport& row : report.dialects) {
    nlohmann::json rj = {{"rank", row.rank},
                         {"required", row.required},
                         {"root_count", rational_to_json(row.root_count)},
                         {"support_size", row.support_size},
                         {"annotation", nullptr}};
    if (row.annotation) rj["annotation"] = *row.annotation;
    dialects.push_back(std::move(rj));
  }
  return {{"dialects", std::move(dialects)},
          {"summary",
           {{"patterns_at_threshold", report.summary.patterns_at_threshold},
            {"dialects_at_threshold", report.summary.dialects_at_threshold},
            {"lower_bound", report.summary.lower_bound}}}};
}

void render_report_text(const DecompositionReport& report, std::ostream& out) {
  bool any_annotation = false;
  bool any_disagree = false;
  for (const DialectReport& row : report.dialects) {
    if (row.annotation) any_annotation = true;
    if (row.exact_pattern_count != row.root_count) any_disagree = true;
  }

  out << std::setw(4) << "rank" << "  " << std::setw(10) << "root count" << "  " << std::setw(7)
      << "support" << "  " << "required";
  if (any_annotation) out << "  -- annotation";
  out << "\n";
  for (const DialectReport& row : report.dialects) {
    out << std::setw(4) << row.rank << "  " << std::setw(10) << rational_to_display(row.root_count)
        << "  " << std::setw(7) << row.support_size << "  "
        << (row.required.empty() ? "(none)" : join(row.required, " "));
    if (row.exact_pattern_count != row.root_count)
      out << "  [" << rational_to_display(row.exact_pattern_count) << " files match exactly]";
    if (row.annotation) out << "  -- " << *row.annotation;
    out << "\n";
  }
  if (any_disagree)
    out << "(bracketed figures: files whose pattern equals the root exactly; the root count is"
           " the mass left for this dialect after earlier rows)\n";
  out << "summary: " << report.summary.dialects_at_threshold << " dialects vs "
      << report.summary.patterns_at_threshold << " patterns at threshold; at least "
      << report.summary.lower_bound << " dialect(s) required\n";
}

void render_report_csv(const DecompositionReport& report, std::ostream& out) {
  out << "rank,required,root_count,support_size,annotation\n";
  for (const DialectReport& row : report.dialects) {
    out << row.rank << ',' << csv_cell(join(row.required, " ")) << ','
        << rational_to_string(row.root_count) << ',' << row.support_size << ','
        << csv_cell(row.annotation ? *row.annotation : "") << "\n";
  }
  out << "# summary patterns_at_threshold=" << report.summary.patterns_at_threshold
      << " dialects_at_threshold=" << report.summary.dialects_at_threshold
      << " lower_bound=" << report.summary.lower_bound << "\n";
}

std::vector<PatternRow> pattern_table(const CountFunction& f, const Rational& min_count) {
  std::vector<PatternRow> rows;
  for (int i = 0; i < f.size(); ++i)
    if (f.at(i) >= min_count) rows.push_back({f.poset().element(i), f.at(i)});
  std::stable_sort(rows.begin(), rows.end(), [](const PatternRow& a, const PatternRow& b) {
    return a.count > b.count;  // stability keeps canonical order on ties
  });
  return rows;
}

nlohmann::json pattern_table_to_json(const std::vector<PatternRow>& rows,
                                     const MessageUniverse& universe) {
  nlohmann::json patterns = nlohmann::json::array();
  for (const PatternRow& row : rows) {
    nlohmann::json on = nlohmann::json::array();
    for (int i : row.pattern.indices()) on.push_back(universe.name(i));
    patterns.push_back({{"on", std::move(on)}, {"count", rational_to_json(row.count)}});
  }
  return {{"messages", universe.names()}, {"patterns", std::move(patterns)}};
}

void render_pattern_table_text(const std::vector<PatternRow>& rows,
                               const MessageUniverse& universe, std::ostream& out) {
  out << std::setw(10) << "count" << "  pattern\n";
  for (const PatternRow& row : rows)
    out << std::setw(10) << rational_to_display(row.count) << "  " << row.pattern.to_string(universe)
        << "\n";
}

void render_pattern_table_csv(const std::vector<PatternRow>& rows, const MessageUniverse& universe,
                              std::ostream& out) {
  out << "count,messages\n";
  for (const PatternRow& row : rows) {
    std::vector<std::string> names;
    for (int i : row.pattern.indices()) names.push_back(universe.name(i));
    out << rational_to_string(row.count) << ',' << csv_cell(join(names, " ")) << "\n";
  }
}

void write_hasse_dot(const CountFunction& f, std::ostream& out) {
  const PatternPoset& poset = f.poset();
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n";
  std::ostringstream num;
  num << std::fixed << std::setprecision(3);
  for (int i = 0; i < poset.size(); ++i) {
    double count = f.at(i).convert_to<double>();
    double width = 0.6 + 0.45 * std::log1p(count);
    num.str("");
    num << width;
    std::string label = poset.element(i).to_string(poset.universe());
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out << "  n" << i << " [label=\"" << escaped << "\\n" << rational_to_display(f.at(i))
        << "\", width=" << num.str() << "];\n";
  }
  for (const auto& [lower, upper] : poset.hasse_edges())
    out << "  n" << lower << " -> n" << upper << ";\n";
  out << "}\n";
}

}  // namespace dialect
