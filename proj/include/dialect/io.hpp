#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dialect/decompose.hpp"
#include "dialect/harness.hpp"
#include "dialect/model.hpp"

namespace dialect {

// --- exact numbers in JSON -------------------------------------------------
//
// Integers are written as JSON numbers; other rationals as "n/d" strings.
// Reading accepts numbers (decoded through their shortest decimal form, so
// 0.1 means exactly 1/10), fraction strings and decimal strings.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

// FNV-1a over the canonical dump of a document, as "fnv1a64:<16 hex>".
std::string json_digest(const nlohmann::json& j);
std::string fnv1a64_hex(std::string_view bytes);

std::string iso8601_utc_now();

// --- file-message matrix ---------------------------------------------------
//
// Two canonical encodings. Dense CSV: header "file_id,<msg>,...", one 0/1
// cell per message; carries no provenance. Sparse JSON:
//   {"messages": [...], "rows": [{"file": id, "on": [names]}],
//    "provenance": {...}}
// Paths ending in .csv use the CSV form, everything else the JSON form.
FileMessageMatrix load_matrix(const std::string& path);
void save_matrix(const FileMessageMatrix& matrix, const std::string& path);

FileMessageMatrix read_matrix_csv(std::istream& in);
void write_matrix_csv(const FileMessageMatrix& matrix, std::ostream& out);
FileMessageMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const FileMessageMatrix& matrix);

// --- aggregated pattern counts ---------------------------------------------
//
//   {"messages": [...], "patterns": [{"on": [names], "count": n}],
//    "provenance": {...}}
// Patterns must be distinct; counts nonnegative (rationals allowed).
struct PatternCounts {
  MessageUniverse universe;
  std::vector<std::pair<MessagePattern, Rational>> patterns;
  nlohmann::json provenance = nlohmann::json::object();
};

PatternCounts load_pattern_counts(const std::string& path);
void save_pattern_counts(const PatternCounts& counts, const std::string& path);
PatternCounts pattern_counts_from_json(const nlohmann::json& j);
nlohmann::json pattern_counts_to_json(const PatternCounts& counts);

// Canonical-order poset over the listed patterns plus the matching counts.
std::pair<PosetPtr, CountFunction> counts_to_function(const PatternCounts& counts);
PatternCounts counts_from_function(const CountFunction& f, nlohmann::json provenance);

// --- harness configuration -------------------------------------------------
//
//   {"parsers": [{"name", "command", "timeout"?}],
//    "rules": [{"parser", "message", "regex"} | {"parser", "message",
//               "exit_nonzero": true}],
//    "inversion_threshold"?: number}
HarnessConfig load_harness_config(const std::string& path);
HarnessConfig harness_config_from_json(const nlohmann::json& j);
nlohmann::json harness_config_to_json(const HarnessConfig& config);

// --- mixture specs ---------------------------------------------------------
//
//   {"messages": [...], "dialects": [{"required": [names],
//    "marginals": {name: p}, "weight": w}]}
MixtureSpec load_mixture(const std::string& path);
MixtureSpec mixture_from_json(const nlohmann::json& j);
nlohmann::json mixture_to_json(const MixtureSpec& mixture);

// --- helpers ---------------------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
nlohmann::json parse_json_file(const std::string& path);

}  // namespace dialect
