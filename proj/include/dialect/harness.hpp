#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dialect/decompose.hpp"
#include "dialect/pattern.hpp"
#include "dialect/poset.hpp"

namespace dialect {

// External parser invoked once per file. The command is a shell line holding
// the placeholder {file} exactly once; the placeholder is replaced by the
// shell-quoted file path. stdout and stderr are captured as one stream.
struct ParserSpec {
  std::string name;
  std::string command;
  double timeout_seconds = 30.0;
};

struct MessageRule {
  enum class Kind { regex_on_output, exit_code_nonzero };

  std::string parser;   // name of the parser whose run this rule inspects
  std::string message;  // message this rule emits
  Kind kind = Kind::regex_on_output;
  std::string pattern;  // multiline line-anchored regex (regex rules only)
};

struct HarnessConfig {
  std::vector<ParserSpec> parsers;
  std::vector<MessageRule> rules;
  double inversion_threshold = 0.5;

  // ConfigError on duplicate parser or message names, a command without
  // exactly one {file}, a rule naming an unknown parser, or a command whose
  // program cannot be resolved.
  void validate() const;
};

// One bit row per file over the universe formed by the rules' message names
// (in rule order). Provenance records at least the config digest and a
// timestamp; inversion appends the renamed messages.
struct FileMessageMatrix {
  struct Row {
    std::string file_id;
    MessagePattern pattern;
  };

  MessageUniverse universe;
  std::vector<Row> rows;
  nlohmann::json provenance = nlohmann::json::object();

  // Equality of the observation data; provenance is deliberately ignored.
  bool same_data(const FileMessageMatrix& o) const;
};

// Runs every configured parser over every file with at most `workers`
// concurrent processes and evaluates the message rules on each captured
// run. A crashed or timed-out parser counts as nonzero exit and its partial
// output still feeds the regex rules; rows come back in input file order
// regardless of scheduling. Validates the config first and fails fast
// before touching any file.
FileMessageMatrix run_harness(const HarnessConfig& config, const std::vector<std::string>& files,
                              int workers = 1);

// Replaces every message whose frequency exceeds `threshold` by its
// complement, renamed "absence-of-<name>". Returns the rewritten matrix and
// the original names of the inverted messages. Applying the same inversion
// twice restores the original columns.
std::pair<FileMessageMatrix, std::vector<std::string>> invert_frequent_messages(
    const FileMessageMatrix& matrix, double threshold);

// Deduplicates row patterns into a poset over the observed patterns and
// counts how many files exhibit each one.
std::pair<PosetPtr, CountFunction> aggregate_counts(const FileMessageMatrix& matrix);

}  // namespace dialect
