#include "dialect/io.hpp"

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "dialect/error.hpp"

namespace dialect {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

std::string need_string(const json& j, const char* key, const char* what) {
  const json& v = need(j, key, what);
  if (!v.is_string())
    throw ParseError(std::string(what) + " field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string(what) + " must hold only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

MessagePattern pattern_from_names(const json& arr, const MessageUniverse& universe,
                                  const char* what) {
  MessagePattern p(universe.size());
  for (const std::string& name : string_array(arr, what)) {
    int i = universe.index_of(name);
    if (i < 0) throw ParseError(std::string(what) + " names unknown message '" + name + "'");
    p.set(i);
  }
  return p;
}

json pattern_to_names(const MessagePattern& p, const MessageUniverse& universe) {
  json arr = json::array();
  for (int i : p.indices()) arr.push_back(universe.name(i));
  return arr;
}

json take_provenance(const json& j) {
  auto it = j.find("provenance");
  if (it == j.end()) return json::object();
  if (!it->is_object()) throw ParseError("\"provenance\" must be an object");
  return *it;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

// RFC-4180 style records: quoted cells may hold commas, quotes and
// newlines. Blank lines are skipped.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string cell;
  bool in_quotes = false;
  bool any_input = false;

  auto end_cell = [&] { record.push_back(std::move(cell)), cell.clear(); };
  auto end_record = [&] {
    end_cell();
    if (record.size() != 1 || !record[0].empty()) records.push_back(std::move(record));
    record.clear();
  };

  int c;
  while ((c = in.get()) != std::istream::traits_type::eof()) {
    any_input = true;
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"')
          cell += static_cast<char>(in.get());
        else
          in_quotes = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      end_cell();
    } else if (ch == '\n') {
      end_record();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  if (in_quotes) throw ParseError("unterminated quote in CSV input");
  if (any_input && (!cell.empty() || !record.empty())) end_record();
  return records;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

nlohmann::json rational_to_json(const Rational& r) {
  if (is_integer(r)) {
    const BigInt& n = numerator(r);
    if (n >= std::numeric_limits<std::int64_t>::min() &&
        n <= std::numeric_limits<std::int64_t>::max())
      return n.convert_to<std::int64_t>();
  }
  return rational_to_string(r);
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  // dump() prints the shortest decimal that round-trips the double, so the
  // value the author wrote (say 0.35) is recovered exactly.
  if (j.is_number_float()) return rational_from_string(j.dump());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw ParseError("expected a number or a numeric string, got " + j.dump());
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string json_digest(const nlohmann::json& j) { return "fnv1a64:" + fnv1a64_hex(j.dump()); }

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- file-message matrix ---------------------------------------------------

FileMessageMatrix matrix_from_json(const nlohmann::json& j) {
  FileMessageMatrix m;
  m.universe = MessageUniverse(string_array(need(j, "messages", "matrix document"), "\"messages\""));
  const json& rows = need(j, "rows", "matrix document");
  if (!rows.is_array()) throw ParseError("\"rows\" must be an array");
  m.rows.reserve(rows.size());
  for (const auto& rj : rows) {
    FileMessageMatrix::Row row;
    row.file_id = need_string(rj, "file", "matrix row");
    row.pattern = pattern_from_names(need(rj, "on", "matrix row"), m.universe, "matrix row \"on\"");
    m.rows.push_back(std::move(row));
  }
  m.provenance = take_provenance(j);
  return m;
}

nlohmann::json matrix_to_json(const FileMessageMatrix& matrix) {
  json rows = json::array();
  for (const auto& row : matrix.rows)
    rows.push_back({{"file", row.file_id}, {"on", pattern_to_names(row.pattern, matrix.universe)}});
  return {{"messages", matrix.universe.names()},
          {"rows", std::move(rows)},
          {"provenance", matrix.provenance}};
}

FileMessageMatrix read_matrix_csv(std::istream& in) {
  auto records = parse_csv(in);
  if (records.empty()) throw ParseError("CSV matrix has no header");
  const auto& header = records[0];
  if (header.empty() || header[0] != "file_id")
    throw ParseError("CSV matrix header must start with file_id");

  FileMessageMatrix m;
  m.universe = MessageUniverse(std::vector<std::string>(header.begin() + 1, header.end()));
  m.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size())
      throw ParseError("CSV row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                       " cells, expected " + std::to_string(header.size()));
    FileMessageMatrix::Row row;
    row.file_id = rec[0];
    row.pattern = MessagePattern(m.universe.size());
    for (std::size_t c = 1; c < rec.size(); ++c) {
      if (rec[c] == "1")
        row.pattern.set(static_cast<int>(c) - 1);
      else if (rec[c] != "0")
        throw ParseError("CSV cell must be 0 or 1, got '" + rec[c] + "'");
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

void write_matrix_csv(const FileMessageMatrix& matrix, std::ostream& out) {
  out << "file_id";
  for (const std::string& name : matrix.universe.names()) out << ',' << csv_escape(name);
  out << '\n';
  for (const auto& row : matrix.rows) {
    out << csv_escape(row.file_id);
    for (int i = 0; i < matrix.universe.size(); ++i) out << ',' << (row.pattern.test(i) ? '1' : '0');
    out << '\n';
  }
}

FileMessageMatrix load_matrix(const std::string& path) {
  if (has_suffix(path, ".csv")) {
    std::istringstream in(read_file(path));
    try {
      return read_matrix_csv(in);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return matrix_from_json(parse_json_file(path));
}

void save_matrix(const FileMessageMatrix& matrix, const std::string& path) {
  if (has_suffix(path, ".csv")) {
    std::ostringstream out;
    write_matrix_csv(matrix, out);
    write_file(path, out.str());
  } else {
    write_file(path, matrix_to_json(matrix).dump(2) + "\n");
  }
}

// --- aggregated pattern counts ---------------------------------------------

PatternCounts pattern_counts_from_json(const nlohmann::json& j) {
  PatternCounts c;
  c.universe = MessageUniverse(string_array(need(j, "messages", "counts document"), "\"messages\""));
  const json& pats = need(j, "patterns", "counts document");
  if (!pats.is_array()) throw ParseError("\"patterns\" must be an array");
  std::unordered_set<MessagePattern, MessagePattern::Hash> seen;
  c.patterns.reserve(pats.size());
  for (const auto& pj : pats) {
    MessagePattern p =
        pattern_from_names(need(pj, "on", "counts entry"), c.universe, "counts entry \"on\"");
    Rational count = rational_from_json(need(pj, "count", "counts entry"));
    if (count < 0) throw ParseError("pattern count must be nonnegative");
    if (!seen.insert(p).second)
      throw ParseError("duplicate pattern " + p.to_string(c.universe) + " in counts document");
    c.patterns.emplace_back(std::move(p), std::move(count));
  }
  c.provenance = take_provenance(j);
  return c;
}

nlohmann::json pattern_counts_to_json(const PatternCounts& counts) {
  json pats = json::array();
  for (const auto& [p, count] : counts.patterns)
    pats.push_back(
        {{"on", pattern_to_names(p, counts.universe)}, {"count", rational_to_json(count)}});
  return {{"messages", counts.universe.names()},
          {"patterns", std::move(pats)},
          {"provenance", counts.provenance}};
}

PatternCounts load_pattern_counts(const std::string& path) {
  return pattern_counts_from_json(parse_json_file(path));
}

void save_pattern_counts(const PatternCounts& counts, const std::string& path) {
  write_file(path, pattern_counts_to_json(counts).dump(2) + "\n");
}

std::pair<PosetPtr, CountFunction> counts_to_function(const PatternCounts& counts) {
  std::vector<MessagePattern> patterns;
  patterns.reserve(counts.patterns.size());
  for (const auto& [p, count] : counts.patterns) patterns.push_back(p);

  PosetPtr poset = share(build_poset(std::move(patterns), counts.universe));
  std::vector<Rational> values(static_cast<std::size_t>(poset->size()));
  for (const auto& [p, count] : counts.patterns) {
    int i = poset->index_of(p);
    values[static_cast<std::size_t>(i)] = count;
  }
  CountFunction f(poset, std::move(values));
  return {std::move(poset), std::move(f)};
}

PatternCounts counts_from_function(const CountFunction& f, nlohmann::json provenance) {
  PatternCounts c;
  c.universe = f.poset().universe();
  c.patterns.reserve(static_cast<std::size_t>(f.size()));
  for (int i = 0; i < f.size(); ++i) c.patterns.emplace_back(f.poset().element(i), f.at(i));
  c.provenance = std::move(provenance);
  return c;
}

// --- harness configuration -------------------------------------------------

HarnessConfig harness_config_from_json(const nlohmann::json& j) {
  HarnessConfig cfg;
  const json& parsers = need(j, "parsers", "harness config");
  if (!parsers.is_array()) throw ParseError("\"parsers\" must be an array");
  for (const auto& pj : parsers) {
    ParserSpec p;
    p.name = need_string(pj, "name", "parser entry");
    p.command = need_string(pj, "command", "parser entry");
    if (pj.contains("timeout")) {
      if (!pj.at("timeout").is_number())
        throw ParseError("parser \"timeout\" must be a number of seconds");
      p.timeout_seconds = pj.at("timeout").get<double>();
    }
    cfg.parsers.push_back(std::move(p));
  }

  const json& rules = need(j, "rules", "harness config");
  if (!rules.is_array()) throw ParseError("\"rules\" must be an array");
  for (const auto& rj : rules) {
    MessageRule r;
    r.parser = need_string(rj, "parser", "rule entry");
    r.message = need_string(rj, "message", "rule entry");
    bool has_regex = rj.is_object() && rj.contains("regex");
    bool has_exit = rj.is_object() && rj.contains("exit_nonzero");
    if (has_regex == has_exit)
      throw ParseError("rule '" + r.message + "' needs exactly one of \"regex\", \"exit_nonzero\"");
    if (has_regex) {
      r.kind = MessageRule::Kind::regex_on_output;
      r.pattern = need_string(rj, "regex", "rule entry");
    } else {
      if (!rj.at("exit_nonzero").is_boolean() || !rj.at("exit_nonzero").get<bool>())
        throw ParseError("rule '" + r.message + "' field \"exit_nonzero\" must be true");
      r.kind = MessageRule::Kind::exit_code_nonzero;
    }
    cfg.rules.push_back(std::move(r));
  }

  if (j.contains("inversion_threshold")) {
    if (!j.at("inversion_threshold").is_number())
      throw ParseError("\"inversion_threshold\" must be a number");
    cfg.inversion_threshold = j.at("inversion_threshold").get<double>();
  }
  return cfg;
}

nlohmann::json harness_config_to_json(const HarnessConfig& config) {
  json parsers = json::array();
  for (const auto& p : config.parsers)
    parsers.push_back({{"name", p.name}, {"command", p.command}, {"timeout", p.timeout_seconds}});
  json rules = json::array();
  for (const auto& r : config.rules) {
    json rj = {{"parser", r.parser}, {"message", r.message}};
    if (r.kind == MessageRule::Kind::regex_on_output)
      rj["regex"] = r.pattern;
    else
      rj["exit_nonzero"] = true;
    rules.push_back(std::move(rj));
  }
  return {{"parsers", std::move(parsers)},
          {"rules", std::move(rules)},
          {"inversion_threshold", config.inversion_threshold}};
}

HarnessConfig load_harness_config(const std::string& path) {
  return harness_config_from_json(parse_json_file(path));
}

// --- mixture specs ---------------------------------------------------------

MixtureSpec mixture_from_json(const nlohmann::json& j) {
  MessageUniverse universe(string_array(need(j, "messages", "mixture spec"), "\"messages\""));
  const json& dialects = need(j, "dialects", "mixture spec");
  if (!dialects.is_array()) throw ParseError("\"dialects\" must be an array");
  std::vector<DialectSpec> ds;
  ds.reserve(dialects.size());
  for (const auto& dj : dialects) {
    DialectSpec d;
    d.required = pattern_from_names(need(dj, "required", "dialect entry"), universe,
                                    "dialect \"required\"");
    if (dj.contains("marginals")) {
      const json& ms = dj.at("marginals");
      if (!ms.is_object()) throw ParseError("dialect \"marginals\" must be an object");
      for (const auto& [name, pj] : ms.items()) {
        int i = universe.index_of(name);
        if (i < 0) throw ParseError("marginal names unknown message '" + name + "'");
        d.marginals[i] = rational_from_json(pj);
      }
    }
    d.weight = rational_from_json(need(dj, "weight", "dialect entry"));
    ds.push_back(std::move(d));
  }
  return MixtureSpec(std::move(universe), std::move(ds));
}

nlohmann::json mixture_to_json(const MixtureSpec& mixture) {
  json dialects = json::array();
  for (const auto& d : mixture.dialects()) {
    json marginals = json::object();
    for (const auto& [i, p] : d.marginals)
      marginals[mixture.universe().name(i)] = rational_to_json(p);
    dialects.push_back({{"required", pattern_to_names(d.required, mixture.universe())},
                        {"marginals", std::move(marginals)},
                        {"weight", rational_to_json(d.weight)}});
  }
  return {{"messages", mixture.universe().names()}, {"dialects", std::move(dialects)}};
}

MixtureSpec load_mixture(const std::string& path) {
  return mixture_from_json(parse_json_file(path));
}

// --- helpers ---------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace dialect
