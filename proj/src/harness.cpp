#include "dialect/harness.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <regex>
#include <set>
#include <thread>
#include <unordered_map>

#include "dialect/error.hpp"
#include "dialect/io.hpp"

namespace dialect {

namespace {

constexpr const char* kPlaceholder = "{file}";

int placeholder_count(const std::string& command) {
  int n = 0;
  for (std::size_t pos = command.find(kPlaceholder); pos != std::string::npos;
       pos = command.find(kPlaceholder, pos + 1))
    ++n;
  return n;
}

std::string shell_quote(const std::string& path) {
  std::string out = "'";
  for (char c : path) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::string substitute_placeholder(const std::string& command, const std::string& path) {
  std::string out = command;
  auto pos = out.find(kPlaceholder);
  out.replace(pos, std::strlen(kPlaceholder), shell_quote(path));
  return out;
}

// First whitespace-delimited token of the shell line; good enough to reject
// configs whose tool is plainly missing before any file is touched.
std::string first_token(const std::string& command) {
  std::size_t b = command.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = command.find_first_of(" \t", b);
  return command.substr(b, e == std::string::npos ? std::string::npos : e - b);
}

bool resolvable(const std::string& program) {
  if (program.empty()) return false;
  if (program.find('/') != std::string::npos) return ::access(program.c_str(), X_OK) == 0;
  const char* path_env = std::getenv("PATH");
  if (!path_env) return false;
  std::string path(path_env);
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find(':', start);
    std::string dir = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!dir.empty() && ::access((dir + "/" + program).c_str(), X_OK) == 0) return true;
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return false;
}

struct RunResult {
  std::string output;  // stdout and stderr interleaved
  int exit_code = 0;
  bool timed_out = false;
};

// Runs a shell line with both streams captured on one pipe. On timeout the
// whole process group is killed and the exit code reports the signal.
RunResult run_command(const std::string& command, double timeout_seconds) {
  int fds[2];
  if (::pipe(fds) != 0) throw IoError("pipe failed: " + std::string(std::strerror(errno)));

  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw IoError("fork failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  ::close(fds[1]);
  RunResult result;
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_seconds));

  char buffer[4096];
  bool open = true;
  while (open) {
    auto now = std::chrono::steady_clock::now();
    long remaining_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    if (remaining_ms < 0) remaining_ms = 0;

    struct pollfd pfd{fds[0], POLLIN, 0};
    int ready = ::poll(&pfd, 1, result.timed_out ? 200 : static_cast<int>(remaining_ms));
    if (ready > 0) {
      ssize_t n = ::read(fds[0], buffer, sizeof buffer);
      if (n > 0)
        result.output.append(buffer, static_cast<std::size_t>(n));
      else
        open = false;  // EOF or error: every writer is gone
    } else if (!result.timed_out) {
      result.timed_out = true;
      ::kill(-pid, SIGKILL);
    } else {
      open = false;  // a straggler still holds the pipe; stop draining
    }
  }
  ::close(fds[0]);

  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_code = 128 + WTERMSIG(status);
  else
    result.exit_code = -1;
  if (result.timed_out && result.exit_code == 0) result.exit_code = -1;
  return result;
}

}  // namespace

void HarnessConfig::validate() const {
  if (parsers.empty()) throw ConfigError("config lists no parsers");
  std::set<std::string> parser_names;
  for (const auto& p : parsers) {
    if (p.name.empty()) throw ConfigError("parser with empty name");
    if (!parser_names.insert(p.name).second)
      throw ConfigError("duplicate parser name '" + p.name + "'");
    int holes = placeholder_count(p.command);
    if (holes != 1)
      throw ConfigError("parser '" + p.name + "' command must contain {file} exactly once (found " +
                        std::to_string(holes) + ")");
    if (p.timeout_seconds <= 0)
      throw ConfigError("parser '" + p.name + "' has nonpositive timeout");
    std::string program = first_token(p.command);
    if (!resolvable(program))
      throw ConfigError("parser '" + p.name + "' command '" + program + "' cannot be resolved");
  }

  if (rules.empty()) throw ConfigError("config lists no message rules");
  std::set<std::string> message_names;
  for (const auto& r : rules) {
    if (r.message.empty()) throw ConfigError("rule with empty message name");
    if (!message_names.insert(r.message).second)
      throw ConfigError("duplicate message name '" + r.message + "'");
    if (!parser_names.count(r.parser))
      throw ConfigError("rule '" + r.message + "' references unknown parser '" + r.parser + "'");
    if (r.kind == MessageRule::Kind::regex_on_output && r.pattern.empty())
      throw ConfigError("rule '" + r.message + "' has an empty regex");
  }

  if (!(inversion_threshold > 0) || inversion_threshold > 1)
    throw ConfigError("inversion threshold outside (0, 1]");
}

bool FileMessageMatrix::same_data(const FileMessageMatrix& o) const {
  if (universe != o.universe || rows.size() != o.rows.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].file_id != o.rows[i].file_id || rows[i].pattern != o.rows[i].pattern) return false;
  return true;
}

FileMessageMatrix run_harness(const HarnessConfig& config, const std::vector<std::string>& files,
                              int workers) {
  config.validate();
  if (workers < 1) throw ContractError("worker count must be at least 1");

  // Compile regexes up front: a bad pattern is a config error, not a
  // per-file failure.
  std::vector<std::regex> compiled(config.rules.size());
  for (std::size_t r = 0; r < config.rules.size(); ++r) {
    if (config.rules[r].kind != MessageRule::Kind::regex_on_output) continue;
    try {
      compiled[r] = std::regex(config.rules[r].pattern,
                               std::regex::ECMAScript | std::regex::multiline);
    } catch (const std::regex_error& e) {
      throw ConfigError("rule '" + config.rules[r].message + "' has a malformed regex: " + e.what());
    }
  }

  std::unordered_map<std::string, std::size_t> parser_pos;
  for (std::size_t p = 0; p < config.parsers.size(); ++p) parser_pos[config.parsers[p].name] = p;

  // One job per (file, parser); results land in fixed slots so scheduling
  // order never shows in the output.
  std::size_t n_jobs = files.size() * config.parsers.size();
  std::vector<RunResult> results(n_jobs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next.fetch_add(1); job < n_jobs; job = next.fetch_add(1)) {
      std::size_t file_idx = job / config.parsers.size();
      std::size_t parser_idx = job % config.parsers.size();
      const ParserSpec& parser = config.parsers[parser_idx];
      std::string cmd = substitute_placeholder(parser.command, files[file_idx]);
      results[job] = run_command(cmd, parser.timeout_seconds);
    }
  };

  if (workers == 1 || n_jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int n_threads = workers < static_cast<int>(n_jobs) ? workers : static_cast<int>(n_jobs);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<std::string> names;
  names.reserve(config.rules.size());
  for (const auto& r : config.rules) names.push_back(r.message);

  FileMessageMatrix matrix;
  matrix.universe = MessageUniverse(std::move(names));
  matrix.rows.reserve(files.size());
  for (std::size_t f = 0; f < files.size(); ++f) {
    FileMessageMatrix::Row row;
    row.file_id = files[f];
    row.pattern = MessagePattern(matrix.universe.size());
    for (std::size_t r = 0; r < config.rules.size(); ++r) {
      const MessageRule& rule = config.rules[r];
      const RunResult& run = results[f * config.parsers.size() + parser_pos[rule.parser]];
      bool hit = rule.kind == MessageRule::Kind::exit_code_nonzero
                     ? run.exit_code != 0
                     : std::regex_search(run.output, compiled[r]);
      if (hit) row.pattern.set(static_cast<int>(r));
    }
    matrix.rows.push_back(std::move(row));
  }

  matrix.provenance = {{"config_digest", json_digest(harness_config_to_json(config))},
                       {"timestamp", iso8601_utc_now()}};
  return matrix;
}

std::pair<FileMessageMatrix, std::vector<std::string>> invert_frequent_messages(
    const FileMessageMatrix& matrix, double threshold) {
  if (!(threshold > 0) || threshold > 1) throw ContractError("inversion threshold outside (0, 1]");

  int width = matrix.universe.size();
  std::vector<long> on_count(static_cast<std::size_t>(width), 0);
  for (const auto& row : matrix.rows)
    row.pattern.bits().for_each_set([&](int i) { ++on_count[static_cast<std::size_t>(i)]; });

  std::vector<bool> flip(static_cast<std::size_t>(width), false);
  std::vector<std::string> inverted;
  std::vector<std::string> names = matrix.universe.names();
  constexpr const char* kPrefix = "absence-of-";
  for (int i = 0; i < width; ++i) {
    if (matrix.rows.empty()) break;
    double freq = static_cast<double>(on_count[static_cast<std::size_t>(i)]) /
                  static_cast<double>(matrix.rows.size());
    if (freq > threshold) {
      flip[static_cast<std::size_t>(i)] = true;
      inverted.push_back(names[static_cast<std::size_t>(i)]);
      // Re-inverting an inverted column strips the prefix again.
      if (names[static_cast<std::size_t>(i)].rfind(kPrefix, 0) == 0)
        names[static_cast<std::size_t>(i)] = names[static_cast<std::size_t>(i)].substr(std::strlen(kPrefix));
      else
        names[static_cast<std::size_t>(i)] = kPrefix + names[static_cast<std::size_t>(i)];
    }
  }

  FileMessageMatrix out;
  out.universe = MessageUniverse(std::move(names));
  out.rows.reserve(matrix.rows.size());
  for (const auto& row : matrix.rows) {
    FileMessageMatrix::Row r;
    r.file_id = row.file_id;
    r.pattern = row.pattern;
    for (int i = 0; i < width; ++i)
      if (flip[static_cast<std::size_t>(i)]) r.pattern.set(i, !row.pattern.test(i));
    out.rows.push_back(std::move(r));
  }

  out.provenance = matrix.provenance;
  if (!inverted.empty()) out.provenance["inverted"] = inverted;
  return {std::move(out), std::move(inverted)};
}

std::pair<PosetPtr, CountFunction> aggregate_counts(const FileMessageMatrix& matrix) {
  std::unordered_map<MessagePattern, long, MessagePattern::Hash> counts;
  for (const auto& row : matrix.rows) ++counts[row.pattern];

  std::vector<MessagePattern> patterns;
  patterns.reserve(counts.size());
  for (const auto& [p, c] : counts) patterns.push_back(p);

  PosetPtr poset = share(build_poset(std::move(patterns), matrix.universe));
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(poset->size()));
  for (int i = 0; i < poset->size(); ++i) values.emplace_back(counts.at(poset->element(i)));
  CountFunction f(poset, std::move(values));
  return {std::move(poset), std::move(f)};
}

}  // namespace dialect
