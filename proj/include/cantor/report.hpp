#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string witness;  // set whenever passed is false
};

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Timing {
  std::string phase;
  double millis = 0;
};

/// Outcome of one command. Everything but the timings is deterministic.
class RunReport {
 public:
  RunReport() = default;
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  const std::string& command() const noexcept { return command_; }
  std::uint64_t digest() const noexcept { return digest_; }
  void absorb(std::string_view input) { digest_ = fnv1a(input, digest_); }

  /// Failing checks need a witness; an empty one is rejected.
  void check(std::string name, bool passed, std::string witness = {});
  void note(std::string key, std::string value) { notes_.emplace_back(std::move(key), std::move(value)); }
  ReportTable& table(std::string title, std::vector<std::string> columns);
  void time(std::string phase, double millis) { timings_.push_back({std::move(phase), millis}); }

  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  const std::vector<ReportTable>& tables() const noexcept { return tables_; }
  const std::vector<std::pair<std::string, std::string>>& notes() const noexcept { return notes_; }
  const std::vector<Timing>& timings() const noexcept { return timings_; }
  bool passed() const noexcept;

  /// Aligned text tables; timings last.
  std::string render_text(bool with_timings = true) const;
  /// `key=value` records, one per line; timings as `time.<phase>=` lines at the end.
  std::string render_machine(bool with_timings = true) const;

 private:
  std::string command_;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
  std::vector<CheckResult> checks_;
  std::vector<ReportTable> tables_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<Timing> timings_;
};

}  // namespace cantor
