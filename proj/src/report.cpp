#include "cantor/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void RunReport::check(std::string name, bool passed, std::string witness) {
  if (!passed && witness.empty()) fail(ErrorCode::InvalidArgument, "failed check '" + name + "' has no witness");
  checks_.push_back({std::move(name), passed, std::move(witness)});
}

ReportTable& RunReport::table(std::string title, std::vector<std::string> columns) {
  tables_.push_back({std::move(title), std::move(columns), {}});
  return tables_.back();
}

bool RunReport::passed() const noexcept {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string millis(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

// Keys must stay one token.
std::string key_safe(std::string s) {
  for (char& c : s) {
    if (c == ' ' || c == '=' || c == '\t') c = '_';
  }
  return s;
}

}  // namespace

std::string RunReport::render_text(bool with_timings) const {
  std::ostringstream os;
  os << "command: " << command_ << "\ndigest:  " << hex(digest_) << '\n';
  for (const auto& [k, v] : notes_) os << k << ": " << v << '\n';
  for (const auto& t : tables_) {
    os << '\n' << t.title << '\n';
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& r : t.rows) {
      for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      std::string line;
      for (std::size_t c = 0; c < width.size(); ++c) {
        const std::string cell = c < cells.size() ? cells[c] : "";
        line += cell;
        if (c + 1 < width.size()) line += std::string(width[c] - cell.size() + 2, ' ');
      }
      os << "  " << line << '\n';
    };
    emit(t.columns);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    emit(rule);
    for (const auto& r : t.rows) emit(r);
  }
  os << "\nchecks\n";
  for (const auto& c : checks_) {
    os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.passed) os << "  (" << c.witness << ')';
    os << '\n';
  }
  os << "result: " << (passed() ? "pass" : "FAIL") << '\n';
  if (with_timings && !timings_.empty()) {
    os << "\ntimings (ms)\n";
    for (const auto& t : timings_) os << "  " << t.phase << ' ' << millis(t.millis) << '\n';
  }
  return os.str();
}

std::string RunReport::render_machine(bool with_timings) const {
  std::ostringstream os;
  os << "command=" << command_ << "\ndigest=" << hex(digest_) << '\n';
  for (const auto& [k, v] : notes_) os << "note." << key_safe(k) << '=' << v << '\n';
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& t = tables_[i];
    os << "table." << i << ".title=" << t.title << '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (std::size_t c = 0; c < t.columns.size() && c < t.rows[r].size(); ++c) {
        os << "table." << i << '.' << r << '.' << key_safe(t.columns[c]) << '=' << t.rows[r][c] << '\n';
      }
    }
  }
  for (std::size_t i = 0; i < checks_.size(); ++i) {
    const auto& c = checks_[i];
    os << "check." << i << ".name=" << c.name << '\n';
    os << "check." << i << ".status=" << (c.passed ? "pass" : "fail") << '\n';
    if (!c.passed) os << "check." << i << ".witness=" << c.witness << '\n';
  }
  os << "result=" << (passed() ? "pass" : "fail") << '\n';
  if (with_timings) {
    for (const auto& t : timings_) os << "time." << key_safe(t.phase) << '=' << millis(t.millis) << '\n';
  }
  return os.str();
}

}  // namespace cantor
