#include "cantor_meter.h"

#include <new>
#include <string>

#include "cantor/commands.hpp"
#include "cantor/error.hpp"

struct cm_options {
  cantor::CommandOptions opts;
};

struct cm_report {
  cantor::RunReport report;
  std::string rendered;
};

namespace {

thread_local std::string g_last_error;

cm_status record(cm_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

template <class F>
cm_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CM_OK;
  } catch (const cantor::Error& e) {
    return record(static_cast<cm_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(CM_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(CM_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* cm_version(void) { return "0.1.0"; }

const char* cm_status_name(cm_status status) {
  if (status == CM_OK) return "Ok";
  if (status == CM_INTERNAL) return "Internal";
  if (status < CM_INVALID_ARGUMENT || status > CM_IO) return "Unknown";
  return cantor::error_code_name(static_cast<cantor::ErrorCode>(status)).data();
}

const char* cm_last_error(void) { return g_last_error.c_str(); }

cm_status cm_options_create(cm_options** out) {
  if (out == nullptr) return record(CM_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] { *out = new cm_options(); });
}

void cm_options_destroy(cm_options* opts) { delete opts; }

cm_status cm_options_set_depth(cm_options* opts, size_t depth) {
  if (opts == nullptr) return record(CM_INVALID_ARGUMENT, "null options");
  opts->opts.depth = depth;
  return CM_OK;
}

cm_status cm_options_set_stages(cm_options* opts, size_t stages) {
  if (opts == nullptr) return record(CM_INVALID_ARGUMENT, "null options");
  opts->opts.stages = stages;
  return CM_OK;
}

cm_status cm_options_set_seed(cm_options* opts, uint64_t seed) {
  if (opts == nullptr) return record(CM_INVALID_ARGUMENT, "null options");
  opts->opts.seed = seed;
  return CM_OK;
}

cm_status cm_options_set(cm_options* opts, const char* key, const char* value) {
  if (opts == nullptr || key == nullptr || value == nullptr) return record(CM_INVALID_ARGUMENT, "null argument");
  return guarded([&] { opts->opts.params[key] = value; });
}

cm_status cm_options_add_file(cm_options* opts, const char* path) {
  if (opts == nullptr || path == nullptr) return record(CM_INVALID_ARGUMENT, "null argument");
  return guarded([&] { opts->opts.files.emplace_back(path); });
}

cm_status cm_run_command(const char* command, const cm_options* opts, cm_report** out) {
  if (command == nullptr || out == nullptr) return record(CM_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  static const cantor::CommandOptions kDefaults;
  return guarded([&] {
    auto rep = cantor::run_command(command, opts ? opts->opts : kDefaults);
    *out = new cm_report{std::move(rep), {}};
  });
}

void cm_report_destroy(cm_report* report) { delete report; }

int cm_report_passed(const cm_report* report) { return report != nullptr && report->report.passed() ? 1 : 0; }

uint64_t cm_report_digest(const cm_report* report) { return report ? report->report.digest() : 0; }

size_t cm_report_check_count(const cm_report* report) { return report ? report->report.checks().size() : 0; }

cm_status cm_report_check(const cm_report* report, size_t index, const char** name, int* passed, const char** witness) {
  if (report == nullptr) return record(CM_INVALID_ARGUMENT, "null report");
  if (index >= report->report.checks().size()) return record(CM_INVALID_ARGUMENT, "check index out of range");
  const auto& c = report->report.checks()[index];
  if (name) *name = c.name.c_str();
  if (passed) *passed = c.passed ? 1 : 0;
  if (witness) *witness = c.witness.c_str();
  return CM_OK;
}

const char* cm_report_render(cm_report* report, int machine_readable, int with_timings) {
  if (report == nullptr) return "";
  report->rendered = machine_readable ? report->report.render_machine(with_timings != 0)
                                      : report->report.render_text(with_timings != 0);
  return report->rendered.c_str();
}

}  // extern "C"
