// cantor-meter: runs one command through the shared library and prints its report.
// Exit status: 0 all checks pass, 1 some check fails, 2 usage or library error.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cantor_meter.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

int die(const std::string& message) {
  std::fprintf(stderr, "cantor-meter: %s\n", message.c_str());
  return kExitError;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("CANTOR_METER_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 0);
  if (*end != '\0') return std::nullopt;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-depth checks for measures, grid functions, machines and covers", "cantor-meter"};
  std::string command;
  std::optional<std::size_t> depth, stages;
  bool machine_readable = false;
  bool no_timings = false;
  std::vector<std::string> files;
  std::optional<std::string> mode, kind, query, kc_lengths, c, samples;

  app.add_option("command", command, "jordan | freer | covering | machine | sawtooth | sweep")->required();
  app.add_option("files", files, "Input files");
  app.add_option("--depth", depth, "Grid or target depth");
  app.add_option("--stages", stages, "Stage count or stage bound");
  app.add_flag("--machine-readable", machine_readable, "Emit key=value records");
  app.add_flag("--no-timings", no_timings, "Leave timings out of the report");
  app.add_option("--mode", mode, "covering: discrete | continuous");
  app.add_option("--kind", kind, "machine kind: plain | prefix");
  app.add_option("--query", query, "machine: comma separated strings");
  app.add_option("--kc-lengths", kc_lengths, "machine: comma separated Kraft-Chaitin request lengths");
  app.add_option("--c", c, "covering: the constant c");
  app.add_option("--samples", samples, "sweep: number of random samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  cm_options* opts = nullptr;
  if (cm_options_create(&opts) != CM_OK) return die(cm_last_error());
  if (depth) cm_options_set_depth(opts, *depth);
  if (stages) cm_options_set_stages(opts, *stages);
  if (const char* raw = std::getenv("CANTOR_METER_SEED"); raw != nullptr && *raw != '\0') {
    const auto seed = env_seed();
    if (!seed) {
      cm_options_destroy(opts);
      return die(std::string("CANTOR_METER_SEED is not a number: ") + raw);
    }
    cm_options_set_seed(opts, *seed);
  }
  const std::pair<const char*, const std::optional<std::string>*> params[] = {
      {"mode", &mode}, {"kind", &kind}, {"query", &query}, {"kc-lengths", &kc_lengths}, {"c", &c}, {"samples", &samples}};
  for (const auto& [key, value] : params) {
    if (*value) cm_options_set(opts, key, (*value)->c_str());
  }
  for (const auto& f : files) cm_options_add_file(opts, f.c_str());

  cm_report* report = nullptr;
  const cm_status st = cm_run_command(command.c_str(), opts, &report);
  cm_options_destroy(opts);
  if (st != CM_OK) return die(cm_last_error());

  std::fputs(cm_report_render(report, machine_readable ? 1 : 0, no_timings ? 0 : 1), stdout);
  const bool passed = cm_report_passed(report) != 0;
  cm_report_destroy(report);
  return passed ? EXIT_SUCCESS : kExitFail;
}
