#ifndef CANTOR_METER_H
#define CANTOR_METER_H

#include <stddef.h>
#include <stdint.h>

#if defined(CANTOR_METER_BUILDING)
#define CM_API __attribute__((visibility("default")))
#else
#define CM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 1..21 match cantor::ErrorCode. */
typedef enum cm_status {
  CM_OK = 0,
  CM_INVALID_ARGUMENT = 1,
  CM_PARSE_ERROR = 2,
  CM_NEGATIVE_MEASURE = 3,
  CM_NOT_MONOTONE = 4,
  CM_GRID_MISMATCH = 5,
  CM_GRID_TOO_COARSE = 6,
  CM_NOT_DOMINATING = 7,
  CM_DEPTH_EXHAUSTED = 8,
  CM_NO_DNC2_STRING = 9,
  CM_WEIGHT_EXCEEDED = 10,
  CM_RESERVED_EXHAUSTED = 11,
  CM_NO_INCOMPRESSIBLE = 12,
  CM_NO_ROOM = 13,
  CM_LAYOUT_EXHAUSTED = 14,
  CM_FULL_MEASURE = 15,
  CM_CAP_EXCEEDED = 16,
  CM_ROOT_CAPITAL = 17,
  CM_GROWTH_VIOLATION = 18,
  CM_UNCOVERED = 19,
  CM_NOT_FAIR = 20,
  CM_IO = 21,
  CM_INTERNAL = 100
} cm_status;

typedef struct cm_options cm_options;
typedef struct cm_report cm_report;

CM_API const char* cm_version(void);
CM_API const char* cm_status_name(cm_status status);
/* Message of the last failure on this thread; empty if none. */
CM_API const char* cm_last_error(void);

CM_API cm_status cm_options_create(cm_options** out);
CM_API void cm_options_destroy(cm_options* opts);
CM_API cm_status cm_options_set_depth(cm_options* opts, size_t depth);
CM_API cm_status cm_options_set_stages(cm_options* opts, size_t stages);
CM_API cm_status cm_options_set_seed(cm_options* opts, uint64_t seed);
/* Command-specific flags by long name: mode, kind, query, kc-lengths, c, samples. */
CM_API cm_status cm_options_set(cm_options* opts, const char* key, const char* value);
CM_API cm_status cm_options_add_file(cm_options* opts, const char* path);

/* On success *out owns a report; release it with cm_report_destroy. */
CM_API cm_status cm_run_command(const char* command, const cm_options* opts, cm_report** out);
CM_API void cm_report_destroy(cm_report* report);

/* 1 if every check passed. */
CM_API int cm_report_passed(const cm_report* report);
CM_API uint64_t cm_report_digest(const cm_report* report);
CM_API size_t cm_report_check_count(const cm_report* report);
/* Borrowed strings, valid until the report is destroyed. */
CM_API cm_status cm_report_check(const cm_report* report, size_t index, const char** name, int* passed,
                                 const char** witness);
/* Text tables, or key=value lines when machine_readable is nonzero. */
CM_API const char* cm_report_render(cm_report* report, int machine_readable, int with_timings);

#ifdef __cplusplus
}
#endif

#endif
