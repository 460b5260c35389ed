/* C interface to the chernvan verification library. */
#ifndef CHERNVAN_H
#define CHERNVAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(CHERNVAN_BUILDING_LIBRARY)
#define CV_API __attribute__((visibility("default")))
#else
#define CV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cv_status {
  CV_OK = 0,
  CV_INVALID_ARGUMENT = 1,
  CV_PARSE = 2,
  CV_VALIDATION = 3,
  CV_CHECK_FAILED = 4,
  CV_IO = 5,
  CV_INTERNAL = 6
} cv_status;

typedef struct cv_report cv_report;
typedef struct cv_boundary_config cv_boundary_config;
typedef struct cv_cone cv_cone;

/* Message for the last non-OK status on this thread; never NULL. */
CV_API const char* cv_last_error(void);
CV_API const char* cv_status_name(cv_status status);
CV_API const char* cv_version(void);

/* Strings returned through char** are owned by the caller. */
CV_API void cv_string_free(char* s);

/* Exact values as "p/q". */
CV_API cv_status cv_bernoulli(unsigned n, char** out);
CV_API cv_status cv_euler_number(unsigned n, char** out);
CV_API cv_status cv_euler_via_bernoulli(unsigned n, char** out);

/* Runners. A report is stored in *out whenever the run completes; the status
   is CV_CHECK_FAILED when some check in it failed. */
CV_API cv_status cv_run_numbers(int n_max, cv_report** out);
CV_API cv_status cv_run_identities(int g_max, int d_max, cv_report** out);
CV_API cv_status cv_run_lemma21(int g, int d, cv_report** out);
CV_API cv_status cv_run_grr_certify(const char* config_path, cv_report** out);
/* subset may be NULL for every stratum */
CV_API cv_status cv_run_grr_delta(const char* config_path, const char* subset, cv_report** out);
CV_API cv_status cv_run_grr_reduce(const char* config_path, const char* expression, int use_seed,
                                   uint64_t seed, cv_report** out);
/* bound < 0 selects the default search bound */
CV_API cv_status cv_run_cone_check(const char* cone_path, int even_level, long bound,
                                   cv_report** out);
CV_API cv_status cv_run_verify_all(int g_max, int d_max, const char* fixture_dir,
                                   cv_report** out);

CV_API cv_status cv_report_parse(const char* json, cv_report** out);
CV_API void cv_report_free(cv_report* report);
CV_API int cv_report_passed(const cv_report* report);
CV_API const char* cv_report_subcommand(const cv_report* report);
CV_API size_t cv_report_check_count(const cv_report* report);
CV_API cv_status cv_report_check(const cv_report* report, size_t index, const char** name,
                                 int* passed, const char** details);
CV_API cv_status cv_report_json(const cv_report* report, char** out);
CV_API cv_status cv_report_text(const cv_report* report, char** out);
CV_API cv_status cv_report_timing_json(const cv_report* report, char** out);

CV_API cv_status cv_boundary_config_load(const char* path, cv_boundary_config** out);
CV_API void cv_boundary_config_free(cv_boundary_config* cfg);
/* 1 when the configuration satisfies every hypothesis, 0 otherwise. */
CV_API cv_status cv_boundary_config_is_valid(const cv_boundary_config* cfg, int* out);
CV_API cv_status cv_boundary_config_delta(const cv_boundary_config* cfg, const char* subset,
                                          int* out);

CV_API cv_status cv_cone_load(const char* path, cv_cone** out);
CV_API void cv_cone_free(cv_cone* cone);
CV_API cv_status cv_cone_is_smooth(const cv_cone* cone, int* out);

#ifdef __cplusplus
}
#endif

#endif
