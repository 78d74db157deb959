#ifndef DRWEB_DRWEB_H
#define DRWEB_DRWEB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DRWEB_API __declspec(dllexport)
#else
#define DRWEB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; details are available from
 * drweb_last_error() on the calling thread until its next failing call. */
typedef enum drweb_status {
  DRWEB_OK = 0,
  DRWEB_E_INVALID_ARGUMENT = 1,
  DRWEB_E_SYNTAX = 2,
  DRWEB_E_SCHEMA = 3,
  DRWEB_E_INVALID_QUERY = 4,
  DRWEB_E_XPATH_SYNTAX = 5,
  DRWEB_E_UNSUPPORTED_FEATURE = 6,
  DRWEB_E_MALFORMED_URL = 7,
  DRWEB_E_NETWORK = 8,
  DRWEB_E_HTTP = 9,
  DRWEB_E_BACKEND_CLOSED = 10,
  DRWEB_E_BACKEND_UNAVAILABLE = 11,
  DRWEB_E_NAVIGATION_TIMEOUT = 12,
  DRWEB_E_ADDRESS_IN_USE = 13,
  DRWEB_E_IO = 14,
  DRWEB_E_EMPTY_INPUT = 15,
  DRWEB_E_INTERNAL = 16
} drweb_status;

typedef enum drweb_format {
  DRWEB_FORMAT_AUTO = 0, /* by file extension, then by content */
  DRWEB_FORMAT_JSON5 = 1,
  DRWEB_FORMAT_YAML = 2
} drweb_format;

typedef enum drweb_log_level {
  DRWEB_LOG_ERROR = 0,
  DRWEB_LOG_WARN = 1,
  DRWEB_LOG_INFO = 2,
  DRWEB_LOG_DEBUG = 3
} drweb_log_level;

typedef void (*drweb_log_fn)(drweb_log_level level, const char* message, void* user_data);

typedef struct drweb_query drweb_query;
typedef struct drweb_backend drweb_backend;
typedef struct drweb_result drweb_result;
typedef struct drweb_fixture_server drweb_fixture_server;

DRWEB_API const char* drweb_version(void);
DRWEB_API const char* drweb_status_name(drweb_status status);
DRWEB_API const char* drweb_last_error(void);
DRWEB_API void drweb_string_free(char* s);

/* ---- queries ---- */

/* `name` is only used for format detection and messages; it may be NULL. */
DRWEB_API drweb_status drweb_query_parse(const char* text, size_t length, drweb_format format, const char* name,
                                         drweb_query** out);
DRWEB_API drweb_status drweb_query_load(const char* path, drweb_format format, drweb_query** out);
DRWEB_API void drweb_query_free(drweb_query* query);
DRWEB_API const char* drweb_query_url(const drweb_query* query);
DRWEB_API drweb_status drweb_query_set_url(drweb_query* query, const char* url);
/* Canonical text in the requested format (AUTO means JSON5). */
DRWEB_API drweb_status drweb_query_render(const drweb_query* query, drweb_format format, char** out);
/* Structural description of the records the query produces. */
DRWEB_API drweb_status drweb_query_shape(const drweb_query* query, char** out);

/* ---- backends ---- */

typedef struct drweb_http_options {
  int64_t navigation_timeout_ms; /* default 30000 */
  int64_t connect_timeout_ms;    /* default 10000 */
  int max_redirects;             /* default 5 */
  const char* user_agent;        /* NULL: built-in default */
} drweb_http_options;

typedef struct drweb_browser_options {
  const char* endpoint; /* WebDriver URL, required */
  int headless;         /* default 1 */
  const char* browser_name;
  int64_t navigation_timeout_ms;
  int64_t connect_timeout_ms;
} drweb_browser_options;

DRWEB_API void drweb_http_options_init(drweb_http_options* options);
DRWEB_API void drweb_browser_options_init(drweb_browser_options* options);
/* `options` may be NULL for the defaults. */
DRWEB_API drweb_status drweb_backend_http(const drweb_http_options* options, drweb_backend** out);
DRWEB_API drweb_status drweb_backend_browser(const drweb_browser_options* options, drweb_backend** out);
DRWEB_API int drweb_backend_renders_javascript(const drweb_backend* backend);
DRWEB_API drweb_status drweb_backend_close(drweb_backend* backend);
DRWEB_API void drweb_backend_free(drweb_backend* backend);

/* ---- execution ---- */

typedef struct drweb_exec_options {
  int max_follow_depth;       /* default 5 */
  int max_pages_per_step;     /* default 100 */
  int64_t politeness_delay_ms; /* default 0 */
  drweb_log_level log_level;  /* default DRWEB_LOG_WARN */
  drweb_log_fn log;           /* NULL: discard */
  void* log_user_data;
} drweb_exec_options;

typedef struct drweb_exec_stats {
  uint64_t navigations;
  uint64_t follows;
  uint64_t failed_follows;
  uint64_t extra_pages;
} drweb_exec_stats;

DRWEB_API void drweb_exec_options_init(drweb_exec_options* options);
/* Root navigation failures are returned as errors; follow and pagination
 * failures are logged as warnings. `options` may be NULL. */
DRWEB_API drweb_status drweb_execute(const drweb_query* query, drweb_backend* backend,
                                     const drweb_exec_options* options, drweb_result** out);
DRWEB_API void drweb_result_free(drweb_result* result);
DRWEB_API size_t drweb_result_count(const drweb_result* result);
DRWEB_API void drweb_result_stats(const drweb_result* result, drweb_exec_stats* out);
DRWEB_API drweb_status drweb_result_json(const drweb_result* result, int ensure_ascii, char** out);
DRWEB_API drweb_status drweb_result_write(const drweb_result* result, const char* path, int ensure_ascii);

/* ---- fixture server ---- */

/* Serves the files below `root` on 127.0.0.1. Port 0 picks a free port. */
DRWEB_API drweb_status drweb_fixture_server_start(const char* root, int port, drweb_fixture_server** out);
DRWEB_API const char* drweb_fixture_server_url(const drweb_fixture_server* server);
DRWEB_API int drweb_fixture_server_port(const drweb_fixture_server* server);
/* Requests logged for `path` (all paths when NULL or empty). */
DRWEB_API size_t drweb_fixture_server_requests(const drweb_fixture_server* server, const char* path);
DRWEB_API void drweb_fixture_server_free(drweb_fixture_server* server);

/* ---- benchmark ---- */

typedef struct drweb_bench_options {
  const char* tiers;       /* comma-separated: simple,medium,high */
  int runs;                /* per tier, default 10 */
  int warmup_runs;         /* default 1 */
  uint64_t seed;           /* default 42 */
  const char* output_path; /* CSV; the summary goes to <stem>.summary.json */
  drweb_log_level log_level;
  drweb_log_fn log;
  void* log_user_data;
} drweb_bench_options;

DRWEB_API void drweb_bench_options_init(drweb_bench_options* options);
/* Runs all tiers and writes both files. When a tier fails the remaining
 * tiers still run and their output is written; the first failure's status
 * is returned. `records` (may be NULL) receives the number of CSV rows. */
DRWEB_API drweb_status drweb_bench_run(const drweb_bench_options* options, size_t* records);

#ifdef __cplusplus
}
#endif

#endif /* DRWEB_DRWEB_H */
