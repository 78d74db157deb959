#include "drweb/drweb.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "backends/backend.hpp"
#include "backends/fixture_server.hpp"
#include "backends/site_generator.hpp"
#include "benchmark/benchmark.hpp"
#include "common/error.hpp"
#include "common/log.hpp"
#include "executor/executor.hpp"
#include "query/query.hpp"
#include "query/shape.hpp"

struct drweb_query {
  drweb::query::Query model;
};

struct drweb_backend {
  std::unique_ptr<drweb::backends::FetchBackend> impl;
};

struct drweb_result {
  drweb::query::Document records;
  drweb::executor::ExecutionStats stats;
};

struct drweb_fixture_server {
  std::unique_ptr<drweb::backends::FixtureServer> impl;
  std::string url;
};

namespace {

thread_local std::string last_error;

drweb_status fail(drweb_status status, const std::string& message) {
  last_error = message;
  return status;
}

drweb_status fail(drweb::ErrorCode code, const std::string& message) {
  return fail(static_cast<drweb_status>(code), message);
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
drweb_status guarded(F&& body) {
  try {
    body();
    return DRWEB_OK;
  } catch (const drweb::Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DRWEB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DRWEB_E_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

drweb::query::Format resolve_format(drweb_format format, const std::string& name, std::string_view text) {
  switch (format) {
    case DRWEB_FORMAT_JSON5: return drweb::query::Format::json5;
    case DRWEB_FORMAT_YAML: return drweb::query::Format::yaml;
    default: return drweb::query::detect_format(name, text);
  }
}

drweb::Logger make_logger(drweb_log_level level, drweb_log_fn fn, void* user) {
  if (!fn) return {};
  return drweb::Logger(static_cast<drweb::LogLevel>(level), [fn, user](drweb::LogLevel l, std::string_view m) {
    std::string msg(m);
    fn(static_cast<drweb_log_level>(l), msg.c_str(), user);
  });
}

}  // namespace

extern "C" {

const char* drweb_version(void) { return DRWEB_VERSION; }

const char* drweb_status_name(drweb_status status) {
  if (status < DRWEB_OK || status > DRWEB_E_INTERNAL) return "unknown";
  return drweb::to_string(static_cast<drweb::ErrorCode>(status));
}

const char* drweb_last_error(void) { return last_error.c_str(); }

void drweb_string_free(char* s) { std::free(s); }

drweb_status drweb_query_parse(const char* text, size_t length, drweb_format format, const char* name,
                               drweb_query** out) {
  if (!text || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "text and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    std::string_view body(text, length);
    auto fmt = resolve_format(format, name ? name : "", body);
    *out = new drweb_query{drweb::query::parse_query(body, fmt)};
  });
}

drweb_status drweb_query_load(const char* path, drweb_format format, drweb_query** out) {
  if (!path || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "path and out must not be NULL");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(DRWEB_E_IO, std::string("cannot read ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  drweb_status st = drweb_query_parse(text.data(), text.size(), format, path, out);
  if (st != DRWEB_OK) last_error = std::string(path) + ": " + last_error;
  return st;
}

void drweb_query_free(drweb_query* query) { delete query; }

const char* drweb_query_url(const drweb_query* query) { return query ? query->model.url.c_str() : nullptr; }

drweb_status drweb_query_set_url(drweb_query* query, const char* url) {
  if (!query || !url) return fail(DRWEB_E_INVALID_ARGUMENT, "query and url must not be NULL");
  return guarded([&] {
    drweb::query::Query copy = query->model;
    copy.url = url;
    auto violations = drweb::query::validate(copy);
    if (!violations.empty()) throw drweb::query::SchemaError(violations);
    query->model = std::move(copy);
  });
}

drweb_status drweb_query_render(const drweb_query* query, drweb_format format, char** out) {
  if (!query || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "query and out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    auto fmt = format == DRWEB_FORMAT_YAML ? drweb::query::Format::yaml : drweb::query::Format::json5;
    *out = duplicate(drweb::query::render(query->model, fmt));
  });
}

drweb_status drweb_query_shape(const drweb_query* query, char** out) {
  if (!query || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "query and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = duplicate(drweb::query::shape_to_string(drweb::query::output_shape(query->model))); });
}

void drweb_http_options_init(drweb_http_options* options) {
  if (!options) return;
  drweb::backends::HttpOptions d;
  options->navigation_timeout_ms = d.navigation_timeout.count();
  options->connect_timeout_ms = d.connect_timeout.count();
  options->max_redirects = d.max_redirects;
  options->user_agent = nullptr;
}

void drweb_browser_options_init(drweb_browser_options* options) {
  if (!options) return;
  drweb::backends::BrowserOptions d;
  options->endpoint = nullptr;
  options->headless = d.headless ? 1 : 0;
  options->browser_name = nullptr;
  options->navigation_timeout_ms = d.navigation_timeout.count();
  options->connect_timeout_ms = d.connect_timeout.count();
}

drweb_status drweb_backend_http(const drweb_http_options* options, drweb_backend** out) {
  if (!out) return fail(DRWEB_E_INVALID_ARGUMENT, "out must not be NULL");
  *out = nullptr;
  drweb::backends::HttpOptions o;
  if (options) {
    if (options->navigation_timeout_ms <= 0 || options->connect_timeout_ms <= 0 || options->max_redirects < 0)
      return fail(DRWEB_E_INVALID_ARGUMENT, "timeouts must be positive and max_redirects non-negative");
    o.navigation_timeout = std::chrono::milliseconds(options->navigation_timeout_ms);
    o.connect_timeout = std::chrono::milliseconds(options->connect_timeout_ms);
    o.max_redirects = options->max_redirects;
    if (options->user_agent) o.user_agent = options->user_agent;
  }
  return guarded([&] { *out = new drweb_backend{drweb::backends::make_http_backend(std::move(o))}; });
}

drweb_status drweb_backend_browser(const drweb_browser_options* options, drweb_backend** out) {
  if (!options || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "options and out must not be NULL");
  *out = nullptr;
  if (!options->endpoint || !*options->endpoint)
    return fail(DRWEB_E_INVALID_ARGUMENT, "a WebDriver endpoint is required");
  if (options->navigation_timeout_ms <= 0 || options->connect_timeout_ms <= 0)
    return fail(DRWEB_E_INVALID_ARGUMENT, "timeouts must be positive");
  drweb::backends::BrowserOptions o;
  o.endpoint = options->endpoint;
  o.headless = options->headless != 0;
  if (options->browser_name) o.browser_name = options->browser_name;
  o.navigation_timeout = std::chrono::milliseconds(options->navigation_timeout_ms);
  o.connect_timeout = std::chrono::milliseconds(options->connect_timeout_ms);
  return guarded([&] { *out = new drweb_backend{drweb::backends::make_browser_backend(std::move(o))}; });
}

int drweb_backend_renders_javascript(const drweb_backend* backend) {
  return backend && backend->impl->capabilities().renders_javascript ? 1 : 0;
}

drweb_status drweb_backend_close(drweb_backend* backend) {
  if (!backend) return fail(DRWEB_E_INVALID_ARGUMENT, "backend must not be NULL");
  return guarded([&] { backend->impl->close(); });
}

void drweb_backend_free(drweb_backend* backend) {
  if (!backend) return;
  try {
    backend->impl->close();
  } catch (...) {
  }
  delete backend;
}

void drweb_exec_options_init(drweb_exec_options* options) {
  if (!options) return;
  drweb::executor::ExecutionOptions d;
  options->max_follow_depth = d.max_follow_depth;
  options->max_pages_per_step = d.max_pages_per_step;
  options->politeness_delay_ms = d.politeness_delay.count();
  options->log_level = DRWEB_LOG_WARN;
  options->log = nullptr;
  options->log_user_data = nullptr;
}

drweb_status drweb_execute(const drweb_query* query, drweb_backend* backend, const drweb_exec_options* options,
                           drweb_result** out) {
  if (!query || !backend || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "query, backend and out must not be NULL");
  *out = nullptr;
  drweb_exec_options opts;
  drweb_exec_options_init(&opts);
  if (options) opts = *options;
  if (opts.log_level < DRWEB_LOG_ERROR || opts.log_level > DRWEB_LOG_DEBUG)
    return fail(DRWEB_E_INVALID_ARGUMENT, "unknown log level");
  drweb::executor::ExecutionOptions eo;
  eo.max_follow_depth = opts.max_follow_depth;
  eo.max_pages_per_step = opts.max_pages_per_step;
  eo.politeness_delay = std::chrono::milliseconds(opts.politeness_delay_ms);
  auto log = make_logger(opts.log_level, opts.log, opts.log_user_data);
  return guarded([&] {
    auto result = std::make_unique<drweb_result>();
    result->records = drweb::executor::execute(query->model, *backend->impl, eo, log, &result->stats);
    *out = result.release();
  });
}

void drweb_result_free(drweb_result* result) { delete result; }

size_t drweb_result_count(const drweb_result* result) { return result ? result->records.size() : 0; }

void drweb_result_stats(const drweb_result* result, drweb_exec_stats* out) {
  if (!result || !out) return;
  out->navigations = result->stats.navigations;
  out->follows = result->stats.follows;
  out->failed_follows = result->stats.failed_follows;
  out->extra_pages = result->stats.extra_pages;
}

drweb_status drweb_result_json(const drweb_result* result, int ensure_ascii, char** out) {
  if (!result || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "result and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = duplicate(drweb::executor::records_to_json(result->records, ensure_ascii != 0)); });
}

drweb_status drweb_result_write(const drweb_result* result, const char* path, int ensure_ascii) {
  if (!result || !path) return fail(DRWEB_E_INVALID_ARGUMENT, "result and path must not be NULL");
  return guarded([&] {
    std::string text = drweb::executor::records_to_json(result->records, ensure_ascii != 0);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw drweb::Error(drweb::ErrorCode::io, std::string("cannot open ") + path + " for writing");
    f << text;
    f.close();
    if (!f) throw drweb::Error(drweb::ErrorCode::io, std::string("failed writing ") + path);
  });
}

drweb_status drweb_fixture_server_start(const char* root, int port, drweb_fixture_server** out) {
  if (!root || !out) return fail(DRWEB_E_INVALID_ARGUMENT, "root and out must not be NULL");
  if (port < 0 || port > 65535) return fail(DRWEB_E_INVALID_ARGUMENT, "port out of range");
  *out = nullptr;
  return guarded([&] {
    auto server = std::make_unique<drweb::backends::FixtureServer>(drweb::backends::FixtureSite{root, {}},
                                                                     "127.0.0.1", port);
    std::string url = server->base_url();
    *out = new drweb_fixture_server{std::move(server), std::move(url)};
  });
}

const char* drweb_fixture_server_url(const drweb_fixture_server* server) {
  return server ? server->url.c_str() : nullptr;
}

int drweb_fixture_server_port(const drweb_fixture_server* server) { return server ? server->impl->port() : 0; }

size_t drweb_fixture_server_requests(const drweb_fixture_server* server, const char* path) {
  if (!server) return 0;
  return server->impl->request_count(path ? path : "");
}

void drweb_fixture_server_free(drweb_fixture_server* server) { delete server; }

void drweb_bench_options_init(drweb_bench_options* options) {
  if (!options) return;
  drweb::benchmark::BenchmarkConfig d;
  options->tiers = "simple,medium,high";
  options->runs = d.runs_per_query;
  options->warmup_runs = d.warmup_runs;
  options->seed = d.seed;
  options->output_path = "bench.csv";
  options->log_level = DRWEB_LOG_WARN;
  options->log = nullptr;
  options->log_user_data = nullptr;
}

drweb_status drweb_bench_run(const drweb_bench_options* options, size_t* records) {
  if (records) *records = 0;
  drweb_bench_options opts;
  drweb_bench_options_init(&opts);
  if (options) opts = *options;
  if (!opts.tiers || !opts.output_path) return fail(DRWEB_E_INVALID_ARGUMENT, "tiers and output_path are required");
  return guarded([&] {
    drweb::benchmark::BenchmarkConfig config;
    config.tiers.clear();
    std::stringstream list(opts.tiers);
    for (std::string item; std::getline(list, item, ',');) {
      if (!item.empty()) config.tiers.push_back(drweb::backends::parse_tier(item));
    }
    config.runs_per_query = opts.runs;
    config.warmup_runs = opts.warmup_runs;
    config.seed = opts.seed;
    config.output_path = opts.output_path;
    auto log = make_logger(opts.log_level, opts.log, opts.log_user_data);

    std::vector<drweb::Error> failures;
    auto rows = drweb::benchmark::run_benchmark(config, log, &failures);
    if (records) *records = rows.size();
    if (rows.empty() && !failures.empty()) throw failures.front();
    drweb::benchmark::emit(rows, drweb::benchmark::summarize(rows), config.output_path);
    if (!failures.empty()) throw failures.front();
  });
}

}  // extern "C"
