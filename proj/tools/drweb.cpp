// drweb command-line tool. Talks to the engine only through drweb.h.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "drweb/drweb.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kQuery = 3, kNavigation = 4, kOutput = 5 };

struct Config {
  std::string query_path;
  std::string output_path;  // empty: stdout
  std::string log_level = "warn";
  bool headless_display = false;
  std::string format;  // empty: detect
  std::string backend = "static";
  std::string browser_endpoint;
  int max_depth = 5;
  int max_pages = 100;
  double timeout_s = 30;
  bool ensure_ascii = true;
};

struct BenchConfig {
  std::string tiers = "simple,medium,high";
  int runs = 10;
  int warmup = 1;
  std::uint64_t seed = 42;
  std::string out = "bench.csv";
};

const char* level_name(drweb_log_level level) {
  switch (level) {
    case DRWEB_LOG_ERROR: return "error";
    case DRWEB_LOG_WARN: return "warn";
    case DRWEB_LOG_INFO: return "info";
    default: return "debug";
  }
}

drweb_log_level parse_level(const std::string& name) {
  if (name == "error") return DRWEB_LOG_ERROR;
  if (name == "info") return DRWEB_LOG_INFO;
  if (name == "debug") return DRWEB_LOG_DEBUG;
  return DRWEB_LOG_WARN;
}

void log_to_stderr(drweb_log_level level, const char* message, void*) {
  std::fprintf(stderr, "[%s] %s\n", level_name(level), message);
}

void note(drweb_log_level threshold, drweb_log_level level, const std::string& message) {
  if (level <= threshold) log_to_stderr(level, message.c_str(), nullptr);
}

void report(const char* what, drweb_status status) {
  std::fprintf(stderr, "drweb: %s (%s): %s\n", what, drweb_status_name(status), drweb_last_error());
}

int exit_for_execution(drweb_status status) {
  switch (status) {
    case DRWEB_E_INVALID_QUERY:
    case DRWEB_E_XPATH_SYNTAX:
    case DRWEB_E_UNSUPPORTED_FEATURE:
      return kQuery;
    case DRWEB_E_MALFORMED_URL:
    case DRWEB_E_NETWORK:
    case DRWEB_E_HTTP:
    case DRWEB_E_BACKEND_CLOSED:
    case DRWEB_E_BACKEND_UNAVAILABLE:
    case DRWEB_E_NAVIGATION_TIMEOUT:
      return kNavigation;
    case DRWEB_E_INVALID_ARGUMENT:
      return kUsage;
    case DRWEB_E_IO:
      return kOutput;
    default:
      return kFailure;
  }
}

int run_query(const Config& cfg) {
  const drweb_log_level level = parse_level(cfg.log_level);

  drweb_format format = DRWEB_FORMAT_AUTO;
  if (cfg.format == "json5") format = DRWEB_FORMAT_JSON5;
  if (cfg.format == "yaml") format = DRWEB_FORMAT_YAML;

  drweb_query* query = nullptr;
  if (drweb_status st = drweb_query_load(cfg.query_path.c_str(), format, &query); st != DRWEB_OK) {
    report("cannot load query", st);
    return st == DRWEB_E_IO ? kOutput : kQuery;
  }

  drweb_backend* backend = nullptr;
  drweb_status st;
  const auto timeout_ms = static_cast<int64_t>(cfg.timeout_s * 1000);
  if (cfg.backend == "browser") {
    drweb_browser_options opts;
    drweb_browser_options_init(&opts);
    opts.endpoint = cfg.browser_endpoint.c_str();
    opts.headless = cfg.headless_display ? 1 : 0;
    opts.navigation_timeout_ms = timeout_ms;
    st = drweb_backend_browser(&opts, &backend);
  } else {
    if (cfg.headless_display) note(level, DRWEB_LOG_INFO, "--xvfb has no effect with the static backend");
    drweb_http_options opts;
    drweb_http_options_init(&opts);
    opts.navigation_timeout_ms = timeout_ms;
    st = drweb_backend_http(&opts, &backend);
  }
  if (st != DRWEB_OK) {
    drweb_query_free(query);
    report("cannot create backend", st);
    return st == DRWEB_E_INVALID_ARGUMENT ? kUsage : kNavigation;
  }

  drweb_exec_options exec;
  drweb_exec_options_init(&exec);
  exec.max_follow_depth = cfg.max_depth;
  exec.max_pages_per_step = cfg.max_pages;
  exec.log_level = level;
  exec.log = log_to_stderr;

  drweb_result* result = nullptr;
  st = drweb_execute(query, backend, &exec, &result);
  drweb_backend_free(backend);
  drweb_query_free(query);
  if (st != DRWEB_OK) {
    report("extraction failed", st);
    return exit_for_execution(st);
  }

  int code = kOk;
  if (cfg.output_path.empty()) {
    char* json = nullptr;
    st = drweb_result_json(result, cfg.ensure_ascii, &json);
    if (st == DRWEB_OK) {
      std::fputs(json, stdout);
      if (std::fflush(stdout) != 0) {
        std::fprintf(stderr, "drweb: cannot write to standard output\n");
        code = kOutput;
      }
      drweb_string_free(json);
    }
  } else {
    st = drweb_result_write(result, cfg.output_path.c_str(), cfg.ensure_ascii);
  }
  if (st != DRWEB_OK) {
    report("cannot write output", st);
    code = kOutput;
  } else if (code == kOk) {
    note(level, DRWEB_LOG_INFO, std::to_string(drweb_result_count(result)) + " records written to " +
                                    (cfg.output_path.empty() ? std::string("stdout") : cfg.output_path));
  }
  drweb_result_free(result);
  return code;
}

int run_bench(const BenchConfig& cfg, const std::string& log_level) {
  drweb_bench_options opts;
  drweb_bench_options_init(&opts);
  opts.tiers = cfg.tiers.c_str();
  opts.runs = cfg.runs;
  opts.warmup_runs = cfg.warmup;
  opts.seed = cfg.seed;
  opts.output_path = cfg.out.c_str();
  opts.log_level = parse_level(log_level);
  opts.log = log_to_stderr;
  size_t rows = 0;
  drweb_status st = drweb_bench_run(&opts, &rows);
  if (st != DRWEB_OK) {
    report("benchmark failed", st);
    if (st == DRWEB_E_INVALID_ARGUMENT) return kUsage;
    return st == DRWEB_E_IO ? kOutput : kFailure;
  }
  note(parse_level(log_level), DRWEB_LOG_INFO, std::to_string(rows) + " records written to " + cfg.out);
  return kOk;
}

int run_serve(const std::string& root, int port) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  drweb_fixture_server* server = nullptr;
  if (drweb_status st = drweb_fixture_server_start(root.c_str(), port, &server); st != DRWEB_OK) {
    report("cannot start server", st);
    return st == DRWEB_E_IO ? kOutput : kFailure;
  }
  std::printf("%s\n", drweb_fixture_server_url(server));
  std::fflush(stdout);
  int sig = 0;
  sigwait(&signals, &sig);
  drweb_fixture_server_free(server);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Declarative web data extraction: runs a JSON5/YAML query and prints the records as JSON."};
  app.set_version_flag("--version", drweb_version());
  app.fallthrough();

  Config cfg;
  app.add_option("-q,--query", cfg.query_path, "Query file (.json5, .json, .yaml, .yml)");
  app.add_option("-o,--output", cfg.output_path, "Output file; standard output when omitted");
  app.add_option("-l,--log-level", cfg.log_level, "Log verbosity on standard error")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));
  app.add_flag("--xvfb", cfg.headless_display, "Run the browser without a display");
  app.add_option("--format", cfg.format, "Force the query format")->check(CLI::IsMember({"json5", "yaml"}));
  app.add_option("--backend", cfg.backend, "Page fetcher")->check(CLI::IsMember({"static", "browser"}));
  app.add_option("--browser-endpoint", cfg.browser_endpoint, "WebDriver URL for --backend browser")
      ->envname("DRWEB_BROWSER_ENDPOINT");
  app.add_option("--max-depth", cfg.max_depth, "Maximum @follow nesting")->check(CLI::PositiveNumber);
  app.add_option("--max-pages", cfg.max_pages, "Cap on pages per paginated step")->check(CLI::PositiveNumber);
  app.add_option("--timeout", cfg.timeout_s, "Navigation timeout in seconds")->check(CLI::PositiveNumber);
  bool no_ascii = false;
  app.add_flag("--no-ensure-ascii", no_ascii, "Write non-ASCII characters unescaped");

  BenchConfig bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the tiered benchmark against generated local sites");
  bench_cmd->add_option("--tiers", bench.tiers, "Comma-separated tiers (simple,medium,high)");
  bench_cmd->add_option("--runs", bench.runs, "Measured runs per tier")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", bench.warmup, "Unmeasured runs per tier")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--seed", bench.seed, "Site generator seed");
  bench_cmd->add_option("--out", bench.out, "CSV path; the summary is written next to it");

  std::string serve_root;
  int serve_port = 0;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve a directory of HTML files on 127.0.0.1");
  serve_cmd->add_option("root", serve_root, "Site directory")->required();
  serve_cmd->add_option("--port", serve_port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
    if (bench_cmd->parsed() || serve_cmd->parsed()) {
      // nothing else to check
    } else if (cfg.query_path.empty()) {
      throw CLI::RequiredError("--query");
    } else if (cfg.backend == "browser" && cfg.browser_endpoint.empty()) {
      throw CLI::ValidationError("--backend browser requires --browser-endpoint or DRWEB_BROWSER_ENDPOINT");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "drweb: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  cfg.ensure_ascii = !no_ascii;

  if (bench_cmd->parsed()) return run_bench(bench, cfg.log_level);
  if (serve_cmd->parsed()) return run_serve(serve_root, serve_port);
  return run_query(cfg);
}
