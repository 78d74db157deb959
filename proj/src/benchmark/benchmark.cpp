#include "benchmark/benchmark.hpp"

#include <sys/resource.h>
#include <sys/utsname.h>
#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "backends/backend.hpp"
#include "backends/fixture_server.hpp"
#include "common/error.hpp"
#include "executor/executor.hpp"
#include "query/query.hpp"

namespace drweb::benchmark {
namespace {

constexpr const char* kSimpleQuery = R"J({
  "@url": "{{base}}/",
  "@steps": [{
    "@xpath": "//li[contains(@class, 'item')]",
    "@fields": {
      "name": ".//span[@class='name']/text()",
      "price": ".//span[@class='price']/text()",
      "link": "./a/@href",
      "tag": ".//span[@class='tag']/text()"
    }
  }]
}
)J";

constexpr const char* kMediumQuery = R"J({
  "@url": "{{base}}/",
  "@steps": [{
    "@xpath": "//div[@class='product']",
    "@fields": {
      "sku": "./@data-sku",
      "title": "./h2[@class='title']/text()",
      "price": "./span[@class='price']/text()",
      "stock": "./span[@class='stock']/text()",
      "summary": "./p[@class='summary']/normalize-space()",
      "tags": "./ul[@class='tags']/li/text()",
      "image": "./img/@src",
      "image_alt": "./img/@alt"
    },
    "@follow": {
      "@xpath": "./a[@class='cat']/@href",
      "@steps": [{
        "@xpath": "//div[@class='category']",
        "@name": "category",
        "@fields": {
          "name": "./h1/text()",
          "description": "./p[@class='description']/text()",
          "keywords": ".//li[@class='keyword']/text()"
        }
      }]
    }
  }]
}
)J";

constexpr const char* kHighQuery = R"J({
  "@url": "{{base}}/",
  "@steps": [{
    "@xpath": "//div[@class='result']",
    "@fields": {
      "name": "./h3[@class='name']/text()",
      "score": "./span[@class='score']/text()",
      "area": "./span[@class='area']/text()"
    },
    "@pagination": {"@xpath": "//a[@rel='next']/@href", "@limit": 100},
    "@follow": {
      "@xpath": "./a[@class='detail']/@href",
      "@steps": [
        {
          "@xpath": "//div[@class='profile']",
          "@name": "profile",
          "@fields": {
            "title": "./h1/text()",
            "about": ".//h3[text()='About']/../p/normalize-space()",
            "experience": ".//h3[text()='Experience']/../p/normalize-space()"
          }
        },
        {
          "@xpath": "//div[@id='reviews']/div[@class='review']",
          "@name": "reviews",
          "@fields": {
            "author": "./span[@class='author']/text()",
            "stars": "./span[@class='stars']/text()",
            "text": "./p/text()"
          }
        }
      ]
    }
  }]
}
)J";

// User plus system time of the whole process in microseconds, fixture
// server threads included.
std::int64_t process_cpu_us() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  auto us = [](const timeval& tv) { return static_cast<std::int64_t>(tv.tv_sec) * 1000000 + tv.tv_usec; };
  return us(ru.ru_utime) + us(ru.ru_stime);
}

// Resets the kernel's peak-RSS counter when allowed; returns false otherwise.
bool reset_peak_rss() {
  std::ofstream f("/proc/self/clear_refs");
  if (!f) return false;
  f << "5";
  f.flush();
  return static_cast<bool>(f);
}

std::uint64_t peak_rss_bytes() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stoull(line.substr(6)) * 1024;
  }
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return static_cast<std::uint64_t>(ru.ru_maxrss) * 1024;
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  auto secs = std::chrono::time_point_cast<std::chrono::seconds>(t);
  auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(t - secs).count();
  std::time_t tt = std::chrono::system_clock::to_time_t(secs);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
    s.replace(at, from.size(), to);
  return s;
}

std::filesystem::path make_work_dir(const BenchmarkConfig& config) {
  if (!config.work_dir.empty()) return config.work_dir;
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  return std::filesystem::temp_directory_path() /
         ("drweb-bench-" + std::to_string(::getpid()) + "-" + std::to_string(stamp));
}

Statistic statistic(const std::vector<double>& xs) {
  Statistic s;
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

nlohmann::ordered_json statistic_json(const Statistic& s) { return {{"mean", s.mean}, {"std", s.std}}; }

}  // namespace

std::string benchmark_query(backends::Tier tier) {
  switch (tier) {
    case backends::Tier::simple: return kSimpleQuery;
    case backends::Tier::medium: return kMediumQuery;
    case backends::Tier::high: return kHighQuery;
  }
  return kSimpleQuery;
}

std::vector<BenchmarkRecord> run_benchmark(const BenchmarkConfig& config, const Logger& log,
                                           std::vector<Error>* failures) {
  if (config.runs_per_query < 1) throw Error(ErrorCode::invalid_argument, "runs per query must be at least 1");
  if (config.warmup_runs < 0) throw Error(ErrorCode::invalid_argument, "warmup runs must not be negative");
  if (config.tiers.empty()) throw Error(ErrorCode::invalid_argument, "no tiers selected");

  const std::filesystem::path work = make_work_dir(config);
  const bool owns_work_dir = config.work_dir.empty();
  std::vector<BenchmarkRecord> records;

  for (backends::Tier tier : config.tiers) {
    const std::string name(backends::to_string(tier));
    std::filesystem::path site_dir = work / name;
    try {
      auto site = backends::generate_benchmark_site(tier, config.seed, site_dir);
      backends::FixtureServer server(site);
      query::Query q = query::parse_query(replace_all(benchmark_query(tier), "{{base}}", server.base_url()),
                                          query::Format::json5);
      auto backend = backends::make_http_backend();
      log.info("tier " + name + ": serving " + site_dir.string() + " at " + server.base_url());

      for (int i = 0; i < config.warmup_runs; ++i) executor::execute(q, *backend);
      for (int run = 0; run < config.runs_per_query; ++run) {
        reset_peak_rss();
        auto stamp = std::chrono::system_clock::now();
        std::int64_t cpu0 = process_cpu_us();
        auto t0 = std::chrono::steady_clock::now();
        query::Document result = executor::execute(q, *backend);
        auto t1 = std::chrono::steady_clock::now();
        std::int64_t cpu1 = process_cpu_us();

        BenchmarkRecord r;
        r.tier = name;
        r.run_index = run;
        r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        r.cpu_time_ms = static_cast<double>(std::max<std::int64_t>(0, cpu1 - cpu0)) / 1000.0;
        r.peak_memory_bytes = peak_rss_bytes();
        r.records_extracted = result.size();
        r.timestamp = utc_timestamp(stamp);
        log.info("tier " + name + " run " + std::to_string(run) + ": " + format_double(r.wall_time_ms) + " ms, " +
                 std::to_string(r.records_extracted) + " records");
        records.push_back(std::move(r));
      }
    } catch (const Error& e) {
      std::string msg = "tier " + name + " aborted: " + e.what();
      log.error(msg);
      if (failures) failures->emplace_back(e.code(), msg);
    } catch (const std::exception& e) {
      std::string msg = "tier " + name + " aborted: " + e.what();
      log.error(msg);
      if (failures) failures->emplace_back(ErrorCode::internal, msg);
    }
    std::error_code ec;
    std::filesystem::remove_all(site_dir, ec);
  }
  if (owns_work_dir) {
    std::error_code ec;
    std::filesystem::remove_all(work, ec);
  }
  return records;
}

BenchmarkSummary summarize(const std::vector<BenchmarkRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::empty_input, "cannot summarize an empty record set");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BenchmarkRecord*>> by_tier;
  for (const auto& r : records) {
    if (!by_tier.count(r.tier)) order.push_back(r.tier);
    by_tier[r.tier].push_back(&r);
  }
  BenchmarkSummary summary;
  summary.machine = describe_machine();
  for (const auto& tier : order) {
    const auto& rs = by_tier[tier];
    std::vector<double> wall, cpu, mem, count;
    for (const auto* r : rs) {
      wall.push_back(r->wall_time_ms);
      cpu.push_back(r->cpu_time_ms);
      mem.push_back(static_cast<double>(r->peak_memory_bytes));
      count.push_back(static_cast<double>(r->records_extracted));
    }
    TierSummary t;
    t.tier = tier;
    t.runs = rs.size();
    t.std_undefined = rs.size() == 1;
    t.wall_time_ms = statistic(wall);
    t.cpu_time_ms = statistic(cpu);
    t.peak_memory_bytes = statistic(mem);
    t.records_extracted = statistic(count);
    summary.tiers.push_back(std::move(t));
  }
  return summary;
}

MachineInfo describe_machine() {
  MachineInfo m;
  std::ifstream cpu("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpu, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) m.cpu_model = line.substr(line.find_first_not_of(" \t", colon + 1));
      break;
    }
  }
  if (m.cpu_model.empty()) m.cpu_model = "unknown";
  m.cores = std::thread::hardware_concurrency();
  std::ifstream mem("/proc/meminfo");
  while (std::getline(mem, line)) {
    if (line.rfind("MemTotal:", 0) == 0) {
      m.memory_bytes = std::stoull(line.substr(9)) * 1024;
      break;
    }
  }
  utsname u{};
  if (uname(&u) == 0) m.os = std::string(u.sysname) + " " + u.release + " " + u.machine;
  return m;
}

std::string records_to_csv(const std::vector<BenchmarkRecord>& records) {
  std::string out = "tier,run_index,wall_time_ms,cpu_time_ms,peak_memory_bytes,records_extracted,timestamp\n";
  for (const auto& r : records) {
    out += r.tier + "," + std::to_string(r.run_index) + "," + format_double(r.wall_time_ms) + "," +
           format_double(r.cpu_time_ms) + "," + std::to_string(r.peak_memory_bytes) + "," +
           std::to_string(r.records_extracted) + "," + r.timestamp + "\n";
  }
  return out;
}

std::string summary_to_json(const BenchmarkSummary& summary) {
  nlohmann::ordered_json doc;
  doc["machine"] = {{"cpu_model", summary.machine.cpu_model},
                    {"cores", summary.machine.cores},
                    {"memory_bytes", summary.machine.memory_bytes},
                    {"os", summary.machine.os}};
  doc["tiers"] = nlohmann::ordered_json::array();
  for (const auto& t : summary.tiers) {
    doc["tiers"].push_back({{"tier", t.tier},
                            {"runs", t.runs},
                            {"std_undefined", t.std_undefined},
                            {"wall_time_ms", statistic_json(t.wall_time_ms)},
                            {"cpu_time_ms", statistic_json(t.cpu_time_ms)},
                            {"peak_memory_bytes", statistic_json(t.peak_memory_bytes)},
                            {"records_extracted", statistic_json(t.records_extracted)}});
  }
  return doc.dump(2) + "\n";
}

std::filesystem::path summary_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".summary.json");
  return p;
}

void emit(const std::vector<BenchmarkRecord>& records, const BenchmarkSummary& summary,
          const std::filesystem::path& csv_path) {
  auto write = [](const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::io, "failed writing " + path.string());
  };
  write(csv_path, records_to_csv(records));
  write(summary_path(csv_path), summary_to_json(summary));
}

}  // namespace drweb::benchmark
