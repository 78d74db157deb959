#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "backends/site_generator.hpp"
#include "common/error.hpp"
#include "common/log.hpp"

namespace drweb::benchmark {

struct BenchmarkConfig {
  std::vector<backends::Tier> tiers{backends::Tier::simple, backends::Tier::medium, backends::Tier::high};
  int runs_per_query = 10;
  std::uint64_t seed = 42;
  int warmup_runs = 1;
  std::filesystem::path output_path = "bench.csv";
  std::filesystem::path work_dir;  // generated sites; a temporary directory when empty
};

struct BenchmarkRecord {
  std::string tier;
  int run_index = 0;
  double wall_time_ms = 0;
  double cpu_time_ms = 0;
  std::uint64_t peak_memory_bytes = 0;
  std::uint64_t records_extracted = 0;
  std::string timestamp;  // UTC, ISO 8601
};

struct Statistic {
  double mean = 0;
  double std = 0;  // sample (n - 1); 0 when n == 1
};

struct TierSummary {
  std::string tier;
  std::size_t runs = 0;
  bool std_undefined = false;  // single run
  Statistic wall_time_ms, cpu_time_ms, peak_memory_bytes, records_extracted;
};

struct MachineInfo {
  std::string cpu_model;
  unsigned cores = 0;
  std::uint64_t memory_bytes = 0;
  std::string os;
};

struct BenchmarkSummary {
  std::vector<TierSummary> tiers;  // in order of first appearance
  MachineInfo machine;
};

// Canonical JSON5 query for a tier; "{{base}}" stands for the site origin.
std::string benchmark_query(backends::Tier tier);

// Runs every tier sequentially against a freshly generated and served site.
// A failing run aborts its tier; the error is appended to `failures` and
// the records gathered so far are kept.
std::vector<BenchmarkRecord> run_benchmark(const BenchmarkConfig& config, const Logger& log = {},
                                           std::vector<Error>* failures = nullptr);

// Throws Error(empty_input) for an empty record list.
BenchmarkSummary summarize(const std::vector<BenchmarkRecord>& records);

MachineInfo describe_machine();

// Writes the CSV to `csv_path` and the summary to summary_path(csv_path).
// Parent directories must exist; throws Error(io) otherwise.
void emit(const std::vector<BenchmarkRecord>& records, const BenchmarkSummary& summary,
          const std::filesystem::path& csv_path);
std::filesystem::path summary_path(const std::filesystem::path& csv_path);

std::string records_to_csv(const std::vector<BenchmarkRecord>& records);
std::string summary_to_json(const BenchmarkSummary& summary);

}  // namespace drweb::benchmark
