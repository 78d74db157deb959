#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include "backends/backend.hpp"
#include "common/log.hpp"
#include "query/query.hpp"

namespace drweb::executor {

struct ExecutionOptions {
  int max_follow_depth = 5;
  int max_pages_per_step = 100;  // caps larger @limit values
  std::chrono::milliseconds politeness_delay{0};
};

struct ExecutionStats {
  std::size_t navigations = 0;
  std::size_t follows = 0;          // successful
  std::size_t failed_follows = 0;
  std::size_t extra_pages = 0;      // pagination beyond each chain's first page
};

// Runs a query against a backend and returns the JSON array of records.
// Root navigation errors propagate; follow and pagination failures are
// logged as warnings and execution continues. Throws Error(invalid_query)
// if the query does not validate.
query::Document execute(const query::Query& query, backends::FetchBackend& backend,
                        const ExecutionOptions& options = {}, const Logger& log = {},
                        ExecutionStats* stats = nullptr);

// Pretty-printed with 2-space indent and a trailing newline. With
// `ensure_ascii`, non-ASCII characters become \uXXXX escapes.
std::string records_to_json(const query::Document& records, bool ensure_ascii = true);

}  // namespace drweb::executor
