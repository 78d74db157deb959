#include "executor/executor.hpp"

#include <map>
#include <set>
#include <thread>

#include "common/error.hpp"
#include "common/url.hpp"
#include "selector/html.hpp"
#include "selector/xpath.hpp"

namespace drweb::executor {
namespace {

using query::Document;
using query::Step;

struct LoadedPage {
  backends::Page page;
  dom::Document doc;
};

class Run {
 public:
  Run(backends::FetchBackend& backend, const ExecutionOptions& options, const Logger& log)
      : backend_(backend), options_(options), log_(log) {}

  Document execute(const query::Query& q) {
    LoadedPage root = load(q.url);
    Document records = Document::array();
    for (const Step& step : q.steps) {
      for (auto& r : run_paginated(step, root, 0)) records.push_back(std::move(r));
    }
    log_.info("extracted " + std::to_string(records.size()) + " records with " +
              std::to_string(stats_.navigations) + " navigations");
    return records;
  }

  const ExecutionStats& stats() const { return stats_; }

 private:
  LoadedPage load(const std::string& url) {
    if (stats_.navigations > 0 && options_.politeness_delay.count() > 0)
      std::this_thread::sleep_for(options_.politeness_delay);
    log_.info("navigate " + url);
    ++stats_.navigations;
    backends::Page page = backend_.navigate(url);
    log_.debug("fetched " + page.final_url + " (status " + std::to_string(page.status) + ", " +
               std::to_string(page.body.size()) + " bytes)");
    dom::Document doc = html::parse_html(page.body, page.final_url, page.charset);
    return LoadedPage{std::move(page), std::move(doc)};
  }

  xpath::Expression compiled(const std::string& source) {
    auto it = cache_.find(source);
    if (it == cache_.end()) it = cache_.emplace(source, xpath::Expression::compile(source)).first;
    return it->second;
  }

  // First URL produced by `expr` from `context`, resolved against the page.
  std::optional<std::string> first_url(const dom::Node& context, const std::string& expr, const LoadedPage& at) {
    auto values = xpath::extract_value(context, compiled(expr)).values();
    if (values.empty()) return std::nullopt;
    return resolve_url(at.page.final_url, values.front());
  }

  std::vector<Document> run_paginated(const Step& step, const LoadedPage& first, int depth) {
    std::vector<Document> out = run_step(step, first, depth);
    if (!step.pagination) return out;

    std::int64_t cap = std::min<std::int64_t>(step.pagination->limit, options_.max_pages_per_step);
    std::set<std::string> visited{first.page.final_url};
    std::optional<LoadedPage> current;
    const LoadedPage* page = &first;
    for (std::int64_t visited_pages = 1; visited_pages < cap; ++visited_pages) {
      std::optional<std::string> next;
      try {
        next = first_url(page->doc.root(), step.pagination->xpath, *page);
      } catch (const Error& e) {
        log_.warn("pagination stopped: " + std::string(e.what()));
        break;
      }
      if (!next) {
        log_.debug("pagination exhausted after " + std::to_string(visited_pages) + " pages");
        break;
      }
      if (!visited.insert(*next).second) {
        log_.info("pagination stopped: " + *next + " was already visited in this chain");
        break;
      }
      try {
        current.emplace(load(*next));
      } catch (const Error& e) {
        log_.warn("pagination stopped at " + *next + ": " + e.what());
        break;
      }
      ++stats_.extra_pages;
      page = &*current;
      visited.insert(page->page.final_url);
      for (auto& r : run_step(step, *page, depth)) out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Document> run_step(const Step& step, const LoadedPage& at, int depth) {
    xpath::NodeSet nodes = xpath::select(at.doc.root(), compiled(step.xpath));
    log_.debug("step " + step.xpath + ": " + std::to_string(nodes.size()) + " matches on " + at.page.final_url);
    std::vector<Document> records;
    records.reserve(nodes.size());
    for (const dom::Node* node : nodes) {
      Document record = Document::object();
      if (step.fields) {
        for (const auto& field : *step.fields) {
          auto value = xpath::extract_value(*node, compiled(field.xpath));
          if (value.is_null()) record[field.name] = nullptr;
          else if (value.is_string()) record[field.name] = value.str();
          else record[field.name] = value.array();
        }
      }
      if (step.follow) follow(*step.follow, *node, record, at, depth);
      records.push_back(std::move(record));
    }
    return records;
  }

  void give_up_follow(const query::FollowSpec& spec, Document& parent) {
    for (const Step& inner : spec.steps)
      if (inner.name && !parent.contains(*inner.name)) parent[*inner.name] = Document::array();
  }

  void follow(const query::FollowSpec& spec, const dom::Node& element, Document& parent, const LoadedPage& at,
              int depth) {
    if (depth >= options_.max_follow_depth) {
      log_.warn("follow skipped: depth limit " + std::to_string(options_.max_follow_depth) + " reached on " +
                at.page.final_url);
      give_up_follow(spec, parent);
      return;
    }
    std::optional<std::string> url;
    try {
      url = first_url(element, spec.xpath, at);
    } catch (const Error& e) {
      log_.warn("follow skipped on " + at.page.final_url + ": " + e.what());
      ++stats_.failed_follows;
      give_up_follow(spec, parent);
      return;
    }
    if (!url) {
      log_.debug("follow expression " + spec.xpath + " produced no URL");
      give_up_follow(spec, parent);
      return;
    }
    std::optional<LoadedPage> target;
    try {
      target.emplace(load(*url));
    } catch (const Error& e) {
      log_.warn("follow to " + *url + " failed: " + e.what());
      ++stats_.failed_follows;
      give_up_follow(spec, parent);
      return;
    }
    ++stats_.follows;

    for (const Step& inner : spec.steps) {
      std::vector<Document> records = run_paginated(inner, *target, depth + 1);
      if (inner.name) {
        Document arr = Document::array();
        for (auto& r : records) arr.push_back(std::move(r));
        parent[*inner.name] = std::move(arr);
      } else if (records.size() == 1) {
        for (auto& [key, value] : records.front().items())
          if (!parent.contains(key)) parent[key] = value;
      } else {
        if (!parent.contains("items")) parent["items"] = Document::array();
        for (auto& r : records) parent["items"].push_back(std::move(r));
      }
    }
  }

  backends::FetchBackend& backend_;
  const ExecutionOptions& options_;
  const Logger& log_;
  ExecutionStats stats_;
  std::map<std::string, xpath::Expression> cache_;
};

}  // namespace

Document execute(const query::Query& query, backends::FetchBackend& backend, const ExecutionOptions& options,
                 const Logger& log, ExecutionStats* stats) {
  auto violations = query::validate(query);
  if (!violations.empty()) throw Error(ErrorCode::invalid_query, "invalid query: " + query::describe(violations));
  if (options.max_follow_depth < 1 || options.max_pages_per_step < 1 || options.politeness_delay.count() < 0)
    throw Error(ErrorCode::invalid_argument, "execution options must be positive");
  Run run(backend, options, log);
  try {
    Document records = run.execute(query);
    if (stats) *stats = run.stats();
    return records;
  } catch (...) {
    if (stats) *stats = run.stats();
    throw;
  }
}

std::string records_to_json(const Document& records, bool ensure_ascii) {
  return records.dump(2, ' ', ensure_ascii, Document::error_handler_t::replace) + "\n";
}

}  // namespace drweb::executor
