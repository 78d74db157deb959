#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace drweb::backends {

struct Route {
  std::string file;      // relative to the site root; empty for redirects
  std::string redirect;  // Location target; empty for files
  int status = 200;      // 3xx for redirects
};

// Static site served by FixtureServer. With an empty route table every
// file below `root` is served at its relative path, and "/" maps to
// index.html.
struct FixtureSite {
  std::filesystem::path root;
  std::map<std::string, Route> routes;
};

struct AccessEntry {
  std::string method;
  std::string path;
  int status = 0;
};

// Loopback HTTP server over a FixtureSite. Content is read once at start;
// ETags are content hashes, so repeated runs produce identical headers.
class FixtureServer {
 public:
  // Throws Error(io) when the root is missing and Error(address_in_use)
  // when the port cannot be bound. Port 0 picks a free port.
  explicit FixtureServer(FixtureSite site, std::string host = "127.0.0.1", int port = 0);
  ~FixtureServer();
  FixtureServer(const FixtureServer&) = delete;
  FixtureServer& operator=(const FixtureServer&) = delete;

  int port() const { return port_; }
  std::string base_url() const;

  std::vector<AccessEntry> access_log() const;
  // Number of logged requests for `path` (all paths when empty).
  std::size_t request_count(const std::string& path = {}) const;
  void clear_log();

  void shutdown();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string host_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex log_mutex_;
  std::vector<AccessEntry> log_;
  bool stopped_ = false;
};

// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace drweb::backends
