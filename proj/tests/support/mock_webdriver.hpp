#pragma once

// Minimal W3C WebDriver endpoint for tests. Pages are fetched over HTTP and
// one script idiom is emulated,
//   document.getElementById('ID').innerHTML='HTML';
// so that script-driven fixtures render differently from a static fetch.

#include <atomic>
#include <mutex>
#include <regex>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "backends/backend.hpp"
#include "common/error.hpp"

namespace drweb::testing {

class MockWebDriver {
 public:
  MockWebDriver() {
    using nlohmann::json;
    server_.Post("/session", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      last_capabilities_ = json::parse(req.body, nullptr, false);
      session_ = "mock-" + std::to_string(++sessions_created_);
      reply(res, 200, {{"sessionId", session_}, {"capabilities", {{"browserName", "mock"}}}});
    });
    server_.Post(R"(/session/([^/]+)/url)", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      if (!check_session(req.matches[1], res)) return;
      ++navigations_;
      if (fail_navigation_) {
        reply(res, 500, {{"error", "timeout"}, {"message", "page load timed out"}});
        return;
      }
      std::string url = json::parse(req.body).at("url");
      try {
        auto backend = backends::make_http_backend();
        backends::Page page = backend->navigate(url);
        current_url_ = page.final_url;
        source_ = render(page.body);
        reply(res, 200, nullptr);
      } catch (const Error& e) {
        reply(res, 500, {{"error", "unknown error"}, {"message", e.what()}});
      }
    });
    server_.Get(R"(/session/([^/]+)/url)", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      if (check_session(req.matches[1], res)) reply(res, 200, current_url_);
    });
    server_.Get(R"(/session/([^/]+)/source)", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      if (check_session(req.matches[1], res)) reply(res, 200, source_);
    });
    server_.Delete(R"(/session/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      if (!check_session(req.matches[1], res)) return;
      session_.clear();
      ++sessions_deleted_;
      reply(res, 200, nullptr);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockWebDriver() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int sessions_created() const { return sessions_created_; }
  int sessions_deleted() const { return sessions_deleted_; }
  int navigations() const { return navigations_; }
  void fail_navigation(bool on) { fail_navigation_ = on; }
  nlohmann::json last_capabilities() {
    std::lock_guard lock(mutex_);
    return last_capabilities_;
  }

 private:
  static void reply(httplib::Response& res, int status, const nlohmann::json& value) {
    res.status = status;
    res.set_content(nlohmann::json{{"value", value}}.dump(), "application/json; charset=utf-8");
  }

  bool check_session(const std::string& id, httplib::Response& res) {
    if (!session_.empty() && id == session_) return true;
    reply(res, 404, {{"error", "invalid session id"}, {"message", "no such session " + id}});
    return false;
  }

  static std::string render(std::string html) {
    static const std::regex assign(R"(document\.getElementById\('([^']+)'\)\.innerHTML\s*=\s*'([^']*)';?)");
    std::smatch m;
    std::string scripts = html;
    for (auto it = std::sregex_iterator(scripts.begin(), scripts.end(), assign); it != std::sregex_iterator(); ++it) {
      const std::string id = (*it)[1];
      const std::string content = (*it)[2];
      std::regex element("(<[a-zA-Z][^>]*\\bid=\"" + id + "\"[^>]*>)([\\s\\S]*?)(</[a-zA-Z]+>)");
      if (std::regex_search(html, m, element)) {
        html = m.prefix().str() + m[1].str() + content + m[3].str() + m.suffix().str();
      }
    }
    return html;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mutex_;
  std::string session_;
  std::string current_url_;
  std::string source_;
  nlohmann::json last_capabilities_;
  std::atomic<int> sessions_created_{0};
  std::atomic<int> sessions_deleted_{0};
  std::atomic<int> navigations_{0};
  std::atomic<bool> fail_navigation_{false};
};

}  // namespace drweb::testing
