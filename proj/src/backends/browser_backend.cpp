#include <httplib.h>
#include <json.hpp>

#include "backends/backend.hpp"
#include "common/error.hpp"
#include "common/url.hpp"

namespace drweb::backends {
namespace {

using json = nlohmann::json;

// W3C WebDriver client: one session per backend, created on first use.
class BrowserBackend final : public FetchBackend {
 public:
  explicit BrowserBackend(BrowserOptions options) : options_(std::move(options)) {
    auto parsed = parse_absolute_url(options_.endpoint);
    if (!parsed || !parsed->is_http())
      throw Error(ErrorCode::invalid_argument, "browser endpoint must be an http URL: " + options_.endpoint);
    origin_ = parsed->origin();
    prefix_ = parsed->path;
    while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  }

  ~BrowserBackend() override {
    try {
      close();
    } catch (...) {
    }
  }

  Page navigate(const std::string& url) override {
    if (closed_) throw Error(ErrorCode::backend_closed, "navigate called after close");
    if (!is_absolute_http_url(url)) throw Error(ErrorCode::malformed_url, "not an absolute http(s) URL: " + url);
    ensure_session();
    call("POST", session_path() + "/url", json{{"url", url}});
    Page page;
    page.final_url = call("GET", session_path() + "/url").get<std::string>();
    page.body = call("GET", session_path() + "/source").get<std::string>();
    page.status = 200;
    page.charset = "utf-8";
    return page;
  }

  void close() override {
    if (closed_) return;
    closed_ = true;
    if (!session_id_.empty()) {
      try {
        call("DELETE", session_path());
      } catch (const Error&) {
      }
      session_id_.clear();
    }
  }

  Capabilities capabilities() const override { return {true}; }

 private:
  std::string session_path() const { return prefix_ + "/session/" + session_id_; }

  void ensure_session() {
    if (!session_id_.empty()) return;
    json always = json::object();
    if (!options_.browser_name.empty()) always["browserName"] = options_.browser_name;
    if (options_.headless) {
      always["goog:chromeOptions"] = {{"args", {"--headless=new", "--disable-gpu"}}};
      always["moz:firefoxOptions"] = {{"args", {"-headless"}}};
    }
    always["pageLoadStrategy"] = "normal";
    always["timeouts"] = {{"pageLoad", options_.navigation_timeout.count()}};
    json value = call("POST", prefix_ + "/session", json{{"capabilities", {{"alwaysMatch", always}}}});
    if (!value.is_object() || !value.contains("sessionId") || !value["sessionId"].is_string())
      throw Error(ErrorCode::backend_unavailable, "WebDriver endpoint returned no session id");
    session_id_ = value["sessionId"].get<std::string>();
  }

  // Sends one command and returns the "value" member of the reply.
  json call(const std::string& method, const std::string& path, const json& body = nullptr) {
    httplib::Client client(origin_);
    client.set_connection_timeout(options_.connect_timeout);
    client.set_read_timeout(options_.navigation_timeout + std::chrono::seconds(5));
    client.set_write_timeout(options_.navigation_timeout);
    httplib::Result res{nullptr, httplib::Error::Unknown};
    std::string payload = body.is_null() ? "{}" : body.dump();
    if (method == "POST") res = client.Post(path, payload, "application/json");
    else if (method == "DELETE") res = client.Delete(path);
    else res = client.Get(path);

    if (!res) {
      auto err = res.error();
      if (err == httplib::Error::Read && !session_id_.empty())
        throw Error(ErrorCode::navigation_timeout, "browser did not answer " + method + " " + path + " in time");
      throw Error(ErrorCode::backend_unavailable,
                  "WebDriver endpoint " + options_.endpoint + " unreachable: " + httplib::to_string(err));
    }
    json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object())
      throw Error(ErrorCode::backend_unavailable, "malformed WebDriver reply (HTTP " + std::to_string(res->status) + ")");
    json value = reply.value("value", json());
    if (res->status >= 400 || (value.is_object() && value.contains("error"))) {
      std::string code = value.is_object() ? value.value("error", std::string("unknown error")) : "unknown error";
      std::string message = value.is_object() ? value.value("message", std::string()) : std::string();
      if (code == "timeout") throw Error(ErrorCode::navigation_timeout, "navigation timed out: " + message);
      if (code == "session not created") throw Error(ErrorCode::backend_unavailable, "session not created: " + message);
      throw Error(ErrorCode::network, "WebDriver error '" + code + "': " + message);
    }
    return value;
  }

  BrowserOptions options_;
  std::string origin_;
  std::string prefix_;
  std::string session_id_;
  bool closed_ = false;
};

}  // namespace

std::unique_ptr<FetchBackend> make_browser_backend(BrowserOptions options) {
  return std::make_unique<BrowserBackend>(std::move(options));
}

}  // namespace drweb::backends
