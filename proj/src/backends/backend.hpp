#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

namespace drweb::backends {

// A fetched document as delivered after redirects.
struct Page {
  std::string final_url;
  std::string body;
  int status = 200;
  std::optional<std::string> charset;  // from Content-Type, lowercase
};

struct Capabilities {
  bool renders_javascript = false;
};

// Navigation contract shared by the static fetcher and the browser client.
// Calls on one instance must be sequential. After close(), navigate throws
// Error(backend_closed); close itself is idempotent.
class FetchBackend {
 public:
  virtual ~FetchBackend() = default;
  virtual Page navigate(const std::string& url) = 0;
  virtual void close() = 0;
  virtual Capabilities capabilities() const = 0;
};

struct HttpOptions {
  std::chrono::milliseconds navigation_timeout{30000};
  std::chrono::milliseconds connect_timeout{10000};
  int max_redirects = 5;
  std::string user_agent = default_user_agent();

  static std::string default_user_agent();
};

struct BrowserOptions {
  std::string endpoint;  // WebDriver base URL, e.g. http://127.0.0.1:4444
  bool headless = true;
  std::string browser_name;  // empty: let the endpoint choose
  std::chrono::milliseconds navigation_timeout{30000};
  std::chrono::milliseconds connect_timeout{10000};
};

std::unique_ptr<FetchBackend> make_http_backend(HttpOptions options = {});
std::unique_ptr<FetchBackend> make_browser_backend(BrowserOptions options);

// Charset parameter of a Content-Type header value, lowercased.
std::optional<std::string> charset_from_content_type(std::string_view content_type);

}  // namespace drweb::backends
