#include <httplib.h>

#include "backends/backend.hpp"
#include "common/error.hpp"
#include "common/url.hpp"

namespace drweb::backends {

std::string HttpOptions::default_user_agent() { return "drweb/" DRWEB_VERSION " (+declarative extraction engine)"; }

std::optional<std::string> charset_from_content_type(std::string_view content_type) {
  std::string lowered;
  for (char c : content_type) lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::size_t at = lowered.find("charset=");
  if (at == std::string::npos) return std::nullopt;
  std::string value = lowered.substr(at + 8);
  if (!value.empty() && (value[0] == '"' || value[0] == '\'')) value.erase(0, 1);
  std::size_t end = value.find_first_of(";\"' \t");
  if (end != std::string::npos) value.resize(end);
  if (value.empty()) return std::nullopt;
  return value;
}

namespace {

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

class HttpBackend final : public FetchBackend {
 public:
  explicit HttpBackend(HttpOptions options) : options_(std::move(options)) {}

  Page navigate(const std::string& url) override {
    if (closed_) throw Error(ErrorCode::backend_closed, "navigate called after close");
    std::string current = url;
    for (int hops = 0;; ++hops) {
      auto parsed = parse_absolute_url(current);
      if (!parsed || !parsed->is_http()) throw Error(ErrorCode::malformed_url, "not an absolute http(s) URL: " + current);

      httplib::Client client(parsed->origin());
      client.set_connection_timeout(options_.connect_timeout);
      client.set_read_timeout(options_.navigation_timeout);
      client.set_write_timeout(options_.navigation_timeout);
      client.set_follow_location(false);
      client.set_decompress(true);
      httplib::Headers headers{{"User-Agent", options_.user_agent},
                               {"Accept", "text/html,application/xhtml+xml,*/*;q=0.8"}};

      auto res = client.Get(parsed->target(), headers);
      if (!res) {
        throw Error(ErrorCode::network, "request to " + current + " failed: " + httplib::to_string(res.error()));
      }
      if (is_redirect(res->status) && res->has_header("Location")) {
        if (hops >= options_.max_redirects) {
          throw Error(ErrorCode::network, "too many redirects (limit " + std::to_string(options_.max_redirects) +
                                              ") starting at " + url);
        }
        current = resolve_url(current, res->get_header_value("Location"));
        continue;
      }
      if (res->status >= 400) throw HttpError(res->status, current);

      Page page;
      page.final_url = current;
      page.status = res->status;
      page.body = std::move(res->body);
      page.charset = charset_from_content_type(res->get_header_value("Content-Type"));
      return page;
    }
  }

  void close() override { closed_ = true; }

  Capabilities capabilities() const override { return {false}; }

 private:
  HttpOptions options_;
  bool closed_ = false;
};

}  // namespace

std::unique_ptr<FetchBackend> make_http_backend(HttpOptions options) {
  return std::make_unique<HttpBackend>(std::move(options));
}

}  // namespace drweb::backends
