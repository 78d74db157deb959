#include "common/url.hpp"

#include <algorithm>
#include <cctype>

#include "common/error.hpp"

namespace drweb {
namespace {

struct Reference {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '+' || c == '-' || c == '.';
  });
}

Reference split(std::string_view text) {
  Reference r;
  std::size_t colon = text.find(':');
  std::size_t first_delim = text.find_first_of("/?#");
  if (colon != std::string_view::npos && (first_delim == std::string_view::npos || colon < first_delim) &&
      valid_scheme(text.substr(0, colon))) {
    r.scheme = lower(std::string(text.substr(0, colon)));
    text.remove_prefix(colon + 1);
  }
  if (text.substr(0, 2) == "//") {
    text.remove_prefix(2);
    std::size_t end = text.find_first_of("/?#");
    r.authority = std::string(text.substr(0, end));
    text.remove_prefix(end == std::string_view::npos ? text.size() : end);
  }
  std::size_t hash = text.find('#');
  if (hash != std::string_view::npos) {
    r.fragment = std::string(text.substr(hash + 1));
    text = text.substr(0, hash);
  }
  std::size_t qmark = text.find('?');
  if (qmark != std::string_view::npos) {
    r.query = std::string(text.substr(qmark + 1));
    text = text.substr(0, qmark);
  }
  r.path = std::string(text);
  return r;
}

std::string remove_dot_segments(std::string_view input) {
  std::string in(input);
  std::string out;
  while (!in.empty()) {
    if (in.rfind("../", 0) == 0) {
      in.erase(0, 3);
    } else if (in.rfind("./", 0) == 0) {
      in.erase(0, 2);
    } else if (in.rfind("/./", 0) == 0) {
      in.erase(0, 2);
    } else if (in == "/.") {
      in = "/";
    } else if (in.rfind("/../", 0) == 0 || in == "/..") {
      in = in == "/.." ? "/" : in.substr(3);
      std::size_t slash = out.rfind('/');
      out.erase(slash == std::string::npos ? 0 : slash);
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      std::size_t start = in[0] == '/' ? 1 : 0;
      std::size_t next = in.find('/', start);
      if (next == std::string::npos) next = in.size();
      out += in.substr(0, next);
      in.erase(0, next);
    }
  }
  return out;
}

std::string clean_href(std::string_view href) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; };
  while (!href.empty() && is_space(href.front())) href.remove_prefix(1);
  while (!href.empty() && is_space(href.back())) href.remove_suffix(1);
  std::string out;
  for (char c : href) {
    if (c == '\t' || c == '\n' || c == '\r') continue;
    if (c == ' ') out += "%20";
    else out += c;
  }
  return out;
}

std::optional<Url> from_reference(const Reference& r) {
  if (!r.scheme || !r.authority) return std::nullopt;
  Url url;
  url.scheme = *r.scheme;
  std::string hostport = *r.authority;
  std::size_t at = hostport.rfind('@');
  if (at != std::string::npos) hostport.erase(0, at + 1);
  std::size_t colon = hostport.rfind(':');
  std::size_t bracket = hostport.rfind(']');
  if (colon != std::string::npos && (bracket == std::string::npos || colon > bracket)) {
    url.port = hostport.substr(colon + 1);
    hostport.erase(colon);
    if (!std::all_of(url.port.begin(), url.port.end(), [](unsigned char c) { return std::isdigit(c); }))
      return std::nullopt;
    if (url.port.size() > 5 || (!url.port.empty() && std::stoi(url.port) > 65535)) return std::nullopt;
  }
  url.host = lower(hostport);
  if (url.host.empty()) return std::nullopt;
  url.authority = lower(*r.authority);
  url.path = r.path.empty() ? "/" : r.path;
  url.query = r.query;
  url.fragment = r.fragment;
  return url;
}

std::string recompose(const Reference& r) {
  std::string out;
  if (r.scheme) out += *r.scheme + ":";
  if (r.authority) out += "//" + *r.authority;
  out += r.path;
  if (r.query) out += "?" + *r.query;
  if (r.fragment) out += "#" + *r.fragment;
  return out;
}

}  // namespace

std::string Url::origin() const {
  std::string out = scheme + "://" + host;
  if (!port.empty()) out += ":" + port;
  return out;
}

std::string Url::target() const {
  std::string out = path.empty() ? "/" : path;
  if (query) out += "?" + *query;
  return out;
}

std::string Url::str() const {
  std::string out = scheme + ":";
  if (authority) out += "//" + *authority;
  out += path;
  if (query) out += "?" + *query;
  if (fragment) out += "#" + *fragment;
  return out;
}

std::optional<Url> parse_absolute_url(std::string_view text) {
  if (text.empty() || text.find_first_of(" \t\r\n") != std::string_view::npos) return std::nullopt;
  return from_reference(split(text));
}

bool is_absolute_http_url(std::string_view text) {
  auto url = parse_absolute_url(text);
  return url && url->is_http();
}

std::string resolve_url(std::string_view base, std::string_view href) {
  auto base_url = parse_absolute_url(base);
  if (!base_url) throw Error(ErrorCode::malformed_url, "base URL is not absolute: " + std::string(base));
  const std::string cleaned = clean_href(href);
  Reference ref = split(cleaned);
  Reference b = split(base_url->str());
  Reference t;
  if (ref.scheme) {
    t = ref;
    t.path = remove_dot_segments(ref.path);
  } else {
    t.scheme = b.scheme;
    if (ref.authority) {
      t.authority = ref.authority;
      t.path = remove_dot_segments(ref.path);
      t.query = ref.query;
    } else {
      t.authority = b.authority;
      if (ref.path.empty()) {
        t.path = b.path;
        t.query = ref.query ? ref.query : b.query;
      } else {
        if (ref.path[0] == '/') {
          t.path = remove_dot_segments(ref.path);
        } else {
          std::string merged;
          if (b.authority && b.path.empty()) {
            merged = "/" + ref.path;
          } else {
            std::size_t slash = b.path.rfind('/');
            merged = (slash == std::string::npos ? std::string() : b.path.substr(0, slash + 1)) + ref.path;
          }
          t.path = remove_dot_segments(merged);
        }
        t.query = ref.query;
      }
    }
    t.fragment = ref.fragment;
  }
  if (t.scheme == "http" || t.scheme == "https") {
    auto url = from_reference(t);
    if (!url) throw Error(ErrorCode::malformed_url, "cannot resolve '" + cleaned + "' against " + std::string(base));
    return url->str();
  }
  return recompose(t);
}

}  // namespace drweb
