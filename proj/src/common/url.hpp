#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace drweb {

// RFC 3986 components. `port` is empty when absent.
struct Url {
  std::string scheme;  // lowercase, without ':'
  std::optional<std::string> authority;
  std::string host;  // lowercase
  std::string port;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  bool is_http() const { return scheme == "http" || scheme == "https"; }
  // Scheme + authority, e.g. "https://example.org:8443".
  std::string origin() const;
  // Path plus query, never empty for http(s).
  std::string target() const;
  std::string str() const;
};

// Parses an absolute URL. Returns nullopt for relative references,
// missing hosts and non-numeric ports.
std::optional<Url> parse_absolute_url(std::string_view text);

bool is_absolute_http_url(std::string_view text);

// Standard reference resolution. Surrounding whitespace in `href` is
// trimmed and inner spaces are percent-encoded. Throws Error(malformed_url).
std::string resolve_url(std::string_view base, std::string_view href);

}  // namespace drweb
