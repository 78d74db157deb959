#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "selector/dom.hpp"

namespace drweb::html {

// Lenient HTML parse. Never fails: malformed markup yields a best-effort
// tree with html/head/body always present. The encoding is taken from
// `declared_charset` (e.g. a Content-Type parameter), then a <meta> sniff,
// then UTF-8. Invalid byte sequences become U+FFFD.
dom::Document parse_html(std::string_view bytes, std::string base_url,
                         std::optional<std::string> declared_charset = std::nullopt);

// Encoding named by a <meta charset> / http-equiv declaration in the first
// 1024 bytes, lowercased.
std::optional<std::string> sniff_meta_charset(std::string_view bytes);

// Converts `bytes` in `charset` to UTF-8.
std::string decode_to_utf8(std::string_view bytes, std::string_view charset);

}  // namespace drweb::html
