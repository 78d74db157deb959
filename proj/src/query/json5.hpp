#pragma once

#include <string_view>

#include <json.hpp>

namespace drweb::query {

using Document = nlohmann::ordered_json;

// Reads a JSON5 document (comments, trailing commas, unquoted keys,
// single-quoted strings, hex numbers). Object key order is preserved.
// Throws SyntaxError with 1-based line/column on malformed input or duplicate keys.
Document parse_json5(std::string_view text);

}  // namespace drweb::query
