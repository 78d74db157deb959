#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace drweb::html::detail {

void append_utf8(std::string& out, std::uint32_t cp);

// Decodes a character reference. `input` starts just after the '&'.
// Returns the number of bytes consumed (0 when nothing was decoded, in
// which case the '&' is literal).
std::size_t decode_reference(std::string_view input, bool in_attribute, std::string& out);

}  // namespace drweb::html::detail
