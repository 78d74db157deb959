#include "common/error.hpp"

namespace drweb {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::syntax: return "syntax error";
    case ErrorCode::schema: return "schema error";
    case ErrorCode::invalid_query: return "invalid query";
    case ErrorCode::xpath_syntax: return "xpath syntax error";
    case ErrorCode::unsupported_feature: return "unsupported feature";
    case ErrorCode::malformed_url: return "malformed url";
    case ErrorCode::network: return "network error";
    case ErrorCode::http: return "http error";
    case ErrorCode::backend_closed: return "backend closed";
    case ErrorCode::backend_unavailable: return "backend unavailable";
    case ErrorCode::navigation_timeout: return "navigation timeout";
    case ErrorCode::address_in_use: return "address in use";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::empty_input: return "empty input";
    case ErrorCode::internal: return "internal error";
  }
  return "unknown";
}

}  // namespace drweb
