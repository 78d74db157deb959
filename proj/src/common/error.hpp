#pragma once

#include <stdexcept>
#include <string>

namespace drweb {

// Numeric values are part of the C ABI (see drweb.h); append only.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  syntax = 2,
  schema = 3,
  invalid_query = 4,
  xpath_syntax = 5,
  unsupported_feature = 6,
  malformed_url = 7,
  network = 8,
  http = 9,
  backend_closed = 10,
  backend_unavailable = 11,
  navigation_timeout = 12,
  address_in_use = 13,
  io = 14,
  empty_input = 15,
  internal = 16,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Malformed JSON5/YAML text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(ErrorCode::syntax, msg + " at line " + std::to_string(line) + ", column " +
                                     std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class HttpError : public Error {
 public:
  HttpError(int status, const std::string& url)
      : Error(ErrorCode::http, "HTTP " + std::to_string(status) + " for " + url), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

}  // namespace drweb
