#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace drweb {

enum class LogLevel : int { error = 0, warn = 1, info = 2, debug = 3 };

std::string_view to_string(LogLevel level) noexcept;
std::optional<LogLevel> parse_log_level(std::string_view name) noexcept;

using LogSink = std::function<void(LogLevel, std::string_view)>;

// Cheap to copy. A default-constructed logger drops everything.
class Logger {
 public:
  Logger() = default;
  Logger(LogLevel threshold, LogSink sink) : threshold_(threshold), sink_(std::move(sink)) {}

  bool enabled(LogLevel level) const noexcept {
    return sink_ && static_cast<int>(level) <= static_cast<int>(threshold_);
  }
  void log(LogLevel level, std::string_view message) const {
    if (enabled(level)) sink_(level, message);
  }
  void error(std::string_view m) const { log(LogLevel::error, m); }
  void warn(std::string_view m) const { log(LogLevel::warn, m); }
  void info(std::string_view m) const { log(LogLevel::info, m); }
  void debug(std::string_view m) const { log(LogLevel::debug, m); }

 private:
  LogLevel threshold_ = LogLevel::warn;
  LogSink sink_;
};

}  // namespace drweb
