#include "query/json5.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "common/error.hpp"

namespace drweb::query {
namespace {

constexpr int kMaxDepth = 256;

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_part(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  Document read_document() {
    skip_space();
    if (at_end()) fail("empty document");
    Document value = read_value(0);
    skip_space();
    if (!at_end()) fail("unexpected trailing content");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++column;
      }
    }
    throw SyntaxError("JSON5: " + message, line, column);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
        ++pos_;
      } else if (text_.substr(pos_, 2) == "\xC2\xA0") {
        pos_ += 2;
      } else if (text_.substr(pos_, 3) == "\xE2\x80\xA8" || text_.substr(pos_, 3) == "\xE2\x80\xA9" ||
                 text_.substr(pos_, 3) == "\xEF\xBB\xBF") {
        pos_ += 3;
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        std::size_t end = text_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated block comment");
        pos_ = end + 2;
      } else {
        break;
      }
    }
  }

  Document read_value(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    char c = peek();
    switch (c) {
      case '{': return read_object(depth);
      case '[': return read_array(depth);
      case '"':
      case '\'': return Document(read_string());
      default: break;
    }
    if (c == '-' || c == '+' || c == '.' || (c >= '0' && c <= '9')) return read_number();
    if (is_ident_start(c)) {
      std::string word = read_identifier();
      if (word == "true") return Document(true);
      if (word == "false") return Document(false);
      if (word == "null") return Document(nullptr);
      if (word == "Infinity") return Document(std::numeric_limits<double>::infinity());
      if (word == "NaN") return Document(std::numeric_limits<double>::quiet_NaN());
      fail("unexpected identifier '" + word + "'");
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  Document read_object(int depth) {
    ++pos_;
    Document obj = Document::object();
    skip_space();
    while (true) {
      if (peek() == '}') {
        ++pos_;
        return obj;
      }
      std::size_t key_pos = pos_;
      std::string key;
      if (peek() == '"' || peek() == '\'') {
        key = read_string();
      } else if (is_ident_start(peek())) {
        key = read_identifier();
      } else if (at_end()) {
        fail("unterminated object");
      } else {
        fail("expected object key");
      }
      skip_space();
      if (peek() != ':') fail("expected ':' after object key");
      ++pos_;
      skip_space();
      Document value = read_value(depth + 1);
      if (obj.contains(key)) {
        pos_ = key_pos;
        fail("duplicate key '" + key + "'");
      }
      obj[key] = std::move(value);
      skip_space();
      if (peek() == ',') {
        ++pos_;
        skip_space();
      } else if (peek() != '}') {
        fail(at_end() ? "unterminated object" : "expected ',' or '}'");
      }
    }
  }

  Document read_array(int depth) {
    ++pos_;
    Document arr = Document::array();
    skip_space();
    while (true) {
      if (peek() == ']') {
        ++pos_;
        return arr;
      }
      if (at_end()) fail("unterminated array");
      arr.push_back(read_value(depth + 1));
      skip_space();
      if (peek() == ',') {
        ++pos_;
        skip_space();
      } else if (peek() != ']') {
        fail(at_end() ? "unterminated array" : "expected ',' or ']'");
      }
    }
  }

  std::string read_identifier() {
    std::string out;
    while (!at_end() && is_ident_part(peek())) out += text_[pos_++];
    return out;
  }

  std::uint32_t read_hex(int digits) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      char c = peek();
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else fail("invalid hex escape");
      v = v * 16 + static_cast<std::uint32_t>(d);
      ++pos_;
    }
    return v;
  }

  std::string read_string() {
    const char quote = text_[pos_++];
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = text_[pos_];
      if (c == quote) {
        ++pos_;
        return out;
      }
      if (c == '\n' || c == '\r') fail("unescaped line break in string");
      if (c != '\\') {
        out += c;
        ++pos_;
        continue;
      }
      ++pos_;
      if (at_end()) fail("unterminated string");
      char e = text_[pos_++];
      switch (e) {
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'v': out += '\v'; break;
        case '0':
          if (peek() >= '0' && peek() <= '9') fail("octal escapes are not allowed");
          out += '\0';
          break;
        case 'x': append_utf8(out, read_hex(2)); break;
        case 'u': {
          std::uint32_t cp = read_hex(4);
          if (cp >= 0xD800 && cp <= 0xDBFF && peek() == '\\' && peek(1) == 'u') {
            pos_ += 2;
            std::uint32_t low = read_hex(4);
            if (low < 0xDC00 || low > 0xDFFF) fail("invalid surrogate pair");
            cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
          }
          append_utf8(out, cp);
          break;
        }
        case '\r':
          if (peek() == '\n') ++pos_;
          break;
        case '\n': break;
        default:
          if (e >= '1' && e <= '9') fail("invalid escape");
          out += e;
      }
    }
  }

  Document read_number() {
    std::size_t start = pos_;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    if (is_ident_start(peek())) {
      std::string word = read_identifier();
      if (word == "Infinity")
        return Document(negative ? -std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::infinity());
      if (word == "NaN") return Document(std::numeric_limits<double>::quiet_NaN());
      pos_ = start;
      fail("invalid number");
    }
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      pos_ += 2;
      if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("invalid hex number");
      std::int64_t v = 0;
      while (std::isxdigit(static_cast<unsigned char>(peek()))) {
        v = v * 16 + static_cast<std::int64_t>(read_hex(1));
      }
      return Document(negative ? -v : v);
    }
    bool is_float = false;
    std::size_t digits_start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    bool int_digits = pos_ > digits_start;
    if (peek() == '.') {
      is_float = true;
      ++pos_;
      std::size_t frac_start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (!int_digits && pos_ == frac_start) fail("invalid number");
    } else if (!int_digits) {
      fail("invalid number");
    }
    if (peek() == 'e' || peek() == 'E') {
      is_float = true;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("invalid exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::string literal(text_.substr(start, pos_ - start));
    if (literal[0] == '+') literal.erase(0, 1);
    if (!is_float) {
      try {
        return Document(static_cast<std::int64_t>(std::stoll(literal)));
      } catch (const std::out_of_range&) {
        is_float = true;
      }
    }
    return Document(std::stod(literal));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Document parse_json5(std::string_view text) { return Reader(text).read_document(); }

}  // namespace drweb::query
