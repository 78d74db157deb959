#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "selector/dom.hpp"

namespace drweb::xpath {

namespace detail {
struct Expr;
}

using NodeSet = std::vector<const dom::Node*>;

// Result of a field expression after cardinality collapsing:
// no match -> null, one -> string, several -> array of strings.
class ExtractedValue {
 public:
  ExtractedValue() = default;
  static ExtractedValue from_strings(std::vector<std::string> values);

  bool is_null() const { return std::holds_alternative<std::monostate>(value_); }
  bool is_string() const { return std::holds_alternative<std::string>(value_); }
  bool is_array() const { return std::holds_alternative<std::vector<std::string>>(value_); }
  const std::string& str() const { return std::get<std::string>(value_); }
  const std::vector<std::string>& array() const { return std::get<std::vector<std::string>>(value_); }
  // All values as a list (empty for null).
  std::vector<std::string> values() const;

  bool operator==(const ExtractedValue&) const = default;

 private:
  std::variant<std::monostate, std::string, std::vector<std::string>> value_;
};

// A compiled expression of the supported subset:
//   axes      child, descendant(-or-self) via //, self (.), parent (..), attribute (@)
//   tests     name, *, text(), node(), comment()
//   operators or, and, =, !=, <, <=, >, >=
//   functions contains, starts-with, normalize-space, string, not, true, false,
//             position, last, count
// plus a trailing `/normalize-space()` step, which normalizes each node's
// string-value. Throws Error(xpath_syntax) or Error(unsupported_feature).
class Expression {
 public:
  static Expression compile(std::string_view source);

  const std::string& source() const { return source_; }
  // True when the expression evaluates to a node-set (a location path).
  bool yields_nodes() const;
  bool normalizes_each() const { return normalize_each_; }

  const detail::Expr& root() const { return *root_; }

 private:
  std::string source_;
  std::shared_ptr<const detail::Expr> root_;
  bool normalize_each_ = false;
};

// Matching nodes in document order without duplicates. Throws
// Error(invalid_argument) if the expression does not yield nodes.
NodeSet select(const dom::Node& context, const Expression& expr);
NodeSet select(const dom::Node& context, std::string_view expr);

ExtractedValue extract_value(const dom::Node& context, const Expression& expr);
ExtractedValue extract_value(const dom::Node& context, std::string_view expr);

// XPath normalize-space(): trims and collapses runs of space, tab, CR, LF.
std::string normalize_space(std::string_view s);

}  // namespace drweb::xpath
