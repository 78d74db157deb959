#pragma once

#include <string>
#include <vector>

#include "query/query.hpp"

namespace drweb::query {

// Record structure implied by a query. `value` stands for an extracted
// field: string, array of strings or null.
struct Shape {
  enum class Kind { value, array, object, one_of };

  struct Key {
    std::string name;
    bool required = true;
    std::vector<Shape> shape;  // exactly one element

    bool operator==(const Key&) const = default;
  };

  Kind kind = Kind::value;
  std::vector<Key> keys;          // object, in emission order
  std::vector<Shape> children;    // array: element shape; one_of: alternatives

  static Shape value() { return {}; }
  static Shape array_of(Shape element);
  static Shape object(std::vector<Key> keys);

  bool operator==(const Shape&) const = default;
};

// Throws Error(invalid_query) when validate(query) is non-empty.
Shape output_shape(const Query& query);

// Empty string when `value` conforms; otherwise a description of the first
// mismatch with a JSON-path-like locator.
std::string conformance_error(const Document& value, const Shape& shape, const std::string& path = "$");

Document shape_to_document(const Shape& shape);
std::string shape_to_string(const Shape& shape);

}  // namespace drweb::query
