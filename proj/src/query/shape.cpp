#include "query/shape.hpp"

#include <algorithm>

namespace drweb::query {
namespace {

void add_key(std::vector<Shape::Key>& keys, std::string name, bool required, Shape shape) {
  auto it = std::find_if(keys.begin(), keys.end(), [&](const Shape::Key& k) { return k.name == name; });
  if (it != keys.end()) return;
  keys.push_back({std::move(name), required, {std::move(shape)}});
}

Shape step_shape(const Step& step) {
  std::vector<Shape::Key> keys;
  if (step.fields)
    for (const Field& f : *step.fields) add_key(keys, f.name, true, Shape::value());
  if (step.follow) {
    // Named inner steps always attach; unnamed ones merge into the parent
    // when they yield exactly one record, otherwise land under "items".
    for (const Step& inner : step.follow->steps)
      if (inner.name) add_key(keys, *inner.name, true, Shape::array_of(step_shape(inner)));
    bool has_unnamed = false;
    for (const Step& inner : step.follow->steps) {
      if (inner.name) continue;
      has_unnamed = true;
      Shape inner_shape = step_shape(inner);
      for (auto& k : inner_shape.keys) add_key(keys, k.name, false, std::move(k.shape.front()));
    }
    if (has_unnamed) {
      std::vector<Shape> alternatives;
      for (const Step& inner : step.follow->steps)
        if (!inner.name) alternatives.push_back(step_shape(inner));
      Shape element = alternatives.size() == 1 ? std::move(alternatives.front()) : Shape{Shape::Kind::one_of, {}, alternatives};
      add_key(keys, "items", false, Shape::array_of(std::move(element)));
    }
  }
  return Shape::object(std::move(keys));
}

std::string kind_name(const Document& v) {
  if (v.is_null()) return "null";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array";
  if (v.is_object()) return "object";
  return "scalar";
}

}  // namespace

Shape Shape::array_of(Shape element) {
  Shape s;
  s.kind = Kind::array;
  s.children.push_back(std::move(element));
  return s;
}

Shape Shape::object(std::vector<Key> keys) {
  Shape s;
  s.kind = Kind::object;
  s.keys = std::move(keys);
  return s;
}

Shape output_shape(const Query& query) {
  auto violations = validate(query);
  if (!violations.empty()) throw Error(ErrorCode::invalid_query, "invalid query: " + describe(violations));
  std::vector<Shape> alternatives;
  for (const Step& s : query.steps) {
    Shape shape = step_shape(s);
    if (std::find(alternatives.begin(), alternatives.end(), shape) == alternatives.end())
      alternatives.push_back(std::move(shape));
  }
  if (alternatives.size() == 1) return Shape::array_of(std::move(alternatives.front()));
  return Shape::array_of(Shape{Shape::Kind::one_of, {}, std::move(alternatives)});
}

std::string conformance_error(const Document& value, const Shape& shape, const std::string& path) {
  switch (shape.kind) {
    case Shape::Kind::value:
      if (value.is_null() || value.is_string()) return {};
      if (value.is_array()) {
        if (value.size() < 2) return path + ": value arrays must hold at least two strings";
        for (const auto& item : value)
          if (!item.is_string()) return path + ": value arrays must hold strings only";
        return {};
      }
      return path + ": expected string, array of strings or null, got " + kind_name(value);
    case Shape::Kind::array: {
      if (!value.is_array()) return path + ": expected array, got " + kind_name(value);
      for (std::size_t i = 0; i < value.size(); ++i) {
        std::string err = conformance_error(value[i], shape.children.front(), path + "[" + std::to_string(i) + "]");
        if (!err.empty()) return err;
      }
      return {};
    }
    case Shape::Kind::object: {
      if (!value.is_object()) return path + ": expected object, got " + kind_name(value);
      for (const auto& key : shape.keys) {
        if (!value.contains(key.name)) {
          if (key.required) return path + ": missing key '" + key.name + "'";
          continue;
        }
        std::string err = conformance_error(value.at(key.name), key.shape.front(), path + "." + key.name);
        if (!err.empty()) return err;
      }
      for (const auto& [k, v] : value.items()) {
        if (std::none_of(shape.keys.begin(), shape.keys.end(), [&](const Shape::Key& key) { return key.name == k; }))
          return path + ": unexpected key '" + k + "'";
      }
      return {};
    }
    case Shape::Kind::one_of: {
      std::string first;
      for (const auto& alt : shape.children) {
        std::string err = conformance_error(value, alt, path);
        if (err.empty()) return {};
        if (first.empty()) first = err;
      }
      return first.empty() ? path + ": no alternatives" : first;
    }
  }
  return {};
}

Document shape_to_document(const Shape& shape) {
  Document d = Document::object();
  switch (shape.kind) {
    case Shape::Kind::value: d["type"] = "value"; break;
    case Shape::Kind::array:
      d["type"] = "array";
      d["items"] = shape_to_document(shape.children.front());
      break;
    case Shape::Kind::object: {
      d["type"] = "object";
      Document props = Document::object();
      Document optional = Document::array();
      for (const auto& k : shape.keys) {
        props[k.name] = shape_to_document(k.shape.front());
        if (!k.required) optional.push_back(k.name);
      }
      d["properties"] = std::move(props);
      if (!optional.empty()) d["optional"] = std::move(optional);
      break;
    }
    case Shape::Kind::one_of: {
      d["type"] = "one_of";
      Document alts = Document::array();
      for (const auto& c : shape.children) alts.push_back(shape_to_document(c));
      d["alternatives"] = std::move(alts);
      break;
    }
  }
  return d;
}

std::string shape_to_string(const Shape& shape) {
  switch (shape.kind) {
    case Shape::Kind::value: return "value";
    case Shape::Kind::array: return "array of " + shape_to_string(shape.children.front());
    case Shape::Kind::object: {
      std::string out = "{";
      for (std::size_t i = 0; i < shape.keys.size(); ++i) {
        const auto& k = shape.keys[i];
        if (i) out += ", ";
        out += k.name + (k.required ? "" : "?");
        if (k.shape.front().kind != Shape::Kind::value) out += ": " + shape_to_string(k.shape.front());
      }
      return out + "}";
    }
    case Shape::Kind::one_of: {
      std::string out = "one of (";
      for (std::size_t i = 0; i < shape.children.size(); ++i) {
        if (i) out += " | ";
        out += shape_to_string(shape.children[i]);
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace drweb::query
