#pragma once

// Replays the frozen lxml results in tests/data/xpath_diff against the
// in-house parser and evaluator. Node identity uses the same path encoding
// as tests/oracle/xpath_differential.py.

#include <string>
#include <vector>

#include <json.hpp>

#include "selector/html.hpp"
#include "selector/xpath.hpp"
#include "support/fixtures.hpp"

namespace drweb::testing {

inline std::string element_id(const dom::Node* el) {
  std::vector<std::string> parts;
  while (el && el->kind == dom::NodeKind::element) {
    std::size_t index = 1;
    if (el->parent) {
      for (const dom::Node* c : el->parent->children) {
        if (c == el) break;
        if (c->is_element(el->name)) ++index;
      }
    }
    parts.push_back(el->name + "[" + std::to_string(index) + "]");
    el = el->parent;
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) out += "/" + *it;
  return out;
}

inline std::string node_id(const dom::Node* n) {
  switch (n->kind) {
    case dom::NodeKind::element:
      return element_id(n);
    case dom::NodeKind::attribute:
      return element_id(n->parent) + "/@" + n->name;
    case dom::NodeKind::text: {
      std::size_t k = 0;
      for (const dom::Node* c : n->parent->children) {
        if (c->kind == dom::NodeKind::text) ++k;
        if (c == n) break;
      }
      return element_id(n->parent) + "/text()[" + std::to_string(k) + "]";
    }
    default:
      return "?";
  }
}

inline const dom::Node* find_by_id(const dom::Node& node, const std::string& id) {
  if (node.kind == dom::NodeKind::element && element_id(&node) == id) return &node;
  for (const dom::Node* c : node.children) {
    if (const dom::Node* hit = find_by_id(*c, id)) return hit;
  }
  return nullptr;
}

inline nlohmann::json to_json(const xpath::ExtractedValue& v) {
  if (v.is_null()) return nullptr;
  if (v.is_string()) return v.str();
  return v.array();
}

struct DifferentialResult {
  std::size_t documents = 0;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> samples;  // first few disagreements
};

inline DifferentialResult run_xpath_differential() {
  const auto dir = kData / "xpath_diff";
  auto expected = nlohmann::json::parse(slurp(dir / "expected.json"));
  std::vector<xpath::Expression> exprs;
  for (const auto& src : expected["expressions"]) exprs.push_back(xpath::Expression::compile(src.get<std::string>()));

  DifferentialResult r;
  for (const auto& d : expected["documents"]) {
    const std::string file = d["file"];
    auto doc = html::parse_html(slurp(dir / file), "http://fixture.test/");
    for (const auto& c : d["cases"]) {
      ++r.cases;
      const dom::Node* ctx = find_by_id(doc.root(), c["context"]);
      const auto& expr = exprs[c["expr"].get<std::size_t>()];
      bool ok = ctx != nullptr;
      nlohmann::json value;
      if (ctx) {
        value = to_json(xpath::extract_value(*ctx, expr));
        ok = value == c["value"];
        if (!c["nodes"].is_null()) {
          nlohmann::json ids = nlohmann::json::array();
          for (const dom::Node* n : xpath::select(*ctx, expr)) ids.push_back(node_id(n));
          ok = ok && ids == c["nodes"];
        }
      }
      if (!ok) {
        ++r.mismatches;
        if (r.samples.size() < 10) {
          r.samples.push_back(file + " ctx=" + c["context"].get<std::string>() + " expr=" + expr.source() +
                              "\n  got " + value.dump() + "\n  want " + c["value"].dump());
        }
      }
    }
    ++r.documents;
  }
  return r;
}

}  // namespace drweb::testing
