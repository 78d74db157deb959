#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"
#include "query/json5.hpp"

namespace drweb::query {

enum class Format { json5, yaml };

std::string_view to_string(Format format) noexcept;

struct Field {
  std::string name;
  std::string xpath;

  bool operator==(const Field&) const = default;
};

struct PaginationSpec {
  std::string xpath;  // yields the next-page URL
  std::int64_t limit = 1;  // pages visited, first page included

  bool operator==(const PaginationSpec&) const = default;
};

struct Step;

struct FollowSpec {
  std::string xpath;  // URL-valued, e.g. ending in /@href
  std::vector<Step> steps;

  bool operator==(const FollowSpec&) const;
};

struct Step {
  std::string xpath;
  std::optional<std::string> name;
  std::optional<std::vector<Field>> fields;  // source order
  std::optional<FollowSpec> follow;
  std::optional<PaginationSpec> pagination;

  bool operator==(const Step&) const = default;
};

struct Query {
  std::string url;
  std::vector<Step> steps;

  bool operator==(const Query&) const = default;
};

struct Violation {
  std::string locator;  // e.g. "@steps[0].@follow.@steps[1].@name"
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Raised by parse_query for structural problems and invariant violations.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

std::string describe(const std::vector<Violation>& violations);

// Extension first (.json/.json5 vs .yaml/.yml), then a sniff of the first
// non-blank character.
Format detect_format(std::string_view filename, std::string_view text) noexcept;

// Generic document for either surface syntax. YAML plain scalars are typed
// (int, float, bool, null), quoted scalars stay strings.
Document parse_document(std::string_view text, Format format);

Query parse_query(std::string_view text, Format format);

// Maps an already-parsed document onto the model. Throws SchemaError.
Query from_document(const Document& doc);

Document to_document(const Query& query);
std::string render(const Query& query, Format format);

std::vector<Violation> validate(const Query& query);

}  // namespace drweb::query
