#include "query/query.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <yaml-cpp/yaml.h>

#include "common/url.hpp"
#include "selector/xpath.hpp"

namespace drweb::query {
namespace {

std::string lower_ext(std::string_view filename) {
  std::size_t dot = filename.rfind('.');
  std::size_t slash = filename.find_last_of("/\\");
  if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash)) return {};
  std::string ext(filename.substr(dot));
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

// ---------------------------------------------------------------------------
// YAML -> generic document

Document resolve_plain_scalar(const std::string& s) {
  if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return nullptr;
  if (s == "true" || s == "True" || s == "TRUE") return true;
  if (s == "false" || s == "False" || s == "FALSE") return false;
  auto all = [&](std::size_t from, auto pred) {
    return from < s.size() && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(from), s.end(), pred);
  };
  std::size_t sign = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (all(sign, [](unsigned char c) { return std::isdigit(c); })) {
    try {
      return static_cast<std::int64_t>(std::stoll(s));
    } catch (const std::out_of_range&) {
      return std::stod(s);
    }
  }
  if (s.size() > 2 && s[0] == '0' && s[1] == 'x' && all(2, [](unsigned char c) { return std::isxdigit(c); }))
    return static_cast<std::int64_t>(std::stoll(s.substr(2), nullptr, 16));
  if (s.size() > 2 && s[0] == '0' && s[1] == 'o' && all(2, [](unsigned char c) { return c >= '0' && c <= '7'; }))
    return static_cast<std::int64_t>(std::stoll(s.substr(2), nullptr, 8));
  if (s == ".inf" || s == ".Inf" || s == ".INF" || s == "+.inf") return std::numeric_limits<double>::infinity();
  if (s == "-.inf" || s == "-.Inf" || s == "-.INF") return -std::numeric_limits<double>::infinity();
  if (s == ".nan" || s == ".NaN" || s == ".NAN") return std::numeric_limits<double>::quiet_NaN();
  // [-+]? ( \. [0-9]+ | [0-9]+ ( \. [0-9]* )? ) ( [eE] [-+]? [0-9]+ )?
  std::size_t i = sign;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  bool dot = i < s.size() && s[i] == '.';
  if (dot) {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  bool exp_ok = true;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t e0 = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    exp_ok = i > e0;
  }
  if (digits > 0 && exp_ok && i == s.size()) return std::stod(s);
  return s;
}

Document from_yaml(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined: return nullptr;
    case YAML::NodeType::Scalar:
      if (node.Tag() == "?") return resolve_plain_scalar(node.Scalar());
      if (node.Tag() == "!" || node.Tag() == "tag:yaml.org,2002:str" || node.Tag() == "!!str") return node.Scalar();
      return node.Scalar();
    case YAML::NodeType::Sequence: {
      Document arr = Document::array();
      for (const auto& item : node) arr.push_back(from_yaml(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      Document obj = Document::object();
      for (const auto& kv : node) {
        if (!kv.first.IsScalar()) {
          const auto mark = kv.first.Mark();
          throw SyntaxError("YAML: mapping keys must be scalars", mark.line + 1, mark.column + 1);
        }
        const std::string& key = kv.first.Scalar();
        if (obj.contains(key)) {
          const auto mark = kv.first.Mark();
          throw SyntaxError("YAML: duplicate key '" + key + "'", mark.line + 1, mark.column + 1);
        }
        obj[key] = from_yaml(kv.second);
      }
      return obj;
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Document -> model

class Mapper {
 public:
  Query map(const Document& doc) {
    Query q;
    if (!doc.is_object()) {
      add("$", "query must be an object");
      throw SchemaError(std::move(violations_));
    }
    bool has_url = false;
    bool has_steps = false;
    for (const auto& [key, value] : doc.items()) {
      if (key == "@url") {
        has_url = true;
        if (value.is_string()) q.url = value.get<std::string>();
        else add("@url", "expected a string");
      } else if (key == "@steps") {
        has_steps = true;
        q.steps = map_steps(value, "@steps");
      } else {
        unknown_key(key, "");
      }
    }
    if (!has_url) add("$", "missing required keyword @url");
    if (!has_steps) add("$", "missing required keyword @steps");
    if (!violations_.empty()) throw SchemaError(std::move(violations_));
    return q;
  }

 private:
  void add(std::string locator, std::string message) { violations_.push_back({std::move(locator), std::move(message)}); }

  void unknown_key(const std::string& key, const std::string& where) {
    std::string loc = where.empty() ? key : where + "." + key;
    if (!key.empty() && key[0] == '@') add(loc, "unknown keyword " + key);
    else add(loc, "unexpected key '" + key + "' (field names belong inside @fields)");
  }

  std::optional<std::string> string_at(const Document& v, const std::string& loc) {
    if (v.is_string()) return v.get<std::string>();
    add(loc, "expected a string");
    return std::nullopt;
  }

  std::vector<Step> map_steps(const Document& v, const std::string& loc) {
    std::vector<Step> steps;
    if (!v.is_array()) {
      add(loc, "expected a list of steps");
      return steps;
    }
    for (std::size_t i = 0; i < v.size(); ++i) steps.push_back(map_step(v[i], loc + "[" + std::to_string(i) + "]"));
    return steps;
  }

  Step map_step(const Document& v, const std::string& loc) {
    Step s;
    if (!v.is_object()) {
      add(loc, "expected a step object");
      return s;
    }
    bool has_xpath = false;
    for (const auto& [key, value] : v.items()) {
      const std::string at = loc + "." + key;
      if (key == "@xpath") {
        has_xpath = true;
        s.xpath = string_at(value, at).value_or("");
      } else if (key == "@name") {
        s.name = string_at(value, at);
      } else if (key == "@fields") {
        s.fields = map_fields(value, at);
      } else if (key == "@follow") {
        s.follow = map_follow(value, at);
      } else if (key == "@pagination") {
        s.pagination = map_pagination(value, at);
      } else {
        unknown_key(key, loc);
      }
    }
    if (!has_xpath) add(loc, "missing required keyword @xpath");
    return s;
  }

  std::vector<Field> map_fields(const Document& v, const std::string& loc) {
    std::vector<Field> fields;
    if (!v.is_object()) {
      add(loc, "expected an object mapping field names to XPath expressions");
      return fields;
    }
    for (const auto& [key, value] : v.items()) {
      const std::string at = loc + "." + key;
      if (!key.empty() && key[0] == '@') {
        add(at, key == "@xpath" || key == "@name" || key == "@fields" || key == "@follow" || key == "@pagination" ||
                        key == "@url" || key == "@steps" || key == "@limit"
                    ? "keyword " + key + " is not allowed inside @fields"
                    : "unknown keyword " + key);
        continue;
      }
      if (auto x = string_at(value, at)) fields.push_back({key, *x});
    }
    return fields;
  }

  FollowSpec map_follow(const Document& v, const std::string& loc) {
    FollowSpec f;
    if (!v.is_object()) {
      add(loc, "expected an object with @xpath and @steps");
      return f;
    }
    bool has_xpath = false;
    bool has_steps = false;
    for (const auto& [key, value] : v.items()) {
      const std::string at = loc + "." + key;
      if (key == "@xpath") {
        has_xpath = true;
        f.xpath = string_at(value, at).value_or("");
      } else if (key == "@steps") {
        has_steps = true;
        f.steps = map_steps(value, at);
      } else {
        unknown_key(key, loc);
      }
    }
    if (!has_xpath) add(loc, "missing required keyword @xpath");
    if (!has_steps) add(loc, "missing required keyword @steps");
    return f;
  }

  PaginationSpec map_pagination(const Document& v, const std::string& loc) {
    PaginationSpec p;
    if (!v.is_object()) {
      add(loc, "expected an object with @xpath and @limit");
      return p;
    }
    bool has_xpath = false;
    bool has_limit = false;
    for (const auto& [key, value] : v.items()) {
      const std::string at = loc + "." + key;
      if (key == "@xpath") {
        has_xpath = true;
        p.xpath = string_at(value, at).value_or("");
      } else if (key == "@limit") {
        has_limit = true;
        if (value.is_number_integer()) p.limit = value.get<std::int64_t>();
        else if (value.is_number_float() && std::floor(value.get<double>()) == value.get<double>() &&
                 std::fabs(value.get<double>()) < 9e15)
          p.limit = static_cast<std::int64_t>(value.get<double>());
        else add(at, "expected an integer");
      } else {
        unknown_key(key, loc);
      }
    }
    if (!has_xpath) add(loc, "missing required keyword @xpath");
    if (!has_limit) add(loc, "missing required keyword @limit");
    return p;
  }

  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// Validation

class Validator {
 public:
  std::vector<Violation> run(const Query& q) {
    if (!is_absolute_http_url(q.url)) add("@url", "must be an absolute http or https URL, got '" + q.url + "'");
    check_steps(q.steps, "@steps", nullptr);
    return std::move(out_);
  }

 private:
  void add(std::string loc, std::string msg) { out_.push_back({std::move(loc), std::move(msg)}); }

  void check_xpath(const std::string& expr, const std::string& loc, bool must_select) {
    if (expr.empty()) {
      add(loc, "XPath expression is empty");
      return;
    }
    try {
      auto compiled = xpath::Expression::compile(expr);
      if (must_select && !compiled.yields_nodes()) add(loc, "expression must select nodes: " + expr);
    } catch (const Error& e) {
      add(loc, e.what());
    }
  }

  void check_steps(const std::vector<Step>& steps, const std::string& loc, const Step* parent) {
    if (steps.empty()) {
      add(loc, "at least one step is required");
      return;
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Step& s = steps[i];
      const std::string at = loc + "[" + std::to_string(i) + "]";
      check_xpath(s.xpath, at + ".@xpath", true);
      if (!s.fields && !s.follow) add(at, "step needs @fields or @follow");
      if (s.name) {
        if (s.name->empty()) {
          add(at + ".@name", "name must not be empty");
        } else if (!names.insert(*s.name).second) {
          add(at + ".@name", "duplicate step name '" + *s.name + "' among sibling steps");
        } else if (parent && parent->fields) {
          for (const Field& f : *parent->fields)
            if (f.name == *s.name) add(at + ".@name", "step name '" + *s.name + "' collides with a field of the enclosing step");
        }
      }
      if (s.fields) {
        std::set<std::string> seen;
        for (const Field& f : *s.fields) {
          const std::string floc = at + ".@fields." + f.name;
          if (f.name.empty()) add(floc, "field name must not be empty");
          else if (f.name[0] == '@') add(floc, "field names may not begin with '@'");
          if (!seen.insert(f.name).second) add(floc, "duplicate field name '" + f.name + "'");
          check_xpath(f.xpath, floc, false);
        }
      }
      if (s.follow) {
        check_xpath(s.follow->xpath, at + ".@follow.@xpath", false);
        check_steps(s.follow->steps, at + ".@follow.@steps", &s);
      }
      if (s.pagination) {
        check_xpath(s.pagination->xpath, at + ".@pagination.@xpath", false);
        if (s.pagination->limit < 1) add(at + ".@pagination.@limit", "limit must be a positive integer");
      }
    }
  }

  std::vector<Violation> out_;
};

Document step_to_document(const Step& s);

Document steps_to_document(const std::vector<Step>& steps) {
  Document arr = Document::array();
  for (const Step& s : steps) arr.push_back(step_to_document(s));
  return arr;
}

Document step_to_document(const Step& s) {
  Document d = Document::object();
  d["@xpath"] = s.xpath;
  if (s.name) d["@name"] = *s.name;
  if (s.fields) {
    Document f = Document::object();
    for (const Field& field : *s.fields) f[field.name] = field.xpath;
    d["@fields"] = std::move(f);
  }
  if (s.follow) {
    Document f = Document::object();
    f["@xpath"] = s.follow->xpath;
    f["@steps"] = steps_to_document(s.follow->steps);
    d["@follow"] = std::move(f);
  }
  if (s.pagination) {
    Document p = Document::object();
    p["@xpath"] = s.pagination->xpath;
    p["@limit"] = s.pagination->limit;
    d["@pagination"] = std::move(p);
  }
  return d;
}

void emit_yaml(YAML::Emitter& out, const Document& d) {
  if (d.is_object()) {
    out << YAML::BeginMap;
    for (const auto& [k, v] : d.items()) {
      out << YAML::Key << YAML::DoubleQuoted << k << YAML::Value;
      emit_yaml(out, v);
    }
    out << YAML::EndMap;
  } else if (d.is_array()) {
    out << YAML::BeginSeq;
    for (const auto& v : d) emit_yaml(out, v);
    out << YAML::EndSeq;
  } else if (d.is_string()) {
    out << YAML::DoubleQuoted << d.get<std::string>();
  } else if (d.is_number_integer()) {
    out << d.get<std::int64_t>();
  } else if (d.is_boolean()) {
    out << d.get<bool>();
  } else if (d.is_null()) {
    out << YAML::Null;
  } else {
    out << d.dump();
  }
}

}  // namespace

bool FollowSpec::operator==(const FollowSpec& other) const {
  return xpath == other.xpath && steps == other.steps;
}

std::string_view to_string(Format format) noexcept { return format == Format::json5 ? "json5" : "yaml"; }

SchemaError::SchemaError(std::vector<Violation> violations)
    : Error(ErrorCode::schema, "invalid query: " + describe(violations)), violations_(std::move(violations)) {}

std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.locator + ": " + v.message;
  }
  return out;
}

Format detect_format(std::string_view filename, std::string_view text) noexcept {
  const std::string ext = lower_ext(filename);
  if (ext == ".json" || ext == ".json5") return Format::json5;
  if (ext == ".yaml" || ext == ".yml") return Format::yaml;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string_view::npos && (text[i] == '{' || text[i] == '[')) return Format::json5;
  return Format::yaml;
}

Document parse_document(std::string_view text, Format format) {
  if (format == Format::json5) return parse_json5(text);
  try {
    YAML::Node root = YAML::Load(std::string(text));
    return from_yaml(root);
  } catch (const YAML::ParserException& e) {
    throw SyntaxError("YAML: " + e.msg, e.mark.line + 1, e.mark.column + 1);
  }
}

Query from_document(const Document& doc) { return Mapper().map(doc); }

Query parse_query(std::string_view text, Format format) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw SyntaxError("query text is empty", 1, 1);
  Query q = from_document(parse_document(text, format));
  auto violations = validate(q);
  if (!violations.empty()) throw SchemaError(std::move(violations));
  return q;
}

Document to_document(const Query& query) {
  Document d = Document::object();
  d["@url"] = query.url;
  d["@steps"] = steps_to_document(query.steps);
  return d;
}

std::string render(const Query& query, Format format) {
  Document d = to_document(query);
  if (format == Format::json5) return d.dump(2) + "\n";
  YAML::Emitter out;
  emit_yaml(out, d);
  return std::string(out.c_str()) + "\n";
}

std::vector<Violation> validate(const Query& query) { return Validator().run(query); }

}  // namespace drweb::query
