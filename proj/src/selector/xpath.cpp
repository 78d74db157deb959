#include "selector/xpath.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "common/error.hpp"

namespace drweb::xpath {
namespace detail {

enum class Axis { child, descendant, descendant_or_self, self, parent, attribute };
enum class Test { name, any, text, node, comment, normalize_space };
enum class Op { or_, and_, eq, ne, lt, le, gt, ge };
enum class Kind { literal, number, path, binary, call };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Step {
  Axis axis = Axis::child;
  Test test = Test::node;
  std::string name;
  std::vector<ExprPtr> predicates;
};

struct Expr {
  Kind kind = Kind::literal;
  std::string text;  // literal value or function name
  double number = 0;
  bool absolute = false;
  std::vector<Step> steps;
  Op op = Op::or_;
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<ExprPtr> args;
};

}  // namespace detail

namespace {

using detail::Axis;
using detail::Expr;
using detail::ExprPtr;
using detail::Kind;
using detail::Op;
using detail::Step;
using detail::Test;

[[noreturn]] void syntax_error(std::string_view source, const std::string& message) {
  throw Error(ErrorCode::xpath_syntax, "XPath syntax error in '" + std::string(source) + "': " + message);
}

[[noreturn]] void unsupported(std::string_view source, const std::string& construct) {
  throw Error(ErrorCode::unsupported_feature,
              "unsupported XPath feature in '" + std::string(source) + "': " + construct);
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  slash, dslash, lbracket, rbracket, lparen, rparen, at, comma, dcolon, dot, dotdot,
  star, name, literal, number, op, dollar, end
};

struct Token {
  Tok type;
  std::string text;
  double number = 0;
};

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  auto prev_allows_operator = [&]() {
    if (out.empty()) return false;
    const Token& p = out.back();
    if (p.type == Tok::at || p.type == Tok::dcolon || p.type == Tok::lparen || p.type == Tok::lbracket ||
        p.type == Tok::comma || p.type == Tok::op || p.type == Tok::slash || p.type == Tok::dslash)
      return false;
    return true;
  };
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    auto push = [&](Tok t, std::string text, std::size_t len) {
      out.push_back({t, std::move(text)});
      i += len;
    };
    switch (c) {
      case '/':
        if (i + 1 < src.size() && src[i + 1] == '/') push(Tok::dslash, "//", 2);
        else push(Tok::slash, "/", 1);
        continue;
      case '[': push(Tok::lbracket, "[", 1); continue;
      case ']': push(Tok::rbracket, "]", 1); continue;
      case '(': push(Tok::lparen, "(", 1); continue;
      case ')': push(Tok::rparen, ")", 1); continue;
      case '@': push(Tok::at, "@", 1); continue;
      case ',': push(Tok::comma, ",", 1); continue;
      case '$': push(Tok::dollar, "$", 1); continue;
      case '|': push(Tok::op, "|", 1); continue;
      case '+': push(Tok::op, "+", 1); continue;
      case '-': push(Tok::op, "-", 1); continue;
      case '=': push(Tok::op, "=", 1); continue;
      case '!':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          push(Tok::op, "!=", 2);
          continue;
        }
        syntax_error(src, "unexpected '!'");
      case '<':
      case '>':
        if (i + 1 < src.size() && src[i + 1] == '=') push(Tok::op, std::string{c, '='}, 2);
        else push(Tok::op, std::string(1, c), 1);
        continue;
      case ':':
        if (i + 1 < src.size() && src[i + 1] == ':') {
          push(Tok::dcolon, "::", 2);
          continue;
        }
        unsupported(src, "namespace prefix");
      case '*':
        if (prev_allows_operator()) push(Tok::op, "*", 1);
        else push(Tok::star, "*", 1);
        continue;
      case '"':
      case '\'': {
        std::size_t end = src.find(c, i + 1);
        if (end == std::string_view::npos) syntax_error(src, "unterminated string literal");
        out.push_back({Tok::literal, std::string(src.substr(i + 1, end - i - 1))});
        i = end + 1;
        continue;
      }
      default: break;
    }
    if (c == '.' && i + 1 < src.size() && src[i + 1] == '.') {
      push(Tok::dotdot, "..", 2);
      continue;
    }
    if ((c >= '0' && c <= '9') || (c == '.' && i + 1 < src.size() && src[i + 1] >= '0' && src[i + 1] <= '9')) {
      std::size_t start = i;
      while (i < src.size() && ((src[i] >= '0' && src[i] <= '9') || src[i] == '.')) ++i;
      std::string text(src.substr(start, i - start));
      if (std::count(text.begin(), text.end(), '.') > 1) syntax_error(src, "malformed number '" + text + "'");
      Token t{Tok::number, text};
      t.number = std::strtod(text.c_str(), nullptr);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '.') {
      push(Tok::dot, ".", 1);
      continue;
    }
    if (is_name_start(c)) {
      std::size_t start = i;
      while (i < src.size() && is_name_char(src[i])) ++i;
      std::string text(src.substr(start, i - start));
      if (i < src.size() && src[i] == ':' && !(i + 1 < src.size() && src[i + 1] == ':'))
        unsupported(src, "namespace prefix '" + text + ":'");
      if (prev_allows_operator() && (text == "and" || text == "or" || text == "div" || text == "mod")) {
        out.push_back({Tok::op, text});
      } else {
        out.push_back({Tok::name, text});
      }
      continue;
    }
    syntax_error(src, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::end, ""});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

struct FunctionSig {
  std::string_view name;
  int min_args;
  int max_args;
};

constexpr FunctionSig kFunctions[] = {
    {"contains", 2, 2}, {"starts-with", 2, 2}, {"normalize-space", 0, 1}, {"string", 0, 1},
    {"not", 1, 1},      {"true", 0, 0},        {"false", 0, 0},           {"position", 0, 0},
    {"last", 0, 0},     {"count", 1, 1},
};

const FunctionSig* find_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return &f;
  return nullptr;
}

bool is_node_type(std::string_view name) {
  return name == "text" || name == "node" || name == "comment" || name == "processing-instruction";
}

enum class StaticType { nodes, string, number, boolean };

StaticType static_type(const Expr& e) {
  switch (e.kind) {
    case Kind::literal: return StaticType::string;
    case Kind::number: return StaticType::number;
    case Kind::path: return StaticType::nodes;
    case Kind::binary: return StaticType::boolean;
    case Kind::call:
      if (e.text == "normalize-space" || e.text == "string") return StaticType::string;
      if (e.text == "position" || e.text == "last" || e.text == "count") return StaticType::number;
      return StaticType::boolean;
  }
  return StaticType::boolean;
}

bool uses_position(const Expr& e) {
  if (e.kind == Kind::call && (e.text == "position" || e.text == "last")) return true;
  if (e.lhs && uses_position(*e.lhs)) return true;
  if (e.rhs && uses_position(*e.rhs)) return true;
  for (const auto& a : e.args)
    if (uses_position(*a)) return true;
  // Predicates inside nested paths have their own context.
  return false;
}

bool position_independent(const Step& s) {
  return std::all_of(s.predicates.begin(), s.predicates.end(), [](const ExprPtr& p) {
    return static_type(*p) != StaticType::number && !uses_position(*p);
  });
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(tokenize(src)) {}

  ExprPtr parse() {
    if (peek().type == Tok::end) syntax_error(src_, "empty expression");
    ExprPtr e = parse_or();
    if (peek().type != Tok::end) syntax_error(src_, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept_op(std::string_view op) {
    if (peek().type == Tok::op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok t, std::string_view what) {
    if (peek().type != t) {
      syntax_error(src_, "expected " + std::string(what) +
                             (peek().type == Tok::end ? " at end of expression" : " before '" + peek().text + "'"));
    }
    ++pos_;
  }

  static ExprPtr binary(Op op, ExprPtr l, ExprPtr r) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::binary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr parse_or() {
    ExprPtr l = parse_and();
    while (accept_op("or")) l = binary(Op::or_, std::move(l), parse_and());
    return l;
  }

  ExprPtr parse_and() {
    ExprPtr l = parse_equality();
    while (accept_op("and")) l = binary(Op::and_, std::move(l), parse_equality());
    return l;
  }

  ExprPtr parse_equality() {
    ExprPtr l = parse_relational();
    while (true) {
      if (accept_op("=")) l = binary(Op::eq, std::move(l), parse_relational());
      else if (accept_op("!=")) l = binary(Op::ne, std::move(l), parse_relational());
      else return l;
    }
  }

  ExprPtr parse_relational() {
    ExprPtr l = parse_unary();
    while (true) {
      if (accept_op("<")) l = binary(Op::lt, std::move(l), parse_unary());
      else if (accept_op("<=")) l = binary(Op::le, std::move(l), parse_unary());
      else if (accept_op(">")) l = binary(Op::gt, std::move(l), parse_unary());
      else if (accept_op(">=")) l = binary(Op::ge, std::move(l), parse_unary());
      else return l;
    }
  }

  ExprPtr parse_unary() {
    if (peek().type == Tok::op && peek().text == "-") unsupported(src_, "unary minus");
    ExprPtr e = parse_path_expr();
    if (peek().type == Tok::op) {
      const std::string& op = peek().text;
      if (op == "|") unsupported(src_, "union operator '|'");
      if (op == "+" || op == "-" || op == "*" || op == "div" || op == "mod")
        unsupported(src_, "arithmetic operator '" + op + "'");
    }
    return e;
  }

  ExprPtr parse_path_expr() {
    const Token& t = peek();
    if (t.type == Tok::dollar) unsupported(src_, "variable reference");
    bool is_call = t.type == Tok::name && peek(1).type == Tok::lparen && !is_node_type(t.text);
    if (t.type == Tok::literal || t.type == Tok::number || t.type == Tok::lparen || is_call) {
      ExprPtr primary = parse_primary();
      if (peek().type == Tok::lbracket) unsupported(src_, "predicate on a filter expression");
      if (peek().type == Tok::slash || peek().type == Tok::dslash)
        unsupported(src_, "path step after a filter expression");
      return primary;
    }
    return parse_location_path();
  }

  ExprPtr parse_primary() {
    Token t = next();
    auto e = std::make_unique<Expr>();
    switch (t.type) {
      case Tok::literal:
        e->kind = Kind::literal;
        e->text = t.text;
        return e;
      case Tok::number:
        e->kind = Kind::number;
        e->number = t.number;
        return e;
      case Tok::lparen: {
        ExprPtr inner = parse_or();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::name: {
        const FunctionSig* sig = find_function(t.text);
        if (!sig) unsupported(src_, "function '" + t.text + "()'");
        e->kind = Kind::call;
        e->text = t.text;
        expect(Tok::lparen, "'('");
        if (peek().type != Tok::rparen) {
          e->args.push_back(parse_or());
          while (peek().type == Tok::comma) {
            ++pos_;
            e->args.push_back(parse_or());
          }
        }
        expect(Tok::rparen, "')'");
        int n = static_cast<int>(e->args.size());
        if (n < sig->min_args || n > sig->max_args)
          syntax_error(src_, "wrong number of arguments to " + t.text + "()");
        if (e->text == "count" && static_type(*e->args[0]) != StaticType::nodes)
          syntax_error(src_, "count() expects a node-set");
        return e;
      }
      default: syntax_error(src_, "unexpected '" + t.text + "'");
    }
  }

  static Step descendant_or_self_step() {
    Step s;
    s.axis = Axis::descendant_or_self;
    s.test = Test::node;
    return s;
  }

  void append_after_double_slash(std::vector<Step>& steps, Step next_step) {
    if (next_step.axis == Axis::child && next_step.test != Test::normalize_space && position_independent(next_step)) {
      next_step.axis = Axis::descendant;
      steps.push_back(std::move(next_step));
      return;
    }
    steps.push_back(descendant_or_self_step());
    steps.push_back(std::move(next_step));
  }

  bool starts_step() const {
    Tok t = peek().type;
    return t == Tok::name || t == Tok::star || t == Tok::at || t == Tok::dot || t == Tok::dotdot;
  }

  ExprPtr parse_location_path() {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::path;
    if (peek().type == Tok::slash) {
      ++pos_;
      e->absolute = true;
      if (!starts_step()) return e;
    } else if (peek().type == Tok::dslash) {
      ++pos_;
      e->absolute = true;
      append_after_double_slash(e->steps, parse_step());
    } else if (!starts_step()) {
      syntax_error(src_, peek().type == Tok::end ? "unexpected end of expression"
                                                 : "unexpected '" + peek().text + "'");
    }
    if (e->steps.empty()) e->steps.push_back(parse_step());
    while (true) {
      if (peek().type == Tok::slash) {
        ++pos_;
        e->steps.push_back(parse_step());
      } else if (peek().type == Tok::dslash) {
        ++pos_;
        append_after_double_slash(e->steps, parse_step());
      } else {
        break;
      }
    }
    return e;
  }

  Step parse_step() {
    Step s;
    const Token t = peek();
    if (t.type == Tok::dot) {
      ++pos_;
      s.axis = Axis::self;
      s.test = Test::node;
      if (peek().type == Tok::lbracket) unsupported(src_, "predicate on '.'");
      return s;
    }
    if (t.type == Tok::dotdot) {
      ++pos_;
      s.axis = Axis::parent;
      s.test = Test::node;
      if (peek().type == Tok::lbracket) unsupported(src_, "predicate on '..'");
      return s;
    }
    if (t.type == Tok::at) {
      ++pos_;
      s.axis = Axis::attribute;
    } else if (t.type == Tok::name && peek(1).type == Tok::dcolon) {
      pos_ += 2;
      s.axis = parse_axis(t.text);
    }
    const Token test = next();
    if (test.type == Tok::star) {
      s.test = Test::any;
    } else if (test.type == Tok::name && peek().type == Tok::lparen) {
      ++pos_;
      expect(Tok::rparen, "')'");
      if (test.text == "text") s.test = Test::text;
      else if (test.text == "node") s.test = Test::node;
      else if (test.text == "comment") s.test = Test::comment;
      else if (test.text == "normalize-space" && s.axis == Axis::child) s.test = Test::normalize_space;
      else if (test.text == "processing-instruction") unsupported(src_, "processing-instruction() test");
      else unsupported(src_, "function '" + test.text + "()' used as a path step");
    } else if (test.type == Tok::name) {
      s.test = Test::name;
      s.name = test.text;
    } else {
      syntax_error(src_, test.type == Tok::end ? "expected a node test at end of expression"
                                               : "expected a node test before '" + test.text + "'");
    }
    while (peek().type == Tok::lbracket) {
      if (s.test == Test::normalize_space) unsupported(src_, "predicate on normalize-space()");
      ++pos_;
      s.predicates.push_back(parse_or());
      expect(Tok::rbracket, "']'");
    }
    return s;
  }

  Axis parse_axis(const std::string& name) {
    if (name == "child") return Axis::child;
    if (name == "descendant") return Axis::descendant;
    if (name == "descendant-or-self") return Axis::descendant_or_self;
    if (name == "self") return Axis::self;
    if (name == "parent") return Axis::parent;
    if (name == "attribute") return Axis::attribute;
    if (name == "ancestor" || name == "ancestor-or-self" || name == "following" || name == "following-sibling" ||
        name == "preceding" || name == "preceding-sibling" || name == "namespace")
      unsupported(src_, "axis '" + name + "'");
    syntax_error(src_, "unknown axis '" + name + "'");
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool contains_normalize_step(const Expr& e) {
  for (const Step& s : e.steps) {
    if (s.test == Test::normalize_space) return true;
    for (const auto& p : s.predicates)
      if (contains_normalize_step(*p)) return true;
  }
  if (e.lhs && contains_normalize_step(*e.lhs)) return true;
  if (e.rhs && contains_normalize_step(*e.rhs)) return true;
  for (const auto& a : e.args)
    if (contains_normalize_step(*a)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Evaluation

using Value = std::variant<NodeSet, std::string, double, bool>;

struct Context {
  const dom::Node* node;
  std::size_t position;
  std::size_t size;
};

bool is_xml_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

double string_to_number(std::string_view s) {
  while (!s.empty() && is_xml_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_xml_space(s.back())) s.remove_suffix(1);
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t i = 0;
  if (s[0] == '-') ++i;
  bool digits = false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (s[i] >= '0' && s[i] <= '9') digits = true;
    else if (s[i] == '.' && !dot) dot = true;
    else return std::numeric_limits<double>::quiet_NaN();
  }
  if (!digits) return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(std::string(s).c_str(), nullptr);
}

std::string number_to_string(double d) {
  if (std::isnan(d)) return "NaN";
  if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
  if (d == 0) return "0";
  if (std::floor(d) == d && std::fabs(d) < 1e15) return std::to_string(static_cast<long long>(d));
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string out(buf, res.ptr);
  if (out.find('e') != std::string::npos) {
    res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed);
    out.assign(buf, res.ptr);
  }
  return out;
}

std::string to_string_value(const Value& v) {
  if (auto* ns = std::get_if<NodeSet>(&v)) return ns->empty() ? std::string() : dom::string_value(*ns->front());
  if (auto* s = std::get_if<std::string>(&v)) return *s;
  if (auto* d = std::get_if<double>(&v)) return number_to_string(*d);
  return std::get<bool>(v) ? "true" : "false";
}

double to_number(const Value& v) {
  if (auto* d = std::get_if<double>(&v)) return *d;
  if (auto* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  return string_to_number(to_string_value(v));
}

bool to_boolean(const Value& v) {
  if (auto* ns = std::get_if<NodeSet>(&v)) return !ns->empty();
  if (auto* s = std::get_if<std::string>(&v)) return !s->empty();
  if (auto* d = std::get_if<double>(&v)) return *d != 0 && !std::isnan(*d);
  return std::get<bool>(v);
}

bool compare_atoms(Op op, const Value& a, const Value& b) {
  if (op == Op::eq || op == Op::ne) {
    bool eq;
    if (std::holds_alternative<bool>(a) || std::holds_alternative<bool>(b)) eq = to_boolean(a) == to_boolean(b);
    else if (std::holds_alternative<double>(a) || std::holds_alternative<double>(b)) eq = to_number(a) == to_number(b);
    else eq = to_string_value(a) == to_string_value(b);
    return op == Op::eq ? eq : !eq;
  }
  double x = to_number(a);
  double y = to_number(b);
  switch (op) {
    case Op::lt: return x < y;
    case Op::le: return x <= y;
    case Op::gt: return x > y;
    case Op::ge: return x >= y;
    default: return false;
  }
}

bool compare(Op op, const Value& a, const Value& b) {
  const auto* na = std::get_if<NodeSet>(&a);
  const auto* nb = std::get_if<NodeSet>(&b);
  if (na && nb) {
    for (const dom::Node* x : *na) {
      Value sx = dom::string_value(*x);
      for (const dom::Node* y : *nb)
        if (compare_atoms(op, sx, Value(dom::string_value(*y)))) return true;
    }
    return false;
  }
  if (na || nb) {
    const NodeSet& ns = na ? *na : *nb;
    const Value& other = na ? b : a;
    if (std::holds_alternative<bool>(other)) return compare_atoms(op, Value(!ns.empty()), other);
    for (const dom::Node* n : ns) {
      Value sv = dom::string_value(*n);
      if (na ? compare_atoms(op, sv, other) : compare_atoms(op, other, sv)) return true;
    }
    return false;
  }
  return compare_atoms(op, a, b);
}

bool matches(const Step& s, const dom::Node& n) {
  using dom::NodeKind;
  switch (s.test) {
    case Test::node: return true;
    case Test::text: return n.kind == NodeKind::text;
    case Test::comment: return n.kind == NodeKind::comment;
    case Test::any:
      return s.axis == Axis::attribute ? n.kind == NodeKind::attribute : n.kind == NodeKind::element;
    case Test::name:
      if (s.axis == Axis::attribute) return n.kind == NodeKind::attribute && n.name == s.name;
      return n.kind == NodeKind::element && n.name == s.name;
    case Test::normalize_space: return false;
  }
  return false;
}

void collect_descendants(const dom::Node& n, const Step& s, NodeSet& out) {
  std::vector<const dom::Node*> stack(n.children.rbegin(), n.children.rend());
  while (!stack.empty()) {
    const dom::Node* c = stack.back();
    stack.pop_back();
    if (matches(s, *c)) out.push_back(c);
    for (auto it = c->children.rbegin(); it != c->children.rend(); ++it) stack.push_back(*it);
  }
}

NodeSet axis_nodes(const dom::Node& n, const Step& s) {
  NodeSet out;
  switch (s.axis) {
    case Axis::child:
      for (const dom::Node* c : n.children)
        if (matches(s, *c)) out.push_back(c);
      break;
    case Axis::descendant: collect_descendants(n, s, out); break;
    case Axis::descendant_or_self:
      if (matches(s, n)) out.push_back(&n);
      collect_descendants(n, s, out);
      break;
    case Axis::self:
      if (matches(s, n)) out.push_back(&n);
      break;
    case Axis::parent:
      if (n.parent && matches(s, *n.parent)) out.push_back(n.parent);
      break;
    case Axis::attribute:
      for (const dom::Node* a : n.attributes)
        if (matches(s, *a)) out.push_back(a);
      break;
  }
  return out;
}

void sort_unique(NodeSet& ns) {
  std::sort(ns.begin(), ns.end(), [](const dom::Node* a, const dom::Node* b) { return a->order < b->order; });
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
}

const dom::Node& document_of(const dom::Node& n) {
  const dom::Node* cur = &n;
  while (cur->parent) cur = cur->parent;
  return *cur;
}

Value eval(const Expr& e, const Context& ctx);

NodeSet eval_path(const Expr& e, const dom::Node& context) {
  NodeSet current{e.absolute ? &document_of(context) : &context};
  for (const Step& step : e.steps) {
    NodeSet next;
    for (const dom::Node* n : current) {
      NodeSet candidates = axis_nodes(*n, step);
      for (const auto& pred : step.predicates) {
        NodeSet kept;
        const std::size_t size = candidates.size();
        for (std::size_t i = 0; i < size; ++i) {
          Value v = eval(*pred, Context{candidates[i], i + 1, size});
          bool keep = std::holds_alternative<double>(v) ? std::get<double>(v) == static_cast<double>(i + 1)
                                                       : to_boolean(v);
          if (keep) kept.push_back(candidates[i]);
        }
        candidates = std::move(kept);
      }
      next.insert(next.end(), candidates.begin(), candidates.end());
    }
    if (current.size() > 1 || step.axis == Axis::parent) sort_unique(next);
    current = std::move(next);
  }
  return current;
}

Value call(const Expr& e, const Context& ctx) {
  const std::string& f = e.text;
  if (f == "contains" || f == "starts-with") {
    std::string hay = to_string_value(eval(*e.args[0], ctx));
    std::string needle = to_string_value(eval(*e.args[1], ctx));
    return f == "contains" ? hay.find(needle) != std::string::npos : hay.rfind(needle, 0) == 0;
  }
  if (f == "normalize-space" || f == "string") {
    std::string s = e.args.empty() ? dom::string_value(*ctx.node) : to_string_value(eval(*e.args[0], ctx));
    return f == "string" ? s : normalize_space(s);
  }
  if (f == "not") return !to_boolean(eval(*e.args[0], ctx));
  if (f == "true") return true;
  if (f == "false") return false;
  if (f == "position") return static_cast<double>(ctx.position);
  if (f == "last") return static_cast<double>(ctx.size);
  if (f == "count") return static_cast<double>(std::get<NodeSet>(eval(*e.args[0], ctx)).size());
  throw Error(ErrorCode::internal, "unknown function " + f);
}

Value eval(const Expr& e, const Context& ctx) {
  switch (e.kind) {
    case Kind::literal: return e.text;
    case Kind::number: return e.number;
    case Kind::path: return eval_path(e, *ctx.node);
    case Kind::call: return call(e, ctx);
    case Kind::binary:
      if (e.op == Op::or_) return to_boolean(eval(*e.lhs, ctx)) || to_boolean(eval(*e.rhs, ctx));
      if (e.op == Op::and_) return to_boolean(eval(*e.lhs, ctx)) && to_boolean(eval(*e.rhs, ctx));
      return compare(e.op, eval(*e.lhs, ctx), eval(*e.rhs, ctx));
  }
  return false;
}

}  // namespace

ExtractedValue ExtractedValue::from_strings(std::vector<std::string> values) {
  ExtractedValue v;
  if (values.size() == 1) v.value_ = std::move(values.front());
  else if (values.size() > 1) v.value_ = std::move(values);
  return v;
}

std::vector<std::string> ExtractedValue::values() const {
  if (is_null()) return {};
  if (is_string()) return {str()};
  return array();
}

Expression Expression::compile(std::string_view source) {
  Expression out;
  out.source_ = std::string(source);
  ExprPtr root = Parser(source).parse();
  if (root->kind == Kind::path && !root->steps.empty() && root->steps.back().test == Test::normalize_space) {
    root->steps.pop_back();
    out.normalize_each_ = true;
    if (root->steps.empty() && !root->absolute) {
      Step self;
      self.axis = Axis::self;
      root->steps.push_back(std::move(self));
    }
  }
  if (contains_normalize_step(*root))
    unsupported(source, "normalize-space() as a path step is only supported at the end of an expression");
  out.root_ = std::shared_ptr<const Expr>(std::move(root));
  return out;
}

bool Expression::yields_nodes() const { return root_->kind == Kind::path && !normalize_each_; }

NodeSet select(const dom::Node& context, const Expression& expr) {
  if (!expr.yields_nodes())
    throw Error(ErrorCode::invalid_argument, "expression does not select nodes: " + expr.source());
  return eval_path(expr.root(), context);
}

NodeSet select(const dom::Node& context, std::string_view expr) {
  return select(context, Expression::compile(expr));
}

ExtractedValue extract_value(const dom::Node& context, const Expression& expr) {
  std::vector<std::string> values;
  if (expr.root().kind == Kind::path) {
    for (const dom::Node* n : eval_path(expr.root(), context)) {
      std::string sv = dom::string_value(*n);
      values.push_back(expr.normalizes_each() ? normalize_space(sv) : std::move(sv));
    }
  } else {
    values.push_back(to_string_value(eval(expr.root(), Context{&context, 1, 1})));
  }
  return ExtractedValue::from_strings(std::move(values));
}

ExtractedValue extract_value(const dom::Node& context, std::string_view expr) {
  return extract_value(context, Expression::compile(expr));
}

std::string normalize_space(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (is_xml_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace drweb::xpath
