#include "selector/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <initializer_list>

#include "selector/entities.hpp"

namespace drweb::html {
namespace {

using dom::Node;

bool one_of(std::string_view name, std::initializer_list<std::string_view> names) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\f' || c == '\r'; }

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), is_space);
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

bool is_void(std::string_view tag) {
  return one_of(tag, {"area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param",
                      "source", "track", "wbr", "basefont", "bgsound", "frame", "keygen"});
}

bool is_raw_text(std::string_view tag) {
  return one_of(tag, {"script", "style", "xmp", "iframe", "noembed", "noframes"});
}

bool is_escapable_raw_text(std::string_view tag) { return tag == "title" || tag == "textarea"; }

bool is_head_content(std::string_view tag) {
  return one_of(tag, {"base", "basefont", "bgsound", "link", "meta", "noframes", "script", "style",
                      "template", "title"});
}

// Start tags that implicitly close an open <p>.
bool closes_paragraph(std::string_view tag) {
  return one_of(tag, {"address", "article", "aside", "blockquote", "center", "details", "dialog", "dir",
                      "div", "dl", "fieldset", "figcaption", "figure", "footer", "form", "header",
                      "hgroup", "hr", "main", "menu", "nav", "ol", "p", "pre", "listing", "section",
                      "summary", "table", "ul", "li", "dd", "dt", "h1", "h2", "h3", "h4", "h5", "h6",
                      "plaintext", "xmp"});
}

bool is_heading(std::string_view tag) { return one_of(tag, {"h1", "h2", "h3", "h4", "h5", "h6"}); }

bool is_special(std::string_view tag) {
  return one_of(tag, {"address", "applet", "area", "article", "aside", "base", "basefont", "bgsound",
                      "blockquote", "body", "br", "button", "caption", "center", "col", "colgroup", "dd",
                      "details", "dir", "div", "dl", "dt", "embed", "fieldset", "figcaption", "figure",
                      "footer", "form", "frame", "frameset", "h1", "h2", "h3", "h4", "h5", "h6", "head",
                      "header", "hgroup", "hr", "html", "iframe", "img", "input", "li", "link", "listing",
                      "main", "marquee", "menu", "meta", "nav", "noembed", "noframes", "noscript",
                      "object", "ol", "p", "param", "plaintext", "pre", "script", "section", "select",
                      "source", "style", "summary", "table", "tbody", "td", "template", "textarea",
                      "tfoot", "th", "thead", "title", "tr", "track", "ul", "wbr", "xmp"});
}

bool is_table_context(std::string_view tag) {
  return one_of(tag, {"table", "tbody", "thead", "tfoot", "tr"});
}

enum class Scope { normal, button, list_item, table };

bool is_scope_boundary(std::string_view tag, Scope scope) {
  if (scope == Scope::table) return one_of(tag, {"html", "table", "template"});
  if (one_of(tag, {"applet", "caption", "html", "table", "td", "th", "marquee", "object", "template"}))
    return true;
  if (scope == Scope::button) return tag == "button";
  if (scope == Scope::list_item) return tag == "ol" || tag == "ul";
  return false;
}

struct Attribute {
  std::string name;
  std::string value;
};

// ---------------------------------------------------------------------------
// Encoding

std::string normalize_charset(std::string_view name) {
  std::string n = lower(name);
  while (!n.empty() && (is_space(n.back()) || n.back() == '"' || n.back() == '\'' || n.back() == ';'))
    n.pop_back();
  while (!n.empty() && (is_space(n.front()) || n.front() == '"' || n.front() == '\'')) n.erase(0, 1);
  if (n == "utf8" || n == "unicode-1-1-utf-8") return "utf-8";
  if (one_of(n, {"latin1", "iso-8859-1", "iso8859-1", "l1", "cp1252", "windows-1252", "us-ascii", "ascii",
                 "iso-8859-15", "x-cp1252"}))
    return "windows-1252";
  return n;
}

constexpr std::array<std::uint16_t, 32> kCp1252High = {
    0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0x008D, 0x017D, 0x008F, 0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178};

std::string sanitize_utf8(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    auto c = static_cast<unsigned char>(in[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      out += static_cast<char>(c);
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    }
    bool ok = len > 0 && i + len <= in.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      auto cc = static_cast<unsigned char>(in[i + k]);
      if ((cc & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (ok) {
      ok = !(len == 2 && cp < 0x80) && !(len == 3 && cp < 0x800) && !(len == 4 && cp < 0x10000) &&
           cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    }
    if (ok) {
      out.append(in.substr(i, len));
      i += len;
    } else {
      detail::append_utf8(out, 0xFFFD);
      ++i;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree construction

class TreeBuilder {
 public:
  explicit TreeBuilder(dom::Document& doc) : doc_(doc) {}

  void start_tag(const std::string& name, const std::vector<Attribute>& attrs) {
    if (name == "html") {
      merge_attributes(ensure_html(), attrs);
      return;
    }
    if (!body_) {
      if (name == "head" && !head_) {
        ensure_head();
        merge_attributes(*head_, attrs);
        in_head_ = true;
        return;
      }
      if (name == "head") return;
      if (is_head_content(name) && !after_head_) {
        ensure_head();
        Node* el = make_element(name, attrs);
        doc_.append_child(*head_, el);
        if (is_raw_text(name) || is_escapable_raw_text(name)) raw_parent_ = el;
        return;
      }
      ensure_body(name == "body" ? &attrs : nullptr);
      if (name == "body") return;
    } else if (name == "body") {
      merge_attributes(*body_, attrs);
      return;
    } else if (name == "head") {
      return;
    }
    in_body_start(name, attrs);
  }

  void end_tag(std::string_view name) {
    if (!body_) {
      if (name == "head") {
        ensure_head();
        in_head_ = false;
        after_head_ = true;
        return;
      }
      if (name == "html" || name == "body" || name == "br") {
        if (name == "br") {
          ensure_body(nullptr);
          in_body_start("br", {});
        }
        return;
      }
      if (head_ && in_head_ && is_head_content(name)) return;
      return;
    }
    if (name == "body" || name == "html") return;
    if (name == "br") {
      in_body_start("br", {});
      return;
    }
    if (name == "p") {
      if (in_scope("p", Scope::button)) pop_until("p");
      else insert_element("p", {});
      return;
    }
    if (name == "li") {
      if (in_scope("li", Scope::list_item)) pop_until("li");
      return;
    }
    if (name == "dd" || name == "dt") {
      if (in_scope(name, Scope::normal)) pop_until(name);
      return;
    }
    if (is_heading(name)) {
      for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
        if (is_heading((*it)->name)) {
          while (!is_heading(stack_.back()->name)) stack_.pop_back();
          stack_.pop_back();
          return;
        }
        if (is_scope_boundary((*it)->name, Scope::normal)) return;
      }
      return;
    }
    if (one_of(name, {"table", "tbody", "thead", "tfoot", "tr", "td", "th"})) {
      if (in_scope(name, Scope::table)) pop_until(name);
      return;
    }
    if (is_special(name)) {
      if (in_scope(name, Scope::normal)) pop_until(name);
      return;
    }
    // Any other end tag: close the nearest matching element unless a
    // special element sits above it.
    for (std::size_t i = stack_.size(); i-- > 1;) {
      Node* n = stack_[i];
      if (n->name == name) {
        stack_.resize(i);
        return;
      }
      if (is_special(n->name)) return;
    }
  }

  void text(std::string_view data) {
    if (data.empty()) return;
    if (raw_parent_) {
      doc_.append_text(*raw_parent_, data);
      return;
    }
    if (!body_) {
      std::size_t lead = 0;
      while (lead < data.size() && is_space(data[lead])) ++lead;
      if (lead == data.size()) return;
      data.remove_prefix(lead);
      ensure_body(nullptr);
    }
    Node& parent = *stack_.back();
    if (is_table_context(parent.name) && !is_blank(data)) {
      foster_text(data);
      return;
    }
    doc_.append_text(parent, data);
  }

  void comment(std::string data) {
    Node* c = doc_.create_comment(std::move(data));
    if (body_) doc_.append_child(*stack_.back(), c);
    else if (head_ && in_head_) doc_.append_child(*head_, c);
    else doc_.append_child(ensure_html(), c);
  }

  // Ends a raw-text element (script, style, title, textarea...).
  void end_raw() {
    raw_parent_ = nullptr;
  }

  void finish() {
    ensure_body(nullptr);
    doc_.finalize();
  }

 private:
  Node& ensure_html() {
    if (!html_) {
      html_ = doc_.create_element("html");
      doc_.append_child(doc_.root(), html_);
    }
    return *html_;
  }

  void ensure_head() {
    if (head_) return;
    head_ = doc_.create_element("head");
    doc_.append_child(ensure_html(), head_);
  }

  void ensure_body(const std::vector<Attribute>* attrs) {
    if (body_) return;
    ensure_head();
    body_ = doc_.create_element("body");
    if (attrs) merge_attributes(*body_, *attrs);
    doc_.append_child(ensure_html(), body_);
    stack_ = {html_, body_};
    in_head_ = false;
  }

  void merge_attributes(Node& el, const std::vector<Attribute>& attrs) {
    for (const auto& a : attrs) doc_.set_attribute(el, a.name, a.value);
  }

  Node* make_element(const std::string& name, const std::vector<Attribute>& attrs) {
    Node* el = doc_.create_element(name);
    merge_attributes(*el, attrs);
    return el;
  }

  Node* insert_element(const std::string& name, const std::vector<Attribute>& attrs) {
    Node* el = make_element(name, attrs);
    Node& parent = *stack_.back();
    if (is_table_context(parent.name) && !one_of(name, {"caption", "colgroup", "col", "tbody", "thead", "tfoot",
                                                        "tr", "td", "th", "script", "style", "template",
                                                        "form", "input"})) {
      foster_node(el);
    } else {
      doc_.append_child(parent, el);
    }
    return el;
  }

  Node* table_on_stack() {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
      if ((*it)->name == "table") return *it;
    return nullptr;
  }

  void foster_node(Node* el) {
    Node* table = table_on_stack();
    if (table && table->parent) doc_.insert_before(*table->parent, el, table);
    else doc_.append_child(*stack_.back(), el);
  }

  void foster_text(std::string_view data) {
    Node* table = table_on_stack();
    if (!table || !table->parent) {
      doc_.append_text(*stack_.back(), data);
      return;
    }
    doc_.insert_before(*table->parent, doc_.create_text(std::string(data)), table);
  }

  bool in_scope(std::string_view target, Scope scope) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if ((*it)->name == target) return true;
      if (is_scope_boundary((*it)->name, scope)) return false;
    }
    return false;
  }

  void pop_until(std::string_view target) {
    while (stack_.size() > 2) {
      bool hit = stack_.back()->name == target;
      stack_.pop_back();
      if (hit) return;
    }
  }

  void close_paragraph_if_open() {
    if (in_scope("p", Scope::button)) pop_until("p");
  }

  void close_list_item(std::initializer_list<std::string_view> targets) {
    for (std::size_t i = stack_.size(); i-- > 2;) {
      const std::string& n = stack_[i]->name;
      if (one_of(n, targets)) {
        stack_.resize(i);
        return;
      }
      if (is_special(n) && !one_of(n, {"address", "div", "p"})) return;
    }
  }

  void in_body_start(const std::string& name, const std::vector<Attribute>& attrs) {
    if (name == "li") {
      close_list_item({"li"});
    } else if (name == "dd" || name == "dt") {
      close_list_item({"dd", "dt"});
    }
    if (closes_paragraph(name)) close_paragraph_if_open();
    if (is_heading(name) && is_heading(stack_.back()->name)) stack_.pop_back();
    if (name == "a" && in_scope("a", Scope::normal)) pop_until("a");
    if (name == "option" && stack_.back()->name == "option") stack_.pop_back();
    if (name == "optgroup") {
      if (stack_.back()->name == "option") stack_.pop_back();
      if (stack_.back()->name == "optgroup") stack_.pop_back();
    }
    if (one_of(name, {"tbody", "thead", "tfoot"})) {
      close_table_parts({"tbody", "thead", "tfoot", "tr", "td", "th"});
    } else if (name == "tr") {
      close_table_parts({"tr", "td", "th"});
      if (stack_.back()->name == "table") stack_.push_back(insert_element("tbody", {}));
    } else if (name == "td" || name == "th") {
      close_table_parts({"td", "th"});
      if (one_of(stack_.back()->name, {"table", "tbody", "thead", "tfoot"})) {
        if (stack_.back()->name == "table") stack_.push_back(insert_element("tbody", {}));
        stack_.push_back(insert_element("tr", {}));
      }
    }
    Node* el = insert_element(name, attrs);
    if (is_void(name)) return;
    if (is_raw_text(name) || is_escapable_raw_text(name)) {
      raw_parent_ = el;
      return;
    }
    stack_.push_back(el);
  }

  // Pops the outermost open element among `parts` inside the current table.
  void close_table_parts(std::initializer_list<std::string_view> parts) {
    std::size_t cut = 0;
    for (std::size_t i = stack_.size(); i-- > 2;) {
      const std::string& n = stack_[i]->name;
      if (n == "table") break;
      if (one_of(n, parts)) cut = i;
    }
    if (cut) stack_.resize(cut);
  }

  dom::Document& doc_;
  Node* html_ = nullptr;
  Node* head_ = nullptr;
  Node* body_ = nullptr;
  Node* raw_parent_ = nullptr;
  bool in_head_ = false;
  bool after_head_ = false;
  std::vector<Node*> stack_;
};

// ---------------------------------------------------------------------------
// Tokenizer

class Tokenizer {
 public:
  Tokenizer(std::string_view input, TreeBuilder& builder) : in_(input), builder_(builder) {}

  void run() {
    while (pos_ < in_.size()) {
      std::size_t lt = in_.find('<', pos_);
      if (lt == std::string_view::npos) lt = in_.size();
      if (lt > pos_) emit_text(in_.substr(pos_, lt - pos_));
      pos_ = lt;
      if (pos_ >= in_.size()) break;
      read_markup();
    }
    flush_text();
    builder_.finish();
  }

 private:
  void emit_text(std::string_view raw) {
    for (std::size_t i = 0; i < raw.size();) {
      char c = raw[i];
      if (c == '&') {
        std::size_t used = detail::decode_reference(raw.substr(i + 1), false, pending_);
        if (used > 0) {
          i += used + 1;
          continue;
        }
      }
      if (c == '\0') {
        ++i;
        continue;
      }
      pending_ += c;
      ++i;
    }
  }

  void flush_text() {
    if (pending_.empty()) return;
    builder_.text(pending_);
    pending_.clear();
  }

  void read_markup() {
    std::string_view rest = in_.substr(pos_);
    if (rest.substr(0, 4) == "<!--") {
      std::size_t end = in_.find("-->", pos_ + 4);
      std::size_t stop = end == std::string_view::npos ? in_.size() : end;
      std::string body(in_.substr(pos_ + 4, stop - pos_ - 4));
      pos_ = end == std::string_view::npos ? in_.size() : end + 3;
      flush_text();
      builder_.comment(std::move(body));
      return;
    }
    if (rest.size() >= 2 && (rest[1] == '!' || rest[1] == '?')) {
      std::size_t end = in_.find('>', pos_);
      if (end == std::string_view::npos) end = in_.size();
      std::size_t body_start = pos_ + (rest[1] == '?' ? 1 : 2);
      std::string_view body = in_.substr(body_start, end - body_start);
      pos_ = std::min(end + 1, in_.size());
      if (lower(body.substr(0, 7)) != "doctype") {
        flush_text();
        builder_.comment(std::string(body));
      }
      return;
    }
    if (rest.size() >= 2 && rest[1] == '/') {
      if (rest.size() >= 3 && std::isalpha(static_cast<unsigned char>(rest[2]))) {
        pos_ += 2;
        std::string name = read_tag_name();
        std::size_t end = in_.find('>', pos_);
        pos_ = end == std::string_view::npos ? in_.size() : end + 1;
        flush_text();
        builder_.end_tag(name);
        return;
      }
      if (rest.size() >= 3 && rest[2] == '>') {
        pos_ += 3;
        return;
      }
      std::size_t end = in_.find('>', pos_);
      std::string body(in_.substr(pos_ + 2, (end == std::string_view::npos ? in_.size() : end) - pos_ - 2));
      pos_ = end == std::string_view::npos ? in_.size() : end + 1;
      flush_text();
      builder_.comment(std::move(body));
      return;
    }
    if (rest.size() >= 2 && std::isalpha(static_cast<unsigned char>(rest[1]))) {
      ++pos_;
      read_start_tag();
      return;
    }
    pending_ += '<';
    ++pos_;
  }

  std::string read_tag_name() {
    std::string name;
    while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '/' && in_[pos_] != '>') {
      char c = in_[pos_++];
      name += c == '\0' ? '?' : ascii_lower(c);
    }
    return name;
  }

  void read_start_tag() {
    std::string name = read_tag_name();
    std::vector<Attribute> attrs;
    // A trailing "/>" is ignored on HTML elements.
    while (pos_ < in_.size()) {
      while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
      if (pos_ >= in_.size()) break;
      char c = in_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/') {
        ++pos_;
        if (pos_ < in_.size() && in_[pos_] == '>') {
          ++pos_;
          break;
        }
        continue;
      }
      std::string attr_name;
      attr_name += ascii_lower(in_[pos_++]);
      while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '/' && in_[pos_] != '>' &&
             in_[pos_] != '=')
        attr_name += ascii_lower(in_[pos_++]);
      while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
      std::string value;
      if (pos_ < in_.size() && in_[pos_] == '=') {
        ++pos_;
        while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
        value = read_attribute_value();
      }
      if (std::none_of(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name == attr_name; }))
        attrs.push_back({std::move(attr_name), std::move(value)});
    }
    flush_text();
    bool raw = is_raw_text(name) || is_escapable_raw_text(name) || name == "plaintext";
    bool skip_newline = one_of(name, {"pre", "textarea", "listing"});
    builder_.start_tag(name, attrs);
    if (skip_newline && pos_ < in_.size() && in_[pos_] == '\n') ++pos_;
    if (raw) read_raw_text(name);
  }

  std::string read_attribute_value() {
    std::string raw;
    if (pos_ < in_.size() && (in_[pos_] == '"' || in_[pos_] == '\'')) {
      char quote = in_[pos_++];
      std::size_t end = in_.find(quote, pos_);
      if (end == std::string_view::npos) end = in_.size();
      raw = std::string(in_.substr(pos_, end - pos_));
      pos_ = std::min(end + 1, in_.size());
    } else {
      while (pos_ < in_.size() && !is_space(in_[pos_]) && in_[pos_] != '>') raw += in_[pos_++];
    }
    std::string out;
    for (std::size_t i = 0; i < raw.size();) {
      if (raw[i] == '&') {
        std::size_t used = detail::decode_reference(std::string_view(raw).substr(i + 1), true, out);
        if (used > 0) {
          i += used + 1;
          continue;
        }
      }
      out += raw[i++];
    }
    return out;
  }

  void read_raw_text(const std::string& name) {
    std::size_t search = pos_;
    std::size_t end = in_.size();
    while (name != "plaintext") {
      std::size_t lt = in_.find("</", search);
      if (lt == std::string_view::npos) break;
      std::string_view candidate = in_.substr(lt + 2, name.size());
      char after = lt + 2 + name.size() < in_.size() ? in_[lt + 2 + name.size()] : '>';
      if (lower(candidate) == name && (is_space(after) || after == '/' || after == '>')) {
        end = lt;
        break;
      }
      search = lt + 2;
    }
    std::string_view body = in_.substr(pos_, end - pos_);
    if (is_escapable_raw_text(name)) {
      emit_text(body);
      flush_text();
    } else {
      builder_.text(body);
    }
    builder_.end_raw();
    pos_ = end;
    if (end < in_.size()) {
      std::size_t close = in_.find('>', end);
      pos_ = close == std::string_view::npos ? in_.size() : close + 1;
      builder_.end_tag(name);
    }
  }

  std::string_view in_;
  TreeBuilder& builder_;
  std::size_t pos_ = 0;
  std::string pending_;
};

std::string preprocess(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out += '\n';
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace

std::optional<std::string> sniff_meta_charset(std::string_view bytes) {
  std::string head = lower(bytes.substr(0, 1024));
  std::size_t pos = 0;
  while ((pos = head.find("<meta", pos)) != std::string::npos) {
    std::size_t end = head.find('>', pos);
    std::string_view tag = std::string_view(head).substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::size_t cs = tag.find("charset");
    if (cs != std::string_view::npos) {
      std::size_t i = cs + 7;
      while (i < tag.size() && is_space(tag[i])) ++i;
      if (i < tag.size() && tag[i] == '=') {
        ++i;
        while (i < tag.size() && (is_space(tag[i]) || tag[i] == '"' || tag[i] == '\'')) ++i;
        std::size_t start = i;
        while (i < tag.size() && !is_space(tag[i]) && tag[i] != '"' && tag[i] != '\'' && tag[i] != ';' &&
               tag[i] != '/' && tag[i] != '>')
          ++i;
        if (i > start) return std::string(tag.substr(start, i - start));
      }
    }
    pos += 5;
  }
  return std::nullopt;
}

std::string decode_to_utf8(std::string_view bytes, std::string_view charset) {
  if (normalize_charset(charset) == "windows-1252") {
    std::string out;
    out.reserve(bytes.size() + bytes.size() / 4);
    for (char ch : bytes) {
      auto c = static_cast<unsigned char>(ch);
      if (c >= 0x80 && c <= 0x9F) detail::append_utf8(out, kCp1252High[c - 0x80]);
      else detail::append_utf8(out, c);
    }
    return out;
  }
  return sanitize_utf8(bytes);
}

dom::Document parse_html(std::string_view bytes, std::string base_url, std::optional<std::string> declared_charset) {
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") {
    bytes.remove_prefix(3);
    declared_charset = "utf-8";
  }
  std::string charset = declared_charset ? *declared_charset : sniff_meta_charset(bytes).value_or("utf-8");
  std::string text = preprocess(decode_to_utf8(bytes, charset));
  dom::Document doc(std::move(base_url));
  TreeBuilder builder(doc);
  Tokenizer(text, builder).run();
  return doc;
}

}  // namespace drweb::html
