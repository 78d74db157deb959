#include "selector/dom.hpp"

#include <algorithm>
#include <functional>

namespace drweb::dom {

const Node* Node::attribute(std::string_view attr) const {
  for (const Node* a : attributes)
    if (a->name == attr) return a;
  return nullptr;
}

Document::Document(std::string base_url) : base_url_(std::move(base_url)) {
  root_ = allocate(NodeKind::document);
}

Node* Document::allocate(NodeKind kind) {
  Node& n = nodes_.emplace_back();
  n.kind = kind;
  return &n;
}

Node* Document::create_element(std::string tag) {
  Node* n = allocate(NodeKind::element);
  n->name = std::move(tag);
  return n;
}

Node* Document::create_text(std::string text) {
  Node* n = allocate(NodeKind::text);
  n->value = std::move(text);
  return n;
}

Node* Document::create_comment(std::string text) {
  Node* n = allocate(NodeKind::comment);
  n->value = std::move(text);
  return n;
}

void Document::set_attribute(Node& element, std::string name, std::string value) {
  if (element.attribute(name)) return;
  Node* a = allocate(NodeKind::attribute);
  a->name = std::move(name);
  a->value = std::move(value);
  a->parent = &element;
  element.attributes.push_back(a);
}

void Document::append_child(Node& parent, Node* child) {
  child->parent = &parent;
  parent.children.push_back(child);
}

void Document::insert_before(Node& parent, Node* child, const Node* reference) {
  auto it = std::find(parent.children.begin(), parent.children.end(), reference);
  child->parent = &parent;
  if (it != parent.children.begin() && child->kind == NodeKind::text) {
    Node* prev = *(it == parent.children.end() ? parent.children.end() - 1 : it - 1);
    if (prev->kind == NodeKind::text) {
      prev->value += child->value;
      return;
    }
  }
  parent.children.insert(it, child);
}

void Document::append_text(Node& parent, std::string_view text) {
  if (text.empty()) return;
  if (!parent.children.empty() && parent.children.back()->kind == NodeKind::text) {
    parent.children.back()->value += text;
    return;
  }
  append_child(parent, create_text(std::string(text)));
}

void Document::finalize() {
  std::size_t next = 0;
  std::vector<Node*> stack{root_};
  while (!stack.empty()) {
    Node* n = stack.back();
    stack.pop_back();
    n->order = next++;
    for (Node* a : n->attributes) a->order = next++;
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(*it);
  }
}

std::string string_value(const Node& node) {
  switch (node.kind) {
    case NodeKind::attribute:
    case NodeKind::text:
    case NodeKind::comment: return node.value;
    case NodeKind::element:
    case NodeKind::document: break;
  }
  std::string out;
  std::vector<const Node*> stack{&node};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->kind == NodeKind::text) {
      out += n->value;
      continue;
    }
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\n\r\f") == std::string_view::npos;
}

std::string escape_text(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\n') out += "\\n";
    else if (c == '\t') out += "\\t";
    else if (c == '\\') out += "\\\\";
    else if (c == '"') out += "\\\"";
    else out += c;
  }
  return out;
}

}  // namespace

std::string dump_tree(const Node& node, bool skip_whitespace_text) {
  std::string out;
  std::function<void(const Node&, int)> walk = [&](const Node& n, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    switch (n.kind) {
      case NodeKind::document:
        out += "#document\n";
        break;
      case NodeKind::element: {
        out += indent + "<" + n.name + ">\n";
        std::vector<const Node*> attrs(n.attributes.begin(), n.attributes.end());
        std::sort(attrs.begin(), attrs.end(), [](const Node* a, const Node* b) { return a->name < b->name; });
        for (const Node* a : attrs) out += indent + "  @" + a->name + "=\"" + escape_text(a->value) + "\"\n";
        break;
      }
      case NodeKind::text:
        if (skip_whitespace_text && is_blank(n.value)) return;
        out += indent + "\"" + escape_text(n.value) + "\"\n";
        return;
      case NodeKind::comment:
      case NodeKind::attribute: return;
    }
    for (const Node* c : n.children) walk(*c, depth + 1);
  };
  walk(node, 0);
  return out;
}

}  // namespace drweb::dom
