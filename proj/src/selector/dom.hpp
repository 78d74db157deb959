#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

namespace drweb::dom {

enum class NodeKind { document, element, attribute, text, comment };

// Nodes are owned by their Document and stay at a fixed address for its
// lifetime; `const Node*` is the node handle used throughout evaluation.
struct Node {
  NodeKind kind = NodeKind::element;
  std::string name;   // element tag or attribute name, lowercase
  std::string value;  // text, comment or attribute value
  Node* parent = nullptr;  // owner element for attributes
  std::vector<Node*> children;
  std::vector<Node*> attributes;
  std::size_t order = 0;  // preorder rank: element, its attributes, then children

  bool is_element() const { return kind == NodeKind::element; }
  bool is_element(std::string_view tag) const { return kind == NodeKind::element && name == tag; }
  const Node* attribute(std::string_view attr) const;
};

class Document {
 public:
  explicit Document(std::string base_url = "about:blank");
  Document(Document&&) noexcept = default;
  Document& operator=(Document&&) noexcept = default;
  Document(const Document&) = delete;
  Document& operator=(const Document&) = delete;

  const Node& root() const { return *root_; }
  Node& root() { return *root_; }
  const std::string& base_url() const { return base_url_; }
  std::size_t node_count() const { return nodes_.size(); }

  Node* create_element(std::string tag);
  Node* create_text(std::string text);
  Node* create_comment(std::string text);
  // First occurrence wins, matching HTML attribute semantics.
  void set_attribute(Node& element, std::string name, std::string value);

  void append_child(Node& parent, Node* child);
  void insert_before(Node& parent, Node* child, const Node* reference);
  // Appends text, merging into a trailing text node when present.
  void append_text(Node& parent, std::string_view text);

  // Recomputes document order. Called once the tree is complete.
  void finalize();

 private:
  Node* allocate(NodeKind kind);

  std::deque<Node> nodes_;
  Node* root_;
  std::string base_url_;
};

// XPath 1.0 string-value.
std::string string_value(const Node& node);

// Renders the element/attribute/text structure, one node per line; used for
// diagnostics and for comparing parse trees in tests.
std::string dump_tree(const Node& node, bool skip_whitespace_text = true);

}  // namespace drweb::dom
