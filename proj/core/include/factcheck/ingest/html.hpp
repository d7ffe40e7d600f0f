#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace factcheck::ingest::html {

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct Node {
  enum class Kind { kDocument, kElement, kText };

  Kind kind = Kind::kElement;
  std::string tag;  // lowercase; empty for text and document nodes
  std::vector<std::pair<std::string, std::string>> attributes;  // names lowercase
  std::string text;  // entity-decoded text for kText
  NodeId parent = kNoNode;
  std::vector<NodeId> children;

  const std::string* attribute(std::string_view name) const;
  bool has_class(std::string_view cls) const;
};

/// A lenient HTML element tree. Unclosed elements, stray end tags, void
/// elements and raw-text elements (script/style) are handled the way
/// browsers mostly do; exact HTML5 tree construction is not attempted.
class Document {
 public:
  static Document parse(std::string_view html);

  NodeId root() const { return 0; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  /// Text of the subtree with tags stripped. Block-level boundaries and <br>
  /// separate words; whitespace is collapsed and trimmed.
  std::string text_content(NodeId id) const;

  /// Element ids in document (pre-)order.
  std::vector<NodeId> elements() const;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

/// Decodes character references (&amp;, &#233;, &#xE9;, common named ones).
std::string decode_entities(std::string_view text);

}  // namespace factcheck::ingest::html
