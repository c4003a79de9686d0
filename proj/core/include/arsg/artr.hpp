#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsg/attributes.hpp"
#include "arsg/equations.hpp"
#include "arsg/text.hpp"

namespace arsg {

struct ArtrNode;

// Nodes are immutable and shared between parse states, so snapshots during
// backtracking copy pointers rather than subtrees.
using NodePtr = std::shared_ptr<const ArtrNode>;

// A node of an attributed rhetorical structure tree. Leaves are basic trees
// (their lexical core is the payload, the blue concept is `dre`); internal
// nodes have exactly two children whose `role` attributes say which is the
// nucleus.
struct ArtrNode {
  std::string dre;
  AttributeMap attributes;
  NodePtr left;
  NodePtr right;
  std::optional<LexicalCore> leaf;
  std::optional<std::size_t> rule;  // index of the production used, if parsed

  bool is_leaf() const { return !left && !right; }
};

NodePtr make_leaf(LexicalCore lc, AttributeMap attributes);

// Copy of `node` whose role attribute is `role`; children are shared.
NodePtr with_role(const NodePtr& node, Role role);

// Applies `equations` to the children, stamps the roles onto copies of them
// and returns the new parent.
NodePtr reduce_nodes(const NodePtr& left, Role left_role, const NodePtr& right, Role right_role, std::string head,
                     std::span<const AttributeEquation> equations, const AttributeSchema& schema,
                     std::optional<std::size_t> rule = std::nullopt);

// Leaves in text order.
std::vector<const ArtrNode*> leaves_of(const ArtrNode& root);
std::size_t node_count(const ArtrNode& root);
std::size_t depth_of(const ArtrNode& root);

// Structural equality: symbols, attributes, payloads and, when
// `compare_rules`, the production references.
bool same_tree(const ArtrNode& a, const ArtrNode& b, bool compare_rules = true);

// A parsed (or annotated) text: the tree plus the EDUs its leaves refer to.
struct Artr {
  std::string text_id;
  std::vector<Edu> edus;
  NodePtr root;
};

// ARTR document: {"text_id", "edus": [...], "root": node}. Throws
// SchemaViolation on malformed input.
std::string serialize_artr(const Artr& artr);
Artr deserialize_artr(std::string_view document);

}  // namespace arsg
