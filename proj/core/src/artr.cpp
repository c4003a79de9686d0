#include "arsg/artr.hpp"

#include <algorithm>

namespace arsg {

NodePtr make_leaf(LexicalCore lc, AttributeMap attributes) {
  auto node = std::make_shared<ArtrNode>();
  node->dre = lc.blue;
  node->attributes = std::move(attributes);
  node->leaf = std::move(lc);
  return node;
}

NodePtr with_role(const NodePtr& node, Role role) {
  auto copy = std::make_shared<ArtrNode>(*node);
  copy->attributes.set(std::string(attr::role), std::string(to_string(role)));
  return copy;
}

NodePtr reduce_nodes(const NodePtr& left, Role left_role, const NodePtr& right, Role right_role, std::string head,
                     std::span<const AttributeEquation> equations, const AttributeSchema& schema,
                     std::optional<std::size_t> rule) {
  auto parent = std::make_shared<ArtrNode>();
  parent->dre = std::move(head);
  parent->attributes = apply_equations(equations, left->attributes, right->attributes, schema);
  parent->attributes.erase(attr::role);
  parent->left = with_role(left, left_role);
  parent->right = with_role(right, right_role);
  parent->rule = rule;
  return parent;
}

std::vector<const ArtrNode*> leaves_of(const ArtrNode& root) {
  std::vector<const ArtrNode*> out;
  std::vector<const ArtrNode*> stack{&root};
  while (!stack.empty()) {
    const ArtrNode* node = stack.back();
    stack.pop_back();
    if (node->is_leaf()) {
      out.push_back(node);
      continue;
    }
    if (node->right) stack.push_back(node->right.get());
    if (node->left) stack.push_back(node->left.get());
  }
  return out;
}

std::size_t node_count(const ArtrNode& root) {
  std::size_t count = 0;
  std::vector<const ArtrNode*> stack{&root};
  while (!stack.empty()) {
    const ArtrNode* node = stack.back();
    stack.pop_back();
    ++count;
    if (node->left) stack.push_back(node->left.get());
    if (node->right) stack.push_back(node->right.get());
  }
  return count;
}

std::size_t depth_of(const ArtrNode& root) {
  std::size_t best = 0;
  std::vector<std::pair<const ArtrNode*, std::size_t>> stack{{&root, 1}};
  while (!stack.empty()) {
    auto [node, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (node->left) stack.emplace_back(node->left.get(), d + 1);
    if (node->right) stack.emplace_back(node->right.get(), d + 1);
  }
  return best;
}

bool same_tree(const ArtrNode& a, const ArtrNode& b, bool compare_rules) {
  if (a.dre != b.dre || !(a.attributes == b.attributes) || a.leaf != b.leaf) return false;
  if (compare_rules && a.rule != b.rule) return false;
  if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
  if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
  if (a.left && !same_tree(*a.left, *b.left, compare_rules)) return false;
  if (a.right && !same_tree(*a.right, *b.right, compare_rules)) return false;
  return true;
}

}  // namespace arsg
