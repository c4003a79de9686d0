#include "arsg/summarizer.hpp"

#include <algorithm>

#include "arsg/error.hpp"

namespace arsg {

std::pair<const ArtrNode*, const ArtrNode*> nucleus_first(const ArtrNode& node) {
  if (!node.left || !node.right) throw Error(ErrorCode::MalformedTree, "node '" + node.dre + "' is not binary");
  auto l = role_of(node.left->attributes);
  auto r = role_of(node.right->attributes);
  if (!l || !r) throw Error(ErrorCode::MalformedTree, "children of '" + node.dre + "' lack roles");
  if (*l == Role::Satellite && *r == Role::Satellite) {
    throw Error(ErrorCode::MalformedTree, "children of '" + node.dre + "' are both satellites");
  }
  if (*l == Role::Satellite) return {node.right.get(), node.left.get()};
  return {node.left.get(), node.right.get()};
}

const ArtrNode* SignificanceTraversal::Cursor::advance(std::size_t& visits) {
  while (!pending.empty()) {
    const ArtrNode* node = pending.back();
    pending.pop_back();
    ++visits;
    if (node->is_leaf()) return node;
    auto [nuc, sat] = nucleus_first(*node);
    pending.push_back(sat);
    pending.push_back(nuc);
  }
  return nullptr;
}

SignificanceTraversal::SignificanceTraversal(const ArtrNode& root) {
  if (root.is_leaf()) {
    cursors_[0].pending.push_back(&root);
    return;
  }
  auto [nuc, sat] = nucleus_first(root);
  ++visits_;
  cursors_[0].pending.push_back(nuc);
  cursors_[1].pending.push_back(sat);
}

const ArtrNode* SignificanceTraversal::next() {
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int side = turn_;
    turn_ = 1 - turn_;
    if (const ArtrNode* leaf = cursors_[side].advance(visits_)) return leaf;
  }
  return nullptr;
}

std::vector<const ArtrNode*> significance_order(const ArtrNode& root, std::size_t* visits) {
  SignificanceTraversal walk(root);
  std::vector<const ArtrNode*> out;
  while (const ArtrNode* leaf = walk.next()) out.push_back(leaf);
  if (visits) *visits = walk.visits();
  return out;
}

std::string_view to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::Count: return "count";
    case HaltReason::Ratio: return "ratio";
    case HaltReason::Exhausted: return "exhausted";
  }
  return "exhausted";
}

SummaryResult summarize(const Artr& artr, const SummaryRequest& request) {
  if (!artr.root) throw Error(ErrorCode::MalformedTree, "ARTR has no root");
  const auto h = static_cast<std::int64_t>(leaves_of(*artr.root).size());
  if (!request.count && !request.ratio) throw Error(ErrorCode::BadRequest, "a count or a ratio is required");
  if (request.count && (*request.count <= 0 || *request.count >= h)) {
    throw Error(ErrorCode::BadRequest, "count must lie strictly between 0 and " + std::to_string(h));
  }
  if (request.ratio && (*request.ratio <= Rational(0) || *request.ratio > Rational(1))) {
    throw Error(ErrorCode::BadRequest, "ratio must lie in (0, 1]");
  }

  SummaryResult result;
  SignificanceTraversal walk(*artr.root);
  std::int64_t i = 0;
  while (const ArtrNode* leaf = walk.next()) {
    SummaryItem item;
    item.edu_id = leaf->leaf ? leaf->leaf->edu_id : 0;
    item.rank = static_cast<std::size_t>(++i);
    auto edu = std::find_if(artr.edus.begin(), artr.edus.end(), [&](const Edu& e) { return e.id == item.edu_id; });
    if (edu != artr.edus.end()) item.text = edu->text;
    result.items.push_back(std::move(item));
    if (request.count && i == *request.count) {
      result.halted_by = HaltReason::Count;
      break;
    }
    if (request.ratio && Rational(i, h) >= *request.ratio) {
      result.halted_by = HaltReason::Ratio;
      break;
    }
  }
  result.visits = walk.visits();
  if (request.restore_text_order) {
    std::stable_sort(result.items.begin(), result.items.end(),
                     [](const SummaryItem& a, const SummaryItem& b) { return a.edu_id < b.edu_id; });
  }
  return result;
}

}  // namespace arsg
