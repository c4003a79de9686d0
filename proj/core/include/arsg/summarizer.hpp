#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arsg/artr.hpp"
#include "arsg/rational.hpp"

namespace arsg {

// Lazily produces the leaves of a tree in significance order. Two cursors walk
// nuc(root) and sat(root) nucleus-first (the left child plays the nucleus of a
// multinuclear node); control passes to the other cursor each time a leaf is
// emitted, and once one side is exhausted the other runs to completion.
// Throws MalformedTree on a unary node or on children without a legal role
// pair.
class SignificanceTraversal {
 public:
  explicit SignificanceTraversal(const ArtrNode& root);

  const ArtrNode* next();          // nullptr once every leaf has been emitted
  std::size_t visits() const { return visits_; }  // nodes popped so far

 private:
  struct Cursor {
    std::vector<const ArtrNode*> pending;
    const ArtrNode* advance(std::size_t& visits);
  };

  Cursor cursors_[2];
  int turn_ = 0;
  std::size_t visits_ = 0;
};

// Nucleus child first, satellite second.
std::pair<const ArtrNode*, const ArtrNode*> nucleus_first(const ArtrNode& node);

std::vector<const ArtrNode*> significance_order(const ArtrNode& root, std::size_t* visits = nullptr);

// At least one bound is required; with both, whichever holds first stops.
struct SummaryRequest {
  std::optional<std::int64_t> count;  // 0 < count < leaves
  std::optional<Rational> ratio;      // 0 < ratio <= 1
  bool restore_text_order = false;
};

struct SummaryItem {
  int edu_id = 0;
  std::size_t rank = 0;  // 1-based position in significance order
  std::string text;

  bool operator==(const SummaryItem&) const = default;
};

enum class HaltReason { Count, Ratio, Exhausted };
std::string_view to_string(HaltReason reason);

struct SummaryResult {
  std::vector<SummaryItem> items;
  HaltReason halted_by = HaltReason::Exhausted;
  std::size_t visits = 0;
};

// The counter i is incremented after each emitted leaf, then the traversal
// stops when i = count or i / leaves >= ratio. Throws BadRequest for bounds
// outside their ranges.
SummaryResult summarize(const Artr& artr, const SummaryRequest& request);

}  // namespace arsg
