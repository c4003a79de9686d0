#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arsg/artr.hpp"
#include "arsg/grammar.hpp"
#include "arsg/reason.hpp"

namespace arsg {

// Shift/reduce bookkeeping shared by the parser, annotation sessions and log
// replay. The first two roots start on the stack; whenever a reduction leaves
// a single node while input remains, the next root is shifted automatically.
// Automatic shifts are not decisions.
class StackMachine {
 public:
  struct State {
    std::vector<NodePtr> stack;
    std::size_t next = 0;  // index of the lookahead in the input
    std::size_t auto_shifts = 0;

    bool operator==(const State&) const = default;
  };

  StackMachine() = default;
  explicit StackMachine(std::vector<NodePtr> input);

  const std::vector<NodePtr>& input() const { return input_; }
  const std::vector<NodePtr>& stack() const { return state_.stack; }
  const State& state() const { return state_; }
  void restore(State state) { state_ = std::move(state); }

  std::size_t remaining() const { return input_.size() - state_.next; }
  bool can_decide() const { return state_.stack.size() >= 2; }
  bool done() const { return state_.stack.size() == 1 && remaining() == 0; }

  const NodePtr& left() const { return state_.stack[state_.stack.size() - 2]; }
  const NodePtr& right() const { return state_.stack.back(); }
  const NodePtr* lookahead() const { return remaining() ? &input_[state_.next] : nullptr; }

  // Symbols (A, B, C) of the current context; C is kEndSymbol at end of input.
  PrecedenceKey key() const;
  ParseContext context() const;

  // Throws IllegalShift when the input is exhausted.
  void shift();

  // Replaces the two stack tops by their parent, refills the stack and
  // returns the parent.
  NodePtr reduce(std::string head, Role left_role, Role right_role, std::span<const AttributeEquation> equations,
                        const AttributeSchema& schema, std::optional<std::size_t> rule = std::nullopt);

 private:
  void refill();

  std::vector<NodePtr> input_;
  State state_;
};

}  // namespace arsg
