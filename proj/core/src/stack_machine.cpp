#include "arsg/stack_machine.hpp"

#include "arsg/error.hpp"

namespace arsg {

StackMachine::StackMachine(std::vector<NodePtr> input) : input_(std::move(input)) {
  while (state_.stack.size() < 2 && state_.next < input_.size()) state_.stack.push_back(input_[state_.next++]);
}

PrecedenceKey StackMachine::key() const {
  const NodePtr* c = lookahead();
  return {left()->dre, right()->dre, c ? (*c)->dre : std::string(kEndSymbol)};
}

ParseContext StackMachine::context() const {
  const NodePtr* c = lookahead();
  return {&left()->attributes, &right()->attributes, c ? &(*c)->attributes : nullptr};
}

void StackMachine::shift() {
  if (remaining() == 0) throw Error(ErrorCode::IllegalShift, "no input left to shift");
  state_.stack.push_back(input_[state_.next++]);
}

NodePtr StackMachine::reduce(std::string head, Role left_role, Role right_role,
                                    std::span<const AttributeEquation> equations, const AttributeSchema& schema,
                                    std::optional<std::size_t> rule) {
  if (!can_decide()) throw Error(ErrorCode::IncompleteReduce, "reduction needs two stack nodes");
  auto parent = reduce_nodes(left(), left_role, right(), right_role, std::move(head), equations, schema, rule);
  state_.stack.pop_back();
  state_.stack.back() = parent;
  refill();
  return parent;
}

void StackMachine::refill() {
  if (state_.stack.size() < 2 && remaining() > 0) {
    state_.stack.push_back(input_[state_.next++]);
    ++state_.auto_shifts;
  }
}

}  // namespace arsg
