#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arsg/attributes.hpp"
#include "arsg/reason.hpp"

namespace arsg {

struct ConstRhs {
  Value value;
  bool operator==(const ConstRhs&) const = default;
};

struct CopyRhs {
  Slot slot = Slot::Left;  // LEFT or RIGHT
  std::string attribute;
  bool operator==(const CopyRhs&) const = default;
};

enum class Combine { Union, Max, Min };

// LEFT.left_attribute (op) RIGHT.right_attribute
struct CombineRhs {
  Combine op = Combine::Union;
  std::string left_attribute;
  std::string right_attribute;
  bool operator==(const CombineRhs&) const = default;
};

// slot.attribute + delta, for integer attributes.
struct OffsetRhs {
  Slot slot = Slot::Left;
  std::string attribute;
  std::int64_t delta = 0;
  bool operator==(const OffsetRhs&) const = default;
};

using EquationRhs = std::variant<ConstRhs, CopyRhs, CombineRhs, OffsetRhs>;

// target(parent) = rhs(children), evaluated once at reduction time.
struct AttributeEquation {
  std::string target;
  EquationRhs rhs;

  bool operator==(const AttributeEquation&) const = default;
};

bool operator<(const AttributeEquation& a, const AttributeEquation& b);

std::string to_string(const AttributeEquation& eq);

// Sorted by target then right-hand side; exact duplicates dropped. Equation
// sets compare order-insensitively once canonical.
std::vector<AttributeEquation> canonical_equations(std::vector<AttributeEquation> equations);

// The standard cue upload: cue = LEFT.cue ∪ RIGHT.cue.
AttributeEquation cue_union_equation();

// Parent attribute map computed from the two children. Throws KindMismatch
// when an equation's result kind differs from the schema kind of its target
// and UnsetSource when a referenced child attribute is missing. A Union over
// two unset cue sets is an exception: cue defaults to the empty set.
AttributeMap apply_equations(std::span<const AttributeEquation> equations, const AttributeMap& left,
                             const AttributeMap& right, const AttributeSchema& schema);

// Kind problems of the equations against a schema (no evaluation).
std::vector<std::string> check_equations(std::span<const AttributeEquation> equations, const AttributeSchema& schema);

}  // namespace arsg
