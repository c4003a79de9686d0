#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arsg/attributes.hpp"

namespace arsg {

// Which node of the parse context an atom reads: the two stack tops (A, B) or
// the lookahead (C).
enum class Slot { Left, Right, Lookahead };

std::string_view to_string(Slot slot);
std::optional<Slot> parse_slot(std::string_view text);

enum class CompareOp { Eq, Neq, Lt, Gt, Le, Ge, SetEq, Contains };

std::string_view to_string(CompareOp op);  // "=", "!=", "<", ">", "<=", ">=", "set=", "contains"
std::optional<CompareOp> parse_compare_op(std::string_view text);

// An attribute of another context node used as the right operand, as in u < s.
struct AttributeRef {
  Slot slot = Slot::Left;
  std::string attribute;

  bool operator==(const AttributeRef&) const = default;
  bool operator<(const AttributeRef& other) const;
};

using Operand = std::variant<Value, AttributeRef>;

// attribute(slot) op operand. CONTAINS tests superset inclusion.
struct ReasonAtom {
  Slot slot = Slot::Left;
  std::string attribute;
  CompareOp op = CompareOp::Eq;
  Operand operand;

  bool operator==(const ReasonAtom&) const = default;
  bool operator<(const ReasonAtom& other) const;
};

using Conjunction = std::vector<ReasonAtom>;

// A propositional formula in disjunctive normal form. Clauses and the atoms
// inside each clause are kept sorted and duplicate-free, so structurally equal
// formulas compare equal. A clause without atoms is true, which collapses the
// whole reason to the constant.
class Reason {
 public:
  Reason() = default;  // constant true

  static Reason always() { return Reason(); }
  static Reason conjunction(Conjunction atoms);
  static Reason any_of(std::vector<Conjunction> clauses);

  bool is_constant_true() const { return constant_true_; }
  const std::vector<Conjunction>& clauses() const { return clauses_; }

  Reason disjoin(const Reason& other) const;

  bool operator==(const Reason&) const = default;

 private:
  bool constant_true_ = true;
  std::vector<Conjunction> clauses_;
};

// The attribute maps a reason is evaluated against. A missing lookahead means
// end of input.
struct ParseContext {
  const AttributeMap* left = nullptr;
  const AttributeMap* right = nullptr;
  const AttributeMap* lookahead = nullptr;
};

// Atoms over an absent slot or an unset attribute are false. Throws
// SchemaMismatch when an operand's kind differs from the attribute value's.
bool eval_atom(const ReasonAtom& atom, const ParseContext& ctx);
bool eval_reason(const Reason& reason, const ParseContext& ctx);

std::string to_string(const ReasonAtom& atom);
std::string to_string(const Reason& reason);

// Operator/kind compatibility problems against a schema.
std::vector<std::string> check_reason(const Reason& reason, const AttributeSchema& schema);

}  // namespace arsg
