#include "arsg/reason.hpp"

#include <algorithm>
#include <tuple>

#include "arsg/error.hpp"

namespace arsg {

std::string_view to_string(Slot slot) {
  switch (slot) {
    case Slot::Left: return "LEFT";
    case Slot::Right: return "RIGHT";
    case Slot::Lookahead: return "LOOKAHEAD";
  }
  return "LEFT";
}

std::optional<Slot> parse_slot(std::string_view text) {
  if (text == "LEFT") return Slot::Left;
  if (text == "RIGHT") return Slot::Right;
  if (text == "LOOKAHEAD") return Slot::Lookahead;
  return std::nullopt;
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Neq: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Gt: return ">";
    case CompareOp::Le: return "<=";
    case CompareOp::Ge: return ">=";
    case CompareOp::SetEq: return "set=";
    case CompareOp::Contains: return "contains";
  }
  return "=";
}

std::optional<CompareOp> parse_compare_op(std::string_view text) {
  for (auto op : {CompareOp::Eq, CompareOp::Neq, CompareOp::Lt, CompareOp::Gt, CompareOp::Le, CompareOp::Ge,
                  CompareOp::SetEq, CompareOp::Contains}) {
    if (to_string(op) == text) return op;
  }
  return std::nullopt;
}

bool AttributeRef::operator<(const AttributeRef& other) const {
  return std::tie(slot, attribute) < std::tie(other.slot, other.attribute);
}

bool ReasonAtom::operator<(const ReasonAtom& other) const {
  return std::tie(slot, attribute, op, operand) < std::tie(other.slot, other.attribute, other.op, other.operand);
}

namespace {

void normalize(Conjunction& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

const AttributeMap* map_for(Slot slot, const ParseContext& ctx) {
  switch (slot) {
    case Slot::Left: return ctx.left;
    case Slot::Right: return ctx.right;
    case Slot::Lookahead: return ctx.lookahead;
  }
  return nullptr;
}

bool compare(const Value& lhs, CompareOp op, const Value& rhs, const ReasonAtom& atom) {
  if (lhs.index() != rhs.index()) {
    throw Error(ErrorCode::SchemaMismatch, "atom " + to_string(atom) + " compares " +
                                               std::string(to_string(kind_of(lhs))) + " with " +
                                               std::string(to_string(kind_of(rhs))));
  }
  switch (op) {
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Neq: return lhs != rhs;
    case CompareOp::SetEq: return lhs == rhs;
    case CompareOp::Contains: {
      const auto* have = std::get_if<StringSet>(&lhs);
      const auto* want = std::get_if<StringSet>(&rhs);
      if (!have || !want) throw Error(ErrorCode::SchemaMismatch, "contains needs string sets: " + to_string(atom));
      return std::includes(have->begin(), have->end(), want->begin(), want->end());
    }
    default: break;
  }
  const auto* a = std::get_if<std::int64_t>(&lhs);
  const auto* b = std::get_if<std::int64_t>(&rhs);
  if (!a || !b) throw Error(ErrorCode::SchemaMismatch, "ordering needs integers: " + to_string(atom));
  switch (op) {
    case CompareOp::Lt: return *a < *b;
    case CompareOp::Gt: return *a > *b;
    case CompareOp::Le: return *a <= *b;
    case CompareOp::Ge: return *a >= *b;
    default: return false;
  }
}

}  // namespace

Reason Reason::conjunction(Conjunction atoms) { return any_of({std::move(atoms)}); }

Reason Reason::any_of(std::vector<Conjunction> clauses) {
  Reason r;
  for (auto& c : clauses) {
    normalize(c);
    if (c.empty()) return Reason::always();
  }
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  if (clauses.empty()) return Reason::always();
  r.constant_true_ = false;
  r.clauses_ = std::move(clauses);
  return r;
}

Reason Reason::disjoin(const Reason& other) const {
  if (constant_true_ || other.constant_true_) return Reason::always();
  std::vector<Conjunction> merged = clauses_;
  merged.insert(merged.end(), other.clauses_.begin(), other.clauses_.end());
  return any_of(std::move(merged));
}

bool eval_atom(const ReasonAtom& atom, const ParseContext& ctx) {
  const AttributeMap* subject = map_for(atom.slot, ctx);
  if (!subject) return false;
  const Value* lhs = subject->get(atom.attribute);
  if (!lhs) return false;
  if (const auto* literal = std::get_if<Value>(&atom.operand)) return compare(*lhs, atom.op, *literal, atom);
  const auto& ref = std::get<AttributeRef>(atom.operand);
  const AttributeMap* other = map_for(ref.slot, ctx);
  if (!other) return false;
  const Value* rhs = other->get(ref.attribute);
  if (!rhs) return false;
  return compare(*lhs, atom.op, *rhs, atom);
}

bool eval_reason(const Reason& reason, const ParseContext& ctx) {
  if (reason.is_constant_true()) return true;
  for (const auto& clause : reason.clauses()) {
    bool all = true;
    for (const auto& atom : clause) {
      if (!eval_atom(atom, ctx)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::string to_string(const ReasonAtom& atom) {
  std::string out = atom.attribute + "(" + std::string(to_string(atom.slot)) + ") " + std::string(to_string(atom.op)) + " ";
  if (const auto* v = std::get_if<Value>(&atom.operand)) {
    out += to_string(*v);
  } else {
    const auto& ref = std::get<AttributeRef>(atom.operand);
    out += ref.attribute + "(" + std::string(to_string(ref.slot)) + ")";
  }
  return out;
}

std::string to_string(const Reason& reason) {
  if (reason.is_constant_true()) return "True";
  std::string out;
  for (std::size_t i = 0; i < reason.clauses().size(); ++i) {
    if (i) out += " | ";
    const auto& clause = reason.clauses()[i];
    if (reason.clauses().size() > 1) out += "(";
    for (std::size_t j = 0; j < clause.size(); ++j) {
      if (j) out += " & ";
      out += to_string(clause[j]);
    }
    if (reason.clauses().size() > 1) out += ")";
  }
  return out;
}

std::vector<std::string> check_reason(const Reason& reason, const AttributeSchema& schema) {
  std::vector<std::string> problems;
  auto kind_ok = [](CompareOp op, AttrKind kind) {
    switch (op) {
      case CompareOp::Lt:
      case CompareOp::Gt:
      case CompareOp::Le:
      case CompareOp::Ge: return kind == AttrKind::Integer;
      case CompareOp::SetEq:
      case CompareOp::Contains: return kind == AttrKind::StringSet;
      case CompareOp::Eq:
      case CompareOp::Neq: return kind != AttrKind::StringSet;
    }
    return false;
  };
  for (const auto& clause : reason.clauses()) {
    for (const auto& atom : clause) {
      const AttributeSpec* spec = schema.find(atom.attribute);
      if (!spec) {
        problems.push_back("atom " + to_string(atom) + " uses unknown attribute");
        continue;
      }
      if (!kind_ok(atom.op, spec->kind)) {
        problems.push_back("atom " + to_string(atom) + " applies " + std::string(to_string(atom.op)) + " to " +
                           std::string(to_string(spec->kind)));
      }
      if (const auto* v = std::get_if<Value>(&atom.operand); v && kind_of(*v) != spec->kind) {
        problems.push_back("atom " + to_string(atom) + " literal kind differs from attribute kind");
      }
      if (const auto* ref = std::get_if<AttributeRef>(&atom.operand)) {
        const AttributeSpec* other = schema.find(ref->attribute);
        if (!other || other->kind != spec->kind) {
          problems.push_back("atom " + to_string(atom) + " compares attributes of different kinds");
        }
      }
    }
  }
  return problems;
}

}  // namespace arsg
