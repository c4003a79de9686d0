#include "arsg/equations.hpp"

#include <algorithm>
#include <tuple>

#include "arsg/error.hpp"

namespace arsg {

namespace {

int rank(const EquationRhs& rhs) { return static_cast<int>(rhs.index()); }

bool rhs_less(const EquationRhs& a, const EquationRhs& b) {
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b);
        if constexpr (std::is_same_v<T, ConstRhs>) {
          return lhs.value < rhs.value;
        } else if constexpr (std::is_same_v<T, CopyRhs>) {
          return std::tie(lhs.slot, lhs.attribute) < std::tie(rhs.slot, rhs.attribute);
        } else if constexpr (std::is_same_v<T, CombineRhs>) {
          return std::tie(lhs.op, lhs.left_attribute, lhs.right_attribute) <
                 std::tie(rhs.op, rhs.left_attribute, rhs.right_attribute);
        } else {
          return std::tie(lhs.slot, lhs.attribute, lhs.delta) < std::tie(rhs.slot, rhs.attribute, rhs.delta);
        }
      },
      a);
}

const AttributeMap& side(Slot slot, const AttributeMap& left, const AttributeMap& right) {
  return slot == Slot::Right ? right : left;
}

std::string_view combine_name(Combine op) {
  switch (op) {
    case Combine::Union: return "union";
    case Combine::Max: return "max";
    case Combine::Min: return "min";
  }
  return "union";
}

[[noreturn]] void unset(const AttributeEquation& eq, std::string_view slot, const std::string& attribute) {
  throw Error(ErrorCode::UnsetSource,
              "equation '" + to_string(eq) + "' reads unset " + std::string(slot) + "." + attribute);
}

std::optional<AttrKind> result_kind(const AttributeEquation& eq, const AttributeSchema& schema) {
  struct Visitor {
    const AttributeSchema& schema;
    std::optional<AttrKind> operator()(const ConstRhs& c) const { return kind_of(c.value); }
    std::optional<AttrKind> operator()(const CopyRhs& c) const {
      const auto* spec = schema.find(c.attribute);
      return spec ? std::optional(spec->kind) : std::nullopt;
    }
    std::optional<AttrKind> operator()(const CombineRhs& c) const {
      const auto* l = schema.find(c.left_attribute);
      const auto* r = schema.find(c.right_attribute);
      if (!l || !r || l->kind != r->kind) return std::nullopt;
      return l->kind;
    }
    std::optional<AttrKind> operator()(const OffsetRhs& c) const {
      const auto* spec = schema.find(c.attribute);
      return spec ? std::optional(spec->kind) : std::nullopt;
    }
  };
  return std::visit(Visitor{schema}, eq.rhs);
}

}  // namespace

bool operator<(const AttributeEquation& a, const AttributeEquation& b) {
  if (a.target != b.target) return a.target < b.target;
  return rhs_less(a.rhs, b.rhs);
}

std::string to_string(const AttributeEquation& eq) {
  struct Visitor {
    std::string operator()(const ConstRhs& c) const { return to_string(c.value); }
    std::string operator()(const CopyRhs& c) const { return std::string(to_string(c.slot)) + "." + c.attribute; }
    std::string operator()(const CombineRhs& c) const {
      return std::string(combine_name(c.op)) + "(LEFT." + c.left_attribute + ", RIGHT." + c.right_attribute + ")";
    }
    std::string operator()(const OffsetRhs& c) const {
      std::string out = std::string(to_string(c.slot)) + "." + c.attribute;
      if (c.delta >= 0) return out + " + " + std::to_string(c.delta);
      return out + " - " + std::to_string(-c.delta);
    }
  };
  return eq.target + " = " + std::visit(Visitor{}, eq.rhs);
}

std::vector<AttributeEquation> canonical_equations(std::vector<AttributeEquation> equations) {
  std::sort(equations.begin(), equations.end());
  equations.erase(std::unique(equations.begin(), equations.end()), equations.end());
  return equations;
}

AttributeEquation cue_union_equation() {
  return {std::string(attr::cue), CombineRhs{Combine::Union, std::string(attr::cue), std::string(attr::cue)}};
}

AttributeMap apply_equations(std::span<const AttributeEquation> equations, const AttributeMap& left,
                             const AttributeMap& right, const AttributeSchema& schema) {
  AttributeMap parent;
  for (const auto& eq : equations) {
    const AttributeSpec* target = schema.find(eq.target);
    if (!target) throw Error(ErrorCode::KindMismatch, "equation '" + to_string(eq) + "' targets unknown attribute");

    Value result = std::visit(
        [&](const auto& rhs) -> Value {
          using T = std::decay_t<decltype(rhs)>;
          if constexpr (std::is_same_v<T, ConstRhs>) {
            return rhs.value;
          } else if constexpr (std::is_same_v<T, CopyRhs>) {
            const Value* v = side(rhs.slot, left, right).get(rhs.attribute);
            if (!v) unset(eq, to_string(rhs.slot), rhs.attribute);
            return *v;
          } else if constexpr (std::is_same_v<T, OffsetRhs>) {
            const Value* v = side(rhs.slot, left, right).get(rhs.attribute);
            if (!v) unset(eq, to_string(rhs.slot), rhs.attribute);
            const auto* n = std::get_if<std::int64_t>(v);
            if (!n) throw Error(ErrorCode::KindMismatch, "offset of non-integer in '" + to_string(eq) + "'");
            return *n + rhs.delta;
          } else {
            const Value* l = left.get(rhs.left_attribute);
            const Value* r = right.get(rhs.right_attribute);
            const bool cue_default = rhs.op == Combine::Union && target->kind == AttrKind::StringSet;
            static const Value kEmptySet = StringSet{};
            if (!l && cue_default) l = &kEmptySet;
            if (!r && cue_default) r = &kEmptySet;
            if (!l) unset(eq, "LEFT", rhs.left_attribute);
            if (!r) unset(eq, "RIGHT", rhs.right_attribute);
            if (l->index() != r->index()) {
              throw Error(ErrorCode::KindMismatch, "operands of '" + to_string(eq) + "' differ in kind");
            }
            if (rhs.op == Combine::Union) {
              const auto* ls = std::get_if<StringSet>(l);
              if (!ls) throw Error(ErrorCode::KindMismatch, "union of non-sets in '" + to_string(eq) + "'");
              StringSet merged = *ls;
              const auto& rs = std::get<StringSet>(*r);
              merged.insert(rs.begin(), rs.end());
              return merged;
            }
            const auto* ln = std::get_if<std::int64_t>(l);
            if (!ln) throw Error(ErrorCode::KindMismatch, "max/min of non-integers in '" + to_string(eq) + "'");
            const auto rn = std::get<std::int64_t>(*r);
            return rhs.op == Combine::Max ? std::max(*ln, rn) : std::min(*ln, rn);
          }
        },
        eq.rhs);

    if (kind_of(result) != target->kind) {
      throw Error(ErrorCode::KindMismatch, "equation '" + to_string(eq) + "' yields " +
                                               std::string(to_string(kind_of(result))) + " for " +
                                               std::string(to_string(target->kind)) + " attribute");
    }
    parent.set(eq.target, std::move(result));
  }
  return parent;
}

std::vector<std::string> check_equations(std::span<const AttributeEquation> equations, const AttributeSchema& schema) {
  std::vector<std::string> problems;
  for (const auto& eq : equations) {
    const AttributeSpec* target = schema.find(eq.target);
    if (!target) {
      problems.push_back("equation '" + to_string(eq) + "' targets unknown attribute");
      continue;
    }
    auto kind = result_kind(eq, schema);
    if (!kind || *kind != target->kind) {
      problems.push_back("equation '" + to_string(eq) + "' does not produce a " +
                         std::string(to_string(target->kind)));
    }
    if (const auto* c = std::get_if<CombineRhs>(&eq.rhs)) {
      const bool sets = target->kind == AttrKind::StringSet;
      if ((c->op == Combine::Union) != sets) problems.push_back("equation '" + to_string(eq) + "' misuses " +
                                                                std::string(combine_name(c->op)));
    }
    if (std::holds_alternative<OffsetRhs>(eq.rhs) && target->kind != AttrKind::Integer) {
      problems.push_back("equation '" + to_string(eq) + "' offsets a non-integer");
    }
    auto lookahead_slot = [](const EquationRhs& rhs) {
      if (const auto* c = std::get_if<CopyRhs>(&rhs)) return c->slot == Slot::Lookahead;
      if (const auto* o = std::get_if<OffsetRhs>(&rhs)) return o->slot == Slot::Lookahead;
      return false;
    };
    if (lookahead_slot(eq.rhs)) problems.push_back("equation '" + to_string(eq) + "' reads the lookahead");
  }
  return problems;
}

}  // namespace arsg
