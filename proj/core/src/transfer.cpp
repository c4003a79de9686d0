#include "arsg/transfer.hpp"

#include <set>

#include "arsg/error.hpp"
#include "json_codec.hpp"

namespace arsg {

std::string_view to_string(MappingClass c) {
  switch (c) {
    case MappingClass::Dre: return "dre";
    case MappingClass::Literal: return "literal";
    case MappingClass::Attribute: return "attribute";
  }
  return "dre";
}

std::optional<MappingClass> parse_mapping_class(std::string_view text) {
  for (auto c : {MappingClass::Dre, MappingClass::Literal, MappingClass::Attribute}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

namespace {

constexpr std::string_view kMapping = "concept mapping";

template <typename M>
auto& table(M& m, MappingClass c) {
  return c == MappingClass::Dre ? m.dre : c == MappingClass::Literal ? m.literal : m.attribute;
}

using Table = std::map<std::string, std::string>;

const std::string& lookup(const Table& t, const std::string& s) {
  auto it = t.find(s);
  return it == t.end() ? s : it->second;
}

Table compose_table(const Table& f, const Table& h) {
  Table out;
  std::set<std::string> range;
  for (const auto& [src, dst] : f) {
    out[src] = lookup(h, dst);
    range.insert(dst);
  }
  for (const auto& [src, dst] : h) {
    if (!f.count(src) && !range.count(src)) out[src] = dst;
  }
  return out;
}

// Sources sharing a target, or a target that is also a symbol in `present`
// the table does not move.
void check_injective(const Table& t, const std::set<std::string>& present, std::string_view what) {
  std::set<std::string> targets;
  for (const auto& [src, dst] : t) {
    if (!targets.insert(dst).second) {
      throw Error(ErrorCode::NonInjectiveMapping, std::string(what) + " target '" + dst + "' has several sources");
    }
  }
  for (const auto& dst : targets) {
    if (present.count(dst) && !t.count(dst)) {
      throw Error(ErrorCode::NonInjectiveMapping,
                  std::string(what) + " target '" + dst + "' collides with an existing symbol");
    }
  }
}

class Rewriter {
 public:
  explicit Rewriter(const ConceptMapping& m) : m_(m) {}

  std::string dre(const std::string& s) const { return s == kEndSymbol ? s : lookup(m_.dre, s); }
  std::string attribute(const std::string& s) const { return lookup(m_.attribute, s); }

  Value value(const Value& v) const {
    if (const auto* s = std::get_if<std::string>(&v)) return lookup(m_.literal, *s);
    if (const auto* set = std::get_if<StringSet>(&v)) {
      StringSet out;
      for (const auto& e : *set) out.insert(lookup(m_.literal, e));
      return out;
    }
    return v;
  }

  Reason reason(const Reason& r) const {
    if (r.is_constant_true()) return r;
    std::vector<Conjunction> clauses;
    for (const auto& clause : r.clauses()) {
      Conjunction atoms;
      for (const auto& a : clause) {
        ReasonAtom b = a;
        b.attribute = attribute(a.attribute);
        if (const auto* ref = std::get_if<AttributeRef>(&a.operand)) {
          b.operand = AttributeRef{ref->slot, attribute(ref->attribute)};
        } else {
          b.operand = value(std::get<Value>(a.operand));
        }
        atoms.push_back(std::move(b));
      }
      clauses.push_back(std::move(atoms));
    }
    return Reason::any_of(std::move(clauses));
  }

  AttributeEquation equation(const AttributeEquation& eq) const {
    AttributeEquation out{attribute(eq.target), eq.rhs};
    std::visit(
        [&](auto& rhs) {
          using T = std::decay_t<decltype(rhs)>;
          if constexpr (std::is_same_v<T, ConstRhs>) {
            rhs.value = value(rhs.value);
          } else if constexpr (std::is_same_v<T, CombineRhs>) {
            rhs.left_attribute = attribute(rhs.left_attribute);
            rhs.right_attribute = attribute(rhs.right_attribute);
          } else {
            rhs.attribute = attribute(rhs.attribute);
          }
        },
        out.rhs);
    return out;
  }

  std::set<std::string> symbols(const std::set<std::string>& in, const Table& t) const {
    std::set<std::string> out;
    for (const auto& s : in) out.insert(lookup(t, s));
    return out;
  }

 private:
  const ConceptMapping& m_;
};

}  // namespace

ConceptMapping parse_mapping(std::string_view document) {
  auto j = codec::parse(document, kMapping);
  const auto& list = codec::require(j, "mappings", kMapping);
  if (!list.is_array()) codec::violation(kMapping, "mappings must be a list");
  ConceptMapping m;
  for (const auto& item : list) {
    auto src = codec::require_string(item, "source_id", kMapping);
    auto dst = codec::require_string(item, "target_id", kMapping);
    auto cls = parse_mapping_class(codec::require_string(item, "class", kMapping));
    if (!cls) codec::violation(kMapping, "class must be dre, literal or attribute");
    if (!table(m, *cls).emplace(src, dst).second) codec::violation(kMapping, "source '" + src + "' mapped twice");
  }
  return m;
}

std::string serialize_mapping(const ConceptMapping& mapping) {
  codec::Json list = codec::Json::array();
  for (auto c : {MappingClass::Dre, MappingClass::Literal, MappingClass::Attribute}) {
    for (const auto& [src, dst] : table(mapping, c)) {
      list.push_back({{"source_id", src}, {"target_id", dst}, {"class", std::string(to_string(c))}});
    }
  }
  return codec::dump({{"mappings", std::move(list)}});
}

ConceptMapping compose(const ConceptMapping& f, const ConceptMapping& h) {
  return {compose_table(f.dre, h.dre), compose_table(f.literal, h.literal), compose_table(f.attribute, h.attribute)};
}

TransferResult transfer_grammar(const Grammar& g, const ConceptMapping& mapping, const DomainKnowledgeBase& extension) {
  std::set<std::string> symbols = g.dre;
  symbols.insert(g.dcp.begin(), g.dcp.end());
  check_injective(mapping.dre, symbols, "dre");
  check_injective(mapping.literal, {}, "literal");
  std::set<std::string> attributes;
  for (const auto& e : g.schema.entries()) attributes.insert(e.name);
  check_injective(mapping.attribute, attributes, "attribute");
  for (const auto& [src, dst] : mapping.dre) {
    const Concept* c = extension.find(dst);
    if (!c || c->color != Color::Blue) {
      throw Error(ErrorCode::DanglingTarget, "target '" + dst + "' is not a blue concept of the extended knowledge base");
    }
  }

  const Rewriter rw(mapping);
  TransferResult out;
  Grammar& h = out.grammar;
  h.start = g.start;
  h.dre = rw.symbols(g.dre, mapping.dre);
  h.dcp = rw.symbols(g.dcp, mapping.dre);
  h.rre = rw.symbols(g.rre, mapping.literal);

  std::vector<AttributeSpec> entries;
  for (const auto& e : g.schema.entries()) {
    AttributeSpec renamed = e;
    renamed.name = rw.attribute(e.name);
    if (renamed.name != e.name) ++out.report.changed_attributes;
    entries.push_back(std::move(renamed));
  }
  h.schema = AttributeSchema(std::move(entries));

  for (const auto& p : g.productions) {
    ProductionRule q = p;
    q.head = rw.dre(p.head);
    q.left = rw.dre(p.left);
    q.right = rw.dre(p.right);
    q.reason = rw.reason(p.reason);
    q.equations.clear();
    for (const auto& eq : p.equations) q.equations.push_back(rw.equation(eq));
    q.equations = canonical_equations(std::move(q.equations));
    if (q.left_role == Role::Satellite && q.right_role == Role::Satellite) {
      throw Error(ErrorCode::RoleSchemaBreak, "substitution produced an (S,S) production");
    }
    if (!(q == p)) ++out.report.changed_productions;
    h.productions.push_back(std::move(q));
  }
  for (const auto& t : g.precedences) {
    PrecedenceTuple u = t;
    u.key = {rw.dre(t.key.left), rw.dre(t.key.middle), rw.dre(t.key.lookahead)};
    u.reason = rw.reason(t.reason);
    if (!(u == t)) ++out.report.changed_precedences;
    h.precedences.push_back(std::move(u));
  }
  canonicalize(h);
  return out;
}

}  // namespace arsg
