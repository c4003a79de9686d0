#include "json_codec.hpp"

#include "arsg/error.hpp"

namespace arsg::codec {

Json parse(std::string_view document, std::string_view what) {
  try {
    return Json::parse(document);
  } catch (const Json::parse_error& e) {
    violation(what, e.what());
  }
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

[[noreturn]] void violation(std::string_view what, std::string_view detail) {
  throw Error(ErrorCode::SchemaViolation, std::string(what) + ": " + std::string(detail));
}

const Json& require(const Json& object, std::string_view key, std::string_view what) {
  if (!object.is_object()) violation(what, "expected an object holding '" + std::string(key) + "'");
  auto it = object.find(key);
  if (it == object.end()) violation(what, "missing field '" + std::string(key) + "'");
  return *it;
}

std::string require_string(const Json& object, std::string_view key, std::string_view what) {
  const auto& v = require(object, key, what);
  if (!v.is_string()) violation(what, "field '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const Json& object, std::string_view key, std::string_view what) {
  const auto& v = require(object, key, what);
  if (!v.is_number_integer()) violation(what, "field '" + std::string(key) + "' must be an integer");
  return v.get<std::int64_t>();
}

namespace {

constexpr std::string_view kValue = "attribute value";
constexpr std::string_view kReason = "reason";
constexpr std::string_view kEquation = "attribute equation";
constexpr std::string_view kNode = "ARTR node";
constexpr std::string_view kGrammar = "grammar";

std::vector<std::string> string_list(const Json& j, std::string_view what) {
  if (!j.is_array()) violation(what, "expected a list of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) violation(what, "expected a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

Slot require_slot(const Json& j, std::string_view what) {
  auto slot = parse_slot(require_string(j, "slot", what));
  if (!slot) violation(what, "unknown slot");
  return *slot;
}

Role require_role(const Json& j, std::string_view what) {
  if (!j.is_string()) violation(what, "role must be a string");
  auto r = parse_role(j.get<std::string>());
  if (!r) violation(what, "role must be N or S");
  return *r;
}

std::uint64_t require_positive(const Json& j, std::string_view key, std::string_view what) {
  auto v = require_int(j, key, what);
  if (v < 1) violation(what, "field '" + std::string(key) + "' must be positive");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

Json to_json(const Value& value) {
  return std::visit([](const auto& v) -> Json { return Json(v); }, value);
}

Value value_from_json(const Json& json) {
  if (json.is_boolean()) return json.get<bool>();
  if (json.is_number_integer()) return json.get<std::int64_t>();
  if (json.is_string()) return json.get<std::string>();
  if (json.is_array()) {
    auto list = string_list(json, kValue);
    return StringSet(list.begin(), list.end());
  }
  violation(kValue, "must be an integer, boolean, string or list of strings");
}

Json to_json(const AttributeMap& map) {
  Json j = Json::object();
  for (const auto& [name, value] : map.values()) j[name] = to_json(value);
  return j;
}

AttributeMap attributes_from_json(const Json& json) {
  if (!json.is_object()) violation("attribute map", "must be an object");
  AttributeMap map;
  for (const auto& [name, value] : json.items()) map.set(name, value_from_json(value));
  return map;
}

Json to_json(const AttributeSchema& schema) {
  Json list = Json::array();
  for (const auto& e : schema.entries()) {
    list.push_back({{"name", e.name}, {"kind", std::string(to_string(e.kind))}, {"scope", std::string(to_string(e.scope))}});
  }
  return list;
}

AttributeSchema schema_from_json(const Json& json) {
  constexpr std::string_view what = "attribute schema";
  if (!json.is_array()) violation(what, "must be a list");
  std::vector<AttributeSpec> entries;
  for (const auto& e : json) {
    AttributeSpec spec;
    spec.name = require_string(e, "name", what);
    auto kind = parse_attr_kind(require_string(e, "kind", what));
    auto scope = parse_attr_scope(require_string(e, "scope", what));
    if (!kind || !scope) violation(what, "bad kind or scope for '" + spec.name + "'");
    spec.kind = *kind;
    spec.scope = *scope;
    entries.push_back(std::move(spec));
  }
  return AttributeSchema(std::move(entries));
}

Json to_json(const ReasonAtom& atom) {
  Json j = {{"slot", std::string(to_string(atom.slot))}, {"attribute", atom.attribute},
            {"op", std::string(to_string(atom.op))}};
  if (const auto* ref = std::get_if<AttributeRef>(&atom.operand)) {
    j["ref"] = {{"slot", std::string(to_string(ref->slot))}, {"attribute", ref->attribute}};
  } else {
    j["value"] = to_json(std::get<Value>(atom.operand));
  }
  return j;
}

ReasonAtom atom_from_json(const Json& json) {
  ReasonAtom atom;
  atom.slot = require_slot(json, kReason);
  atom.attribute = require_string(json, "attribute", kReason);
  auto op = parse_compare_op(require_string(json, "op", kReason));
  if (!op) violation(kReason, "unknown operator");
  atom.op = *op;
  if (auto it = json.find("ref"); it != json.end()) {
    atom.operand = AttributeRef{require_slot(*it, kReason), require_string(*it, "attribute", kReason)};
  } else {
    atom.operand = value_from_json(require(json, "value", kReason));
  }
  return atom;
}

// Constant true is written as `true`, anything else as a list of clauses.
Json to_json(const Reason& reason) {
  if (reason.is_constant_true()) return true;
  Json clauses = Json::array();
  for (const auto& clause : reason.clauses()) {
    Json atoms = Json::array();
    for (const auto& a : clause) atoms.push_back(to_json(a));
    clauses.push_back(std::move(atoms));
  }
  return clauses;
}

Reason reason_from_json(const Json& json) {
  if (json.is_boolean() && json.get<bool>()) return Reason::always();
  if (!json.is_array() || json.empty()) violation(kReason, "must be true or a non-empty list of clauses");
  std::vector<Conjunction> clauses;
  for (const auto& c : json) {
    if (!c.is_array()) violation(kReason, "clause must be a list of atoms");
    Conjunction atoms;
    for (const auto& a : c) atoms.push_back(atom_from_json(a));
    clauses.push_back(std::move(atoms));
  }
  return Reason::any_of(std::move(clauses));
}

namespace {

std::string_view combine_name(Combine op) {
  switch (op) {
    case Combine::Union: return "union";
    case Combine::Max: return "max";
    case Combine::Min: return "min";
  }
  return "union";
}

}  // namespace

Json to_json(const AttributeEquation& eq) {
  Json j = {{"target", eq.target}};
  std::visit(
      [&](const auto& rhs) {
        using T = std::decay_t<decltype(rhs)>;
        if constexpr (std::is_same_v<T, ConstRhs>) {
          j["const"] = to_json(rhs.value);
        } else if constexpr (std::is_same_v<T, CopyRhs>) {
          j["copy"] = {{"slot", std::string(to_string(rhs.slot))}, {"attribute", rhs.attribute}};
        } else if constexpr (std::is_same_v<T, CombineRhs>) {
          j[std::string(combine_name(rhs.op))] = {rhs.left_attribute, rhs.right_attribute};
        } else {
          j["offset"] = {{"slot", std::string(to_string(rhs.slot))}, {"attribute", rhs.attribute}, {"delta", rhs.delta}};
        }
      },
      eq.rhs);
  return j;
}

AttributeEquation equation_from_json(const Json& json) {
  AttributeEquation eq;
  eq.target = require_string(json, "target", kEquation);
  if (auto it = json.find("const"); it != json.end()) {
    eq.rhs = ConstRhs{value_from_json(*it)};
  } else if (auto it = json.find("copy"); it != json.end()) {
    eq.rhs = CopyRhs{require_slot(*it, kEquation), require_string(*it, "attribute", kEquation)};
  } else if (auto it = json.find("offset"); it != json.end()) {
    eq.rhs = OffsetRhs{require_slot(*it, kEquation), require_string(*it, "attribute", kEquation),
                       require_int(*it, "delta", kEquation)};
  } else {
    bool found = false;
    for (auto op : {Combine::Union, Combine::Max, Combine::Min}) {
      auto it = json.find(combine_name(op));
      if (it == json.end()) continue;
      auto names = string_list(*it, kEquation);
      if (names.size() != 2) violation(kEquation, "combination takes two attribute names");
      eq.rhs = CombineRhs{op, names[0], names[1]};
      found = true;
      break;
    }
    if (!found) violation(kEquation, "equation for '" + eq.target + "' has no right-hand side");
  }
  return eq;
}

Json to_json(std::span<const AttributeEquation> eqs) {
  Json list = Json::array();
  for (const auto& e : eqs) list.push_back(to_json(e));
  return list;
}

std::vector<AttributeEquation> equations_from_json(const Json& json) {
  if (!json.is_array()) violation(kEquation, "equations must be a list");
  std::vector<AttributeEquation> out;
  for (const auto& e : json) out.push_back(equation_from_json(e));
  return out;
}

Json to_json(const LexicalCore& lc) {
  Json borrowed = Json::object();
  for (const auto& [color, edu] : lc.borrowed) borrowed[std::string(to_string(color))] = edu;
  return {{"green", lc.green}, {"red", lc.red}, {"blue", lc.blue}, {"edu", lc.edu_id}, {"borrowed", borrowed}};
}

LexicalCore lexical_core_from_json(const Json& json) {
  constexpr std::string_view what = "lexical core";
  LexicalCore lc;
  lc.green = require_string(json, "green", what);
  lc.red = require_string(json, "red", what);
  lc.blue = require_string(json, "blue", what);
  lc.edu_id = static_cast<int>(require_int(json, "edu", what));
  if (auto it = json.find("borrowed"); it != json.end()) {
    if (!it->is_object()) violation(what, "borrowed must be an object");
    for (const auto& [name, edu] : it->items()) {
      auto color = parse_color(name);
      if (!color || !edu.is_number_integer()) violation(what, "bad borrowed slot");
      lc.borrowed[*color] = edu.get<int>();
    }
  }
  return lc;
}

Json to_json(const Edu& edu) {
  Json j = {{"id", edu.id},
            {"text", edu.text},
            {"tokens", edu.tokens},
            {"punctuation", std::string(to_string(edu.terminal_punctuation))}};
  if (edu.sentence) j["sentence"] = *edu.sentence;
  if (edu.paragraph) j["paragraph"] = *edu.paragraph;
  return j;
}

Edu edu_from_json(const Json& json) {
  constexpr std::string_view what = "EDU";
  Edu edu;
  edu.id = static_cast<int>(require_int(json, "id", what));
  edu.text = require_string(json, "text", what);
  if (auto it = json.find("tokens"); it != json.end()) {
    edu.tokens = string_list(*it, what);
  } else {
    edu.tokens = tokenize(edu.text);
  }
  if (auto it = json.find("punctuation"); it != json.end()) {
    auto p = it->is_string() ? parse_punctuation(it->get<std::string>()) : std::nullopt;
    if (!p) violation(what, "unknown punctuation");
    edu.terminal_punctuation = *p;
  } else if (!edu.text.empty()) {
    edu.terminal_punctuation = punctuation_of(edu.text.back());
  }
  if (auto it = json.find("sentence"); it != json.end()) edu.sentence = it->get<int>();
  if (auto it = json.find("paragraph"); it != json.end()) edu.paragraph = it->get<int>();
  return edu;
}

Json to_json(const ArtrNode& node) {
  Json j = {{"dre", node.dre}, {"attributes", to_json(node.attributes)}};
  if (!node.is_leaf()) j["children"] = {to_json(*node.left), to_json(*node.right)};
  if (node.leaf) j["leaf"] = to_json(*node.leaf);
  if (node.rule) j["rule"] = *node.rule;
  return j;
}

NodePtr node_from_json(const Json& json) {
  auto node = std::make_shared<ArtrNode>();
  node->dre = require_string(json, "dre", kNode);
  node->attributes = attributes_from_json(require(json, "attributes", kNode));
  if (auto it = json.find("children"); it != json.end()) {
    if (!it->is_array() || it->size() != 2) violation(kNode, "internal nodes have exactly two children");
    node->left = node_from_json((*it)[0]);
    node->right = node_from_json((*it)[1]);
  }
  if (auto it = json.find("leaf"); it != json.end()) {
    if (!node->is_leaf()) violation(kNode, "a node cannot carry both children and a leaf payload");
    node->leaf = lexical_core_from_json(*it);
  } else if (node->is_leaf()) {
    violation(kNode, "leaf node '" + node->dre + "' lacks its lexical core");
  }
  if (auto it = json.find("rule"); it != json.end()) {
    if (!it->is_number_unsigned()) violation(kNode, "rule must be a production index");
    node->rule = it->get<std::size_t>();
  }
  return node;
}

Json to_json(const Artr& artr) {
  Json edus = Json::array();
  for (const auto& e : artr.edus) edus.push_back(to_json(e));
  return {{"text_id", artr.text_id}, {"edus", std::move(edus)}, {"root", artr.root ? to_json(*artr.root) : Json()}};
}

Artr artr_from_json(const Json& json) {
  constexpr std::string_view what = "ARTR";
  Artr artr;
  artr.text_id = require_string(json, "text_id", what);
  const auto& edus = require(json, "edus", what);
  if (!edus.is_array()) violation(what, "edus must be a list");
  for (const auto& e : edus) artr.edus.push_back(edu_from_json(e));
  const auto& root = require(json, "root", what);
  if (!root.is_null()) artr.root = node_from_json(root);
  return artr;
}

Json to_json(const Grammar& g) {
  Json productions = Json::array();
  for (const auto& p : g.productions) {
    productions.push_back({{"head", p.head},
                           {"reason", to_json(p.reason)},
                           {"equations", to_json(std::span<const AttributeEquation>(p.equations))},
                           {"roles", {std::string(to_string(p.left_role)), std::string(to_string(p.right_role))}},
                           {"left", p.left},
                           {"right", p.right},
                           {"weight", p.weight}});
  }
  Json precedences = Json::array();
  for (const auto& t : g.precedences) {
    precedences.push_back({{"left", t.key.left},
                           {"middle", t.key.middle},
                           {"lookahead", t.key.lookahead},
                           {"direction", std::string(to_string(t.direction))},
                           {"reason", to_json(t.reason)},
                           {"count", t.count},
                           {"probability", to_string(t.probability)}});
  }
  return {{"start", g.start},         {"dre", g.dre},
          {"dcp", g.dcp},             {"rre", g.rre},
          {"schema", to_json(g.schema)}, {"productions", std::move(productions)},
          {"precedences", std::move(precedences)}};
}

Grammar grammar_from_json(const Json& json) {
  Grammar g;
  g.start = require_string(json, "start", kGrammar);
  auto symbols = [&](std::string_view key) {
    auto list = string_list(require(json, key, kGrammar), kGrammar);
    return std::set<std::string>(list.begin(), list.end());
  };
  g.dre = symbols("dre");
  g.dcp = symbols("dcp");
  g.rre = symbols("rre");
  g.schema = schema_from_json(require(json, "schema", kGrammar));

  const auto& productions = require(json, "productions", kGrammar);
  if (!productions.is_array()) violation(kGrammar, "productions must be a list");
  for (const auto& p : productions) {
    ProductionRule rule;
    rule.head = require_string(p, "head", kGrammar);
    rule.reason = reason_from_json(require(p, "reason", kGrammar));
    rule.equations = equations_from_json(require(p, "equations", kGrammar));
    const auto& roles = require(p, "roles", kGrammar);
    if (!roles.is_array() || roles.size() != 2) violation(kGrammar, "roles must be a pair");
    rule.left_role = require_role(roles[0], kGrammar);
    rule.right_role = require_role(roles[1], kGrammar);
    rule.left = require_string(p, "left", kGrammar);
    rule.right = require_string(p, "right", kGrammar);
    rule.weight = require_positive(p, "weight", kGrammar);
    g.productions.push_back(std::move(rule));
  }

  const auto& precedences = require(json, "precedences", kGrammar);
  if (!precedences.is_array()) violation(kGrammar, "precedences must be a list");
  for (const auto& t : precedences) {
    PrecedenceTuple tuple;
    tuple.key = {require_string(t, "left", kGrammar), require_string(t, "middle", kGrammar),
                 require_string(t, "lookahead", kGrammar)};
    auto dir = parse_direction(require_string(t, "direction", kGrammar));
    if (!dir) violation(kGrammar, "direction must be shift or reduce");
    tuple.direction = *dir;
    tuple.reason = reason_from_json(require(t, "reason", kGrammar));
    tuple.count = require_positive(t, "count", kGrammar);
    try {
      tuple.probability = parse_rational(require_string(t, "probability", kGrammar));
    } catch (const Error& e) {
      violation(kGrammar, e.what());
    }
    g.precedences.push_back(std::move(tuple));
  }
  canonicalize(g);
  return g;
}

}  // namespace arsg::codec

namespace arsg {

std::string serialize_artr(const Artr& artr) { return codec::dump(codec::to_json(artr)); }

Artr deserialize_artr(std::string_view document) {
  return codec::artr_from_json(codec::parse(document, "ARTR document"));
}

std::string serialize_grammar(const Grammar& grammar) { return codec::dump(codec::to_json(grammar)); }

Grammar deserialize_grammar(std::string_view document) {
  return codec::grammar_from_json(codec::parse(document, "grammar document"));
}

}  // namespace arsg
