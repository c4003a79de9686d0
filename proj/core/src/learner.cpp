#include "arsg/learner.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <tuple>

#include "arsg/error.hpp"
#include "arsg/stack_machine.hpp"
#include "json_codec.hpp"

namespace arsg {

namespace {

constexpr std::string_view kLog = "annotation log";

[[noreturn]] void mismatch(const AnnotationLog& log, std::size_t event, const std::string& detail) {
  throw Error(ErrorCode::ReplayMismatch,
              "log '" + log.text_id + "' event " + std::to_string(event) + ": " + detail);
}

codec::Json event_to_json(const DecisionEvent& e) {
  codec::Json attrs = {{"left", codec::to_json(e.left)}, {"right", codec::to_json(e.right)}};
  if (e.lookahead) attrs["lookahead"] = codec::to_json(*e.lookahead);
  codec::Json j = {{"kind", std::string(to_string(e.kind))},
                   {"context", {{"left", e.context.left}, {"right", e.context.middle}, {"lookahead", e.context.lookahead}}},
                   {"attributes", std::move(attrs)}};
  if (e.reduce) {
    j["reduce"] = {{"head", e.reduce->head},
                   {"roles", {std::string(to_string(e.reduce->left_role)), std::string(to_string(e.reduce->right_role))}},
                   {"rre", e.reduce->rre},
                   {"equations", codec::to_json(std::span<const AttributeEquation>(e.reduce->equations))}};
  }
  if (e.hint) j["hint"] = std::string(to_string(*e.hint));
  return j;
}

Role role_from(const codec::Json& j) {
  auto r = j.is_string() ? parse_role(j.get<std::string>()) : std::nullopt;
  if (!r) codec::violation(kLog, "role must be N or S");
  return *r;
}

DecisionEvent event_from_json(const codec::Json& j) {
  DecisionEvent e;
  auto kind = parse_direction(codec::require_string(j, "kind", kLog));
  if (!kind) codec::violation(kLog, "event kind must be shift or reduce");
  e.kind = *kind;
  const auto& ctx = codec::require(j, "context", kLog);
  e.context = {codec::require_string(ctx, "left", kLog), codec::require_string(ctx, "right", kLog),
               codec::require_string(ctx, "lookahead", kLog)};
  const auto& attrs = codec::require(j, "attributes", kLog);
  e.left = codec::attributes_from_json(codec::require(attrs, "left", kLog));
  e.right = codec::attributes_from_json(codec::require(attrs, "right", kLog));
  if (auto it = attrs.find("lookahead"); it != attrs.end()) e.lookahead = codec::attributes_from_json(*it);
  if (auto it = j.find("reduce"); it != j.end()) {
    ReduceDecision r;
    r.head = codec::require_string(*it, "head", kLog);
    const auto& roles = codec::require(*it, "roles", kLog);
    if (!roles.is_array() || roles.size() != 2) codec::violation(kLog, "roles must be a pair");
    r.left_role = role_from(roles[0]);
    r.right_role = role_from(roles[1]);
    r.rre = codec::require_string(*it, "rre", kLog);
    r.equations = codec::equations_from_json(codec::require(*it, "equations", kLog));
    e.reduce = std::move(r);
  }
  if ((e.kind == Direction::Reduce) != e.reduce.has_value()) {
    codec::violation(kLog, "reduce events carry a reduce payload and shift events none");
  }
  if (auto it = j.find("hint"); it != j.end()) {
    auto hint = it->is_string() ? parse_direction(it->get<std::string>()) : std::nullopt;
    if (!hint) codec::violation(kLog, "hint must be shift or reduce");
    e.hint = *hint;
  }
  return e;
}

}  // namespace

std::string serialize_log(const AnnotationLog& log) {
  codec::Json edus = codec::Json::array();
  for (const auto& e : log.edus) edus.push_back(codec::to_json(e));
  codec::Json leaves = codec::Json::array();
  for (const auto& l : log.leaves) leaves.push_back(codec::to_json(*l));
  codec::Json events = codec::Json::array();
  for (const auto& e : log.events) events.push_back(event_to_json(e));
  return codec::dump({{"text_id", log.text_id},
                      {"edus", std::move(edus)},
                      {"leaves", std::move(leaves)},
                      {"events", std::move(events)},
                      {"root", log.root ? codec::to_json(*log.root) : codec::Json()}});
}

AnnotationLog deserialize_log(std::string_view document) {
  auto j = codec::parse(document, kLog);
  AnnotationLog log;
  log.text_id = codec::require_string(j, "text_id", kLog);
  for (const auto& e : codec::require(j, "edus", kLog)) log.edus.push_back(codec::edu_from_json(e));
  for (const auto& l : codec::require(j, "leaves", kLog)) {
    auto node = codec::node_from_json(l);
    if (!node->is_leaf()) codec::violation(kLog, "leaves must be basic trees");
    log.leaves.push_back(std::move(node));
  }
  for (const auto& e : codec::require(j, "events", kLog)) log.events.push_back(event_from_json(e));
  const auto& root = codec::require(j, "root", kLog);
  if (!root.is_null()) log.root = codec::node_from_json(root);
  return log;
}

NodePtr replay(const AnnotationLog& log, const AttributeSchema& schema) {
  StackMachine machine(log.leaves);
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const auto& e = log.events[i];
    if (!machine.can_decide()) mismatch(log, i, "no decision is possible with fewer than two stack nodes");
    if (machine.key() != e.context) mismatch(log, i, "context symbols differ");
    const NodePtr* c = machine.lookahead();
    if (machine.left()->attributes != e.left || machine.right()->attributes != e.right ||
        (c != nullptr) != e.lookahead.has_value() || (c && (*c)->attributes != *e.lookahead)) {
      mismatch(log, i, "context attributes differ");
    }
    try {
      if (e.kind == Direction::Shift) {
        machine.shift();
      } else {
        const auto& r = *e.reduce;
        machine.reduce(r.head, r.left_role, r.right_role, r.equations, schema);
      }
    } catch (const Error& err) {
      mismatch(log, i, err.what());
    }
  }
  if (!machine.done()) mismatch(log, log.events.size(), "events do not reduce the text to a single tree");
  const NodePtr& result = machine.stack().front();
  if (!log.root || !same_tree(*result, *log.root)) mismatch(log, log.events.size(), "replayed tree differs from the stored one");
  return result;
}

Conjunction describe_context(const ParseContext& ctx, std::span<const Slot> slots,
                             std::span<const std::string> attributes, const AttributeSchema& schema) {
  Conjunction atoms;
  for (Slot slot : slots) {
    const AttributeMap* map = slot == Slot::Left ? ctx.left : slot == Slot::Right ? ctx.right : ctx.lookahead;
    if (!map) continue;
    for (const auto& name : attributes) {
      const Value* v = map->get(name);
      if (!v) continue;
      const auto* spec = schema.find(name);
      if (!spec || spec->kind != kind_of(*v)) {
        throw Error(ErrorCode::SchemaMismatch, "attribute '" + name + "' does not match the schema");
      }
      if (name == attr::happy) {
        auto h = std::get<std::int64_t>(*v);
        atoms.push_back({slot, name, h > 0 ? CompareOp::Gt : h < 0 ? CompareOp::Lt : CompareOp::Eq, Value{std::int64_t{0}}});
      } else {
        atoms.push_back({slot, name, spec->kind == AttrKind::StringSet ? CompareOp::SetEq : CompareOp::Eq, *v});
      }
    }
  }
  return atoms;
}

Instances instances_from_log(const AnnotationLog& log, const InstanceOptions& options) {
  replay(log, options.schema);
  static constexpr std::array kPrecedenceSlots{Slot::Left, Slot::Right, Slot::Lookahead};
  static constexpr std::array kRuleSlots{Slot::Left, Slot::Right};
  Instances out;
  for (const auto& e : log.events) {
    ParseContext ctx{&e.left, &e.right, e.lookahead ? &*e.lookahead : nullptr};
    out.precedences.push_back(
        {e.context, e.kind,
         Reason::conjunction(describe_context(ctx, kPrecedenceSlots, options.reason_attributes, options.schema))});
    if (e.kind != Direction::Reduce) continue;
    const auto& r = *e.reduce;
    RuleInstance rule;
    rule.head = r.head;
    rule.reason = Reason::conjunction(describe_context(ctx, kRuleSlots, options.rule_reason_attributes, options.schema));
    rule.equations = canonical_equations(r.equations);
    rule.left_role = r.left_role;
    rule.right_role = r.right_role;
    rule.left = e.context.left;
    rule.right = e.context.middle;
    rule.weight = 1;
    out.rules.push_back(std::move(rule));
  }
  return out;
}

std::vector<PrecedenceTuple> synthesize_precedence(std::span<const PrecedenceInstance> instances) {
  struct Side {
    std::uint64_t count = 0;
    std::optional<Reason> reason;
  };
  std::map<PrecedenceKey, std::array<Side, 2>> groups;
  for (const auto& inst : instances) {
    auto& side = groups[inst.key][inst.direction == Direction::Shift ? 0 : 1];
    ++side.count;
    side.reason = side.reason ? side.reason->disjoin(inst.reason) : inst.reason;
  }
  std::vector<PrecedenceTuple> out;
  for (const auto& [key, sides] : groups) {
    const auto total = static_cast<std::int64_t>(sides[0].count + sides[1].count);
    for (int d = 0; d < 2; ++d) {
      if (sides[d].count == 0) continue;
      out.push_back({key, d == 0 ? Direction::Shift : Direction::Reduce, *sides[d].reason, sides[d].count,
                     Rational(static_cast<std::int64_t>(sides[d].count), total)});
    }
  }
  return out;
}

std::vector<ProductionRule> cluster_rules(std::span<const RuleInstance> instances) {
  using Key = std::tuple<std::string, std::string, std::string, Role, Role, std::vector<AttributeEquation>>;
  std::map<Key, ProductionRule> clusters;
  for (const auto& inst : instances) {
    auto equations = canonical_equations(inst.equations);
    Key key{inst.head, inst.left, inst.right, inst.left_role, inst.right_role, equations};
    auto [it, fresh] = clusters.try_emplace(std::move(key), inst);
    if (fresh) {
      it->second.equations = std::move(equations);
    } else {
      it->second.reason = it->second.reason.disjoin(inst.reason);
      it->second.weight += inst.weight;
    }
  }
  std::vector<ProductionRule> out;
  out.reserve(clusters.size());
  for (auto& [key, rule] : clusters) out.push_back(std::move(rule));
  return out;
}

SymbolSets infer_symbols(std::span<const AnnotationLog> logs) {
  SymbolSets s;
  std::function<void(const ArtrNode&)> visit = [&](const ArtrNode& n) {
    s.dre.insert(n.dre);
    if (n.leaf) s.dcp.insert({n.leaf->green, n.leaf->red, n.leaf->blue});
    if (const auto* label = n.attributes.get_as<std::string>(attr::rre)) s.rre.insert(*label);
    if (n.left) visit(*n.left);
    if (n.right) visit(*n.right);
  };
  for (const auto& log : logs) {
    for (const auto& leaf : log.leaves) visit(*leaf);
    if (log.root) visit(*log.root);
    for (const auto& e : log.events) {
      if (!e.reduce) continue;
      s.dre.insert(e.reduce->head);
      s.rre.insert(e.reduce->rre);
    }
  }
  return s;
}

Grammar learn(std::span<const AnnotationLog> logs, const LearnOptions& options) {
  std::vector<RuleInstance> rules;
  std::vector<PrecedenceInstance> precedences;
  for (const auto& log : logs) {
    auto inst = instances_from_log(log, options.instances);
    rules.insert(rules.end(), inst.rules.begin(), inst.rules.end());
    precedences.insert(precedences.end(), inst.precedences.begin(), inst.precedences.end());
  }

  Grammar g;
  g.schema = options.instances.schema;
  auto inferred = infer_symbols(logs);
  if (options.symbols) {
    auto check = [](const std::set<std::string>& used, const std::set<std::string>& allowed, std::string_view what) {
      for (const auto& s : used) {
        if (!allowed.count(s)) {
          throw Error(ErrorCode::UnknownSymbol, std::string(what) + " symbol '" + s + "' is not in the supplied set");
        }
      }
    };
    check(inferred.dre, options.symbols->dre, "DRE");
    check(inferred.dcp, options.symbols->dcp, "DCP");
    check(inferred.rre, options.symbols->rre, "RRE");
    inferred = *options.symbols;
  }
  g.dre = std::move(inferred.dre);
  g.dcp = std::move(inferred.dcp);
  g.rre = std::move(inferred.rre);
  g.productions = cluster_rules(rules);
  g.precedences = synthesize_precedence(precedences);
  canonicalize(g);
  if (auto diagnostics = validate_grammar(g); !diagnostics.empty()) {
    throw Error(ErrorCode::InvalidGrammar, diagnostics.front().invariant + ": " + diagnostics.front().element);
  }
  return g;
}

}  // namespace arsg
