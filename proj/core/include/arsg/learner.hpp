#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsg/artr.hpp"
#include "arsg/grammar.hpp"

namespace arsg {

// Payload of a reduction: the parent symbol, the child roles, the rhetorical
// relation and every equation that was applied (including the automatic ones).
struct ReduceDecision {
  std::string head;
  Role left_role = Role::Nucleus;
  Role right_role = Role::Satellite;
  std::string rre;
  std::vector<AttributeEquation> equations;

  bool operator==(const ReduceDecision&) const = default;
};

// One shift or reduce decision with the context it was taken in.
struct DecisionEvent {
  Direction kind = Direction::Shift;
  PrecedenceKey context;
  AttributeMap left;
  AttributeMap right;
  std::optional<AttributeMap> lookahead;  // absent at end of input
  std::optional<ReduceDecision> reduce;   // set iff kind is Reduce
  std::optional<Direction> hint;          // grammar suggestion shown when the decision was taken

  bool operator==(const DecisionEvent&) const = default;
};

// Replayable record of one annotated text: its basic trees, the decisions in
// order and the tree they produced.
struct AnnotationLog {
  std::string text_id;
  std::vector<Edu> edus;
  std::vector<NodePtr> leaves;
  std::vector<DecisionEvent> events;
  NodePtr root;
};

std::string serialize_log(const AnnotationLog& log);
AnnotationLog deserialize_log(std::string_view document);

// Re-runs the events over the leaves and returns the resulting root. Throws
// ReplayMismatch when an event's recorded context differs from the replayed
// one, when a decision is impossible, or when the result differs from
// `log.root`.
NodePtr replay(const AnnotationLog& log, const AttributeSchema& schema = AttributeSchema::standard());

struct PrecedenceInstance {
  PrecedenceKey key;
  Direction direction = Direction::Shift;
  Reason reason;

  bool operator==(const PrecedenceInstance&) const = default;
};

// A rule instance is a production of weight 1 with a single-clause reason.
using RuleInstance = ProductionRule;

struct InstanceOptions {
  std::vector<std::string> reason_attributes{"cue", "happy", "punctuation"};       // slf / rlf
  std::vector<std::string> rule_reason_attributes{"cue", "happy", "punctuation"};  // Lf; empty gives True
  AttributeSchema schema = AttributeSchema::standard();
};

struct Instances {
  std::vector<RuleInstance> rules;
  std::vector<PrecedenceInstance> precedences;
};

// Equality atoms describing the named attributes of each slot in `slots`.
// `happy` becomes a sign test; unset attributes contribute no atom.
Conjunction describe_context(const ParseContext& ctx, std::span<const Slot> slots,
                             std::span<const std::string> attributes, const AttributeSchema& schema);

Instances instances_from_log(const AnnotationLog& log, const InstanceOptions& options = {});

// Groups by (A, B, C); each direction becomes one tuple whose reason is the
// disjunction of its members and whose probability is its share of the group.
std::vector<PrecedenceTuple> synthesize_precedence(std::span<const PrecedenceInstance> instances);

// Merges instances that agree on head, children, roles and equations. The
// merged reason is the disjunction of the members' reasons and the weight is
// the sum of their weights.
std::vector<ProductionRule> cluster_rules(std::span<const RuleInstance> instances);

struct SymbolSets {
  std::set<std::string> dre;
  std::set<std::string> dcp;
  std::set<std::string> rre;
};

// DRE: every node symbol; DCP: every lexical-core concept; RRE: every rre
// label assigned by a reduction.
SymbolSets infer_symbols(std::span<const AnnotationLog> logs);

struct LearnOptions {
  InstanceOptions instances;
  std::optional<SymbolSets> symbols;  // inferred from the logs when absent
};

// Throws ReplayMismatch, UnknownSymbol (a log symbol outside the supplied
// sets) or InvalidGrammar (the result fails validation).
Grammar learn(std::span<const AnnotationLog> logs, const LearnOptions& options = {});

}  // namespace arsg
