#include "arsg/annotation.hpp"

#include <algorithm>

#include "arsg/error.hpp"

namespace arsg {

std::string_view to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Open: return "open";
    case SessionStatus::Finalized: return "finalized";
    case SessionStatus::Abandoned: return "abandoned";
  }
  return "open";
}

AnnotationSession::AnnotationSession(std::string id, std::string text_id, std::vector<Edu> edus,
                                     std::vector<NodePtr> leaves, SessionOptions options)
    : id_(std::move(id)),
      text_id_(std::move(text_id)),
      edus_(std::move(edus)),
      options_(std::move(options)),
      machine_(std::move(leaves)) {
  if (machine_.input().empty()) throw Error(ErrorCode::NoLexicalCores, "text '" + text_id_ + "' has no lexical cores");
}

AnnotationSession AnnotationSession::create(std::string id, std::string text_id, std::vector<Edu> edus,
                                            const DomainKnowledgeBase& dkb, const CueLexicon& cues,
                                            std::span<const LeafOverride> overrides, SessionOptions options) {
  auto prepared = prepare_text(std::move(edus), dkb, cues, overrides);
  std::vector<NodePtr> leaves;
  for (const auto& t : prepared.trees) leaves.push_back(t.node());
  return AnnotationSession(std::move(id), std::move(text_id), std::move(prepared.edus), std::move(leaves),
                           std::move(options));
}

LegalActions AnnotationSession::legal_actions() const {
  LegalActions a;
  const bool open = status_ == SessionStatus::Open;
  a.shift = open && machine_.can_decide() && machine_.remaining() > 0;
  a.reduce = open && machine_.can_decide();
  a.undo = open && !events_.empty();
  a.finalize = open && machine_.done();
  return a;
}

std::optional<Direction> AnnotationSession::hint() const {
  if (!options_.grammar || status_ != SessionStatus::Open || !machine_.can_decide()) return std::nullopt;
  try {
    const NodePtr* c = machine_.lookahead();
    return decide_action(*options_.grammar, *machine_.left(), *machine_.right(), c ? c->get() : nullptr,
                         options_.hint_config)
        .action();
  } catch (const Error&) {
    return std::nullopt;
  }
}

void AnnotationSession::require_open() const {
  if (status_ != SessionStatus::Open) {
    throw Error(ErrorCode::SessionClosed, "session '" + id_ + "' is " + std::string(to_string(status_)));
  }
}

DecisionEvent AnnotationSession::capture(Direction kind) const {
  DecisionEvent e;
  e.kind = kind;
  e.context = machine_.key();
  e.left = machine_.left()->attributes;
  e.right = machine_.right()->attributes;
  if (const NodePtr* c = machine_.lookahead()) e.lookahead = (*c)->attributes;
  e.hint = hint();
  return e;
}

void AnnotationSession::apply(const DecisionEvent& e) {
  if (e.kind == Direction::Shift) {
    machine_.shift();
  } else {
    const auto& r = *e.reduce;
    machine_.reduce(r.head, r.left_role, r.right_role, r.equations, options_.schema);
  }
}

void AnnotationSession::shift() {
  require_open();
  if (!machine_.can_decide() || machine_.remaining() == 0) throw Error(ErrorCode::IllegalShift, "input is empty");
  auto e = capture(Direction::Shift);
  apply(e);
  events_.push_back(std::move(e));
}

std::vector<AttributeEquation> AnnotationSession::reduce_equations(const ReduceRequest& request) {
  std::vector<AttributeEquation> eqs = request.equations;
  auto add = [&](AttributeEquation eq) {
    bool given = std::any_of(eqs.begin(), eqs.end(), [&](const AttributeEquation& e) { return e.target == eq.target; });
    if (!given) eqs.push_back(std::move(eq));
  };
  add(cue_union_equation());
  add({std::string(attr::punctuation), CopyRhs{Slot::Right, std::string(attr::punctuation)}});
  if (request.rre) add({std::string(attr::rre), ConstRhs{*request.rre}});
  if (request.happy) add({std::string(attr::happy), ConstRhs{*request.happy}});
  return canonical_equations(std::move(eqs));
}

void AnnotationSession::reduce(const ReduceRequest& request) {
  require_open();
  auto incomplete = [](const std::string& why) { throw Error(ErrorCode::IncompleteReduce, why); };
  if (!machine_.can_decide()) incomplete("reduction needs two stack nodes");
  if (request.head.empty()) incomplete("head symbol missing");
  if (!request.left_role || !request.right_role) incomplete("roles missing");
  if (*request.left_role == Role::Satellite && *request.right_role == Role::Satellite) {
    incomplete("roles (S,S) are not allowed");
  }
  if (!request.rre || request.rre->empty()) incomplete("rhetorical relation missing");
  if (!options_.rre_labels.empty() && !options_.rre_labels.count(*request.rre)) {
    incomplete("relation '" + *request.rre + "' is not in the grammar's RRE set");
  }
  if (!options_.heads.empty() && !options_.heads.count(request.head)) {
    incomplete("head '" + request.head + "' is not a domain relation");
  }
  if (request.happy && (*request.happy < -1 || *request.happy > 1)) incomplete("happy must be -1, 0 or 1");

  auto e = capture(Direction::Reduce);
  e.reduce = ReduceDecision{request.head, *request.left_role, *request.right_role, *request.rre,
                            reduce_equations(request)};
  const auto before = machine_.state();
  try {
    apply(e);
  } catch (const Error& err) {
    machine_.restore(before);
    incomplete(std::string("equations cannot be applied: ") + err.what());
  }
  events_.push_back(std::move(e));
}

void AnnotationSession::undo() {
  require_open();
  if (events_.empty()) throw Error(ErrorCode::NothingToUndo, "no decision to undo");
  events_.pop_back();
  machine_ = StackMachine(machine_.input());
  for (const auto& e : events_) apply(e);
}

AnnotationLog AnnotationSession::finalize() {
  require_open();
  if (!machine_.done()) {
    throw Error(ErrorCode::NotReducedToRoot, "stack holds " + std::to_string(machine_.stack().size()) +
                                                 " nodes with " + std::to_string(machine_.remaining()) + " unread");
  }
  status_ = SessionStatus::Finalized;
  auto result = log();
  replay(result, options_.schema);
  return result;
}

void AnnotationSession::abandon() {
  require_open();
  status_ = SessionStatus::Abandoned;
}

AnnotationLog AnnotationSession::log() const {
  AnnotationLog out;
  out.text_id = text_id_;
  out.edus = edus_;
  out.leaves = machine_.input();
  out.events = events_;
  if (status_ == SessionStatus::Finalized) out.root = machine_.stack().front();
  return out;
}

}  // namespace arsg
