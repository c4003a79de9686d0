#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arsg/grammar.hpp"
#include "arsg/learner.hpp"
#include "arsg/parser.hpp"
#include "arsg/stack_machine.hpp"
#include "arsg/textprep.hpp"

namespace arsg {

enum class SessionStatus { Open, Finalized, Abandoned };
std::string_view to_string(SessionStatus s);

// What the annotator fills in for a reduction. Missing roles or relation make
// the request incomplete; `happy`, when given, becomes a constant equation.
struct ReduceRequest {
  std::string head;
  std::optional<Role> left_role;
  std::optional<Role> right_role;
  std::optional<std::string> rre;
  std::optional<std::int64_t> happy;
  std::vector<AttributeEquation> equations;  // extra equations; override the automatic ones by target
};

struct SessionOptions {
  AttributeSchema schema = AttributeSchema::standard();
  std::set<std::string> rre_labels;         // accepted relations; empty accepts any
  std::set<std::string> heads;              // accepted parent symbols; empty accepts any
  std::shared_ptr<const Grammar> grammar;   // source of suggested actions
  ParseConfig hint_config;
};

struct LegalActions {
  bool shift = false;
  bool reduce = false;
  bool undo = false;
  bool finalize = false;
};

// One interactive annotation of one text. The session state is always the
// replay of its events over the basic trees.
class AnnotationSession {
 public:
  AnnotationSession(std::string id, std::string text_id, std::vector<Edu> edus, std::vector<NodePtr> leaves,
                    SessionOptions options = {});

  // Segmented text plus knowledge base. Throws NoLexicalCores.
  static AnnotationSession create(std::string id, std::string text_id, std::vector<Edu> edus,
                                  const DomainKnowledgeBase& dkb, const CueLexicon& cues,
                                  std::span<const LeafOverride> overrides = {}, SessionOptions options = {});

  const std::string& id() const { return id_; }
  const std::string& text_id() const { return text_id_; }
  const std::vector<Edu>& edus() const { return edus_; }
  const std::vector<NodePtr>& leaves() const { return machine_.input(); }
  const StackMachine& machine() const { return machine_; }
  const std::vector<DecisionEvent>& events() const { return events_; }
  SessionStatus status() const { return status_; }

  LegalActions legal_actions() const;
  std::optional<Direction> hint() const;

  // Throw SessionClosed unless open; IllegalShift / IncompleteReduce on bad
  // decisions; NothingToUndo; NotReducedToRoot.
  void shift();
  void reduce(const ReduceRequest& request);
  void undo();
  AnnotationLog finalize();
  void abandon();

  // Events so far; root is set once finalized.
  AnnotationLog log() const;

  // The equations a reduction request expands to.
  static std::vector<AttributeEquation> reduce_equations(const ReduceRequest& request);

 private:
  void require_open() const;
  DecisionEvent capture(Direction kind) const;
  void apply(const DecisionEvent& event);

  std::string id_;
  std::string text_id_;
  std::vector<Edu> edus_;
  SessionOptions options_;
  StackMachine machine_;
  std::vector<DecisionEvent> events_;
  SessionStatus status_ = SessionStatus::Open;
};

}  // namespace arsg
