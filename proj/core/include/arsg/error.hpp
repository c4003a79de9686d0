#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arsg {

// Machine-readable failure categories. The names double as the error codes
// reported by the CLI and the annotation service.
enum class ErrorCode {
  // knowledge base
  DuplicateId,
  CycleDetected,
  ColorMismatch,
  BadPolarity,
  InvalidConcept,
  DuplicateForm,
  ConflictingRedefinition,
  // text preparation
  EmptyInput,
  UnknownConcept,
  // attributes, reasons, equations, documents
  SchemaMismatch,
  KindMismatch,
  UnsetSource,
  SchemaViolation,
  // learning
  ReplayMismatch,
  UnknownSymbol,
  InvalidGrammar,
  // parsing
  NoApplicableRule,
  NoAction,
  ParseFailure,
  // summarization
  MalformedTree,
  BadRequest,
  // evaluation
  LeafMismatch,
  EmptyReference,
  // transfer
  DanglingTarget,
  RoleSchemaBreak,
  NonInjectiveMapping,
  // annotation sessions
  NoLexicalCores,
  IllegalShift,
  IncompleteReduce,
  SessionClosed,
  NothingToUndo,
  NotReducedToRoot,
  SessionNotFound,
  Unauthorized,
  // filesystem
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arsg
