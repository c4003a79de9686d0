#include "arsg/error.hpp"

namespace arsg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::ColorMismatch: return "ColorMismatch";
    case ErrorCode::BadPolarity: return "BadPolarity";
    case ErrorCode::InvalidConcept: return "InvalidConcept";
    case ErrorCode::DuplicateForm: return "DuplicateForm";
    case ErrorCode::ConflictingRedefinition: return "ConflictingRedefinition";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnknownConcept: return "UnknownConcept";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::UnsetSource: return "UnsetSource";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::InvalidGrammar: return "InvalidGrammar";
    case ErrorCode::NoApplicableRule: return "NoApplicableRule";
    case ErrorCode::NoAction: return "NoAction";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::LeafMismatch: return "LeafMismatch";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::DanglingTarget: return "DanglingTarget";
    case ErrorCode::RoleSchemaBreak: return "RoleSchemaBreak";
    case ErrorCode::NonInjectiveMapping: return "NonInjectiveMapping";
    case ErrorCode::NoLexicalCores: return "NoLexicalCores";
    case ErrorCode::IllegalShift: return "IllegalShift";
    case ErrorCode::IncompleteReduce: return "IncompleteReduce";
    case ErrorCode::SessionClosed: return "SessionClosed";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::NotReducedToRoot: return "NotReducedToRoot";
    case ErrorCode::SessionNotFound: return "SessionNotFound";
    case ErrorCode::Unauthorized: return "Unauthorized";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace arsg
