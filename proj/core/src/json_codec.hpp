#pragma once

// JSON encodings shared by every document format. Internal to the core
// library; public headers expose string-based read/write functions only.

#include <string>
#include <string_view>

#include <json.hpp>

#include "arsg/artr.hpp"
#include "arsg/attributes.hpp"
#include "arsg/equations.hpp"
#include "arsg/grammar.hpp"
#include "arsg/reason.hpp"
#include "arsg/text.hpp"

namespace arsg::codec {

// std::map-backed objects: keys are emitted sorted, so dumps are canonical.
using Json = nlohmann::json;

Json parse(std::string_view document, std::string_view what);
std::string dump(const Json& json);  // two-space indent, trailing newline

const Json& require(const Json& object, std::string_view key, std::string_view what);
std::string require_string(const Json& object, std::string_view key, std::string_view what);
std::int64_t require_int(const Json& object, std::string_view key, std::string_view what);
[[noreturn]] void violation(std::string_view what, std::string_view detail);

Json to_json(const Value& value);
Value value_from_json(const Json& json);

Json to_json(const AttributeMap& map);
AttributeMap attributes_from_json(const Json& json);

Json to_json(const AttributeSchema& schema);
AttributeSchema schema_from_json(const Json& json);

Json to_json(const ReasonAtom& atom);
ReasonAtom atom_from_json(const Json& json);
Json to_json(const Reason& reason);
Reason reason_from_json(const Json& json);

Json to_json(const AttributeEquation& eq);
AttributeEquation equation_from_json(const Json& json);
Json to_json(std::span<const AttributeEquation> eqs);
std::vector<AttributeEquation> equations_from_json(const Json& json);

Json to_json(const LexicalCore& lc);
LexicalCore lexical_core_from_json(const Json& json);

Json to_json(const Edu& edu);
Edu edu_from_json(const Json& json);

Json to_json(const ArtrNode& node);
NodePtr node_from_json(const Json& json);

Json to_json(const Artr& artr);
Artr artr_from_json(const Json& json);

Json to_json(const Grammar& grammar);
Grammar grammar_from_json(const Json& json);

}  // namespace arsg::codec
