#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "arsg/dkb.hpp"
#include "arsg/grammar.hpp"

namespace arsg {

// dre renames grammar symbols (production symbols, precedence keys and the
// DRE/DCP sets); literal renames symbol values inside reasons and equation
// constants (and the RRE set); attribute renames schema entries wherever an
// attribute name appears.
enum class MappingClass { Dre, Literal, Attribute };
std::string_view to_string(MappingClass c);
std::optional<MappingClass> parse_mapping_class(std::string_view text);

struct ConceptMapping {
  std::map<std::string, std::string> dre;
  std::map<std::string, std::string> literal;
  std::map<std::string, std::string> attribute;

  bool empty() const { return dre.empty() && literal.empty() && attribute.empty(); }
  bool operator==(const ConceptMapping&) const = default;
};

// {"mappings": [{"source_id", "target_id", "class"}]}; a source listed twice
// in one class is a SchemaViolation.
ConceptMapping parse_mapping(std::string_view document);
std::string serialize_mapping(const ConceptMapping& mapping);

// h after f: the mapping equivalent to applying f, then h.
ConceptMapping compose(const ConceptMapping& f, const ConceptMapping& h);

struct TransferReport {
  std::size_t changed_productions = 0;
  std::size_t changed_attributes = 0;  // schema entries renamed
  std::size_t changed_precedences = 0;

  bool operator==(const TransferReport&) const = default;
};

struct TransferResult {
  Grammar grammar;
  TransferReport report;
};

// Throws NonInjectiveMapping when two sources share a target or a dre or
// attribute target collides with a symbol the mapping leaves in place, and
// DanglingTarget when a dre target is not a blue concept of `extension`.
TransferResult transfer_grammar(const Grammar& g, const ConceptMapping& mapping, const DomainKnowledgeBase& extension);

}  // namespace arsg
