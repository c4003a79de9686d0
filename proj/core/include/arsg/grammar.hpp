#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsg/attributes.hpp"
#include "arsg/equations.hpp"
#include "arsg/rational.hpp"
#include "arsg/reason.hpp"

namespace arsg {

// Lookahead symbol used when the input is exhausted.
inline constexpr std::string_view kEndSymbol = "<END>";

enum class Direction { Shift, Reduce };

std::string_view to_string(Direction d);  // "shift" / "reduce"
std::optional<Direction> parse_direction(std::string_view text);

// (ae): head(reason) <- left(left_role), right(right_role); weight
struct ProductionRule {
  std::string head;
  Reason reason;
  std::vector<AttributeEquation> equations;  // canonical order
  Role left_role = Role::Nucleus;
  Role right_role = Role::Satellite;
  std::string left;
  std::string right;
  std::uint64_t weight = 1;

  bool operator==(const ProductionRule&) const = default;
};

std::string to_string(const ProductionRule& rule);

struct PrecedenceKey {
  std::string left;
  std::string middle;
  std::string lookahead;  // a DRE symbol or kEndSymbol

  auto operator<=>(const PrecedenceKey&) const = default;
};

// (A, B, C, direction, reason, probability). `count` is the number of
// annotated decisions behind the tuple; probability is count over the total
// for the same key in both directions.
struct PrecedenceTuple {
  PrecedenceKey key;
  Direction direction = Direction::Shift;
  Reason reason;
  std::uint64_t count = 1;
  Rational probability{1};

  bool operator==(const PrecedenceTuple&) const = default;
};

// The seven-tuple (RS, DRE, DCP, RRE, PPR(AT), PF(AT), AT). Productions and
// precedences are kept in canonical order (see canonicalize), which keeps
// serialized grammars stable under diff and lets lookups binary-search.
struct Grammar {
  std::string start = "RS";
  std::set<std::string> dre;
  std::set<std::string> dcp;
  std::set<std::string> rre;
  AttributeSchema schema = AttributeSchema::standard();
  std::vector<ProductionRule> productions;
  std::vector<PrecedenceTuple> precedences;

  const PrecedenceTuple* find_precedence(const PrecedenceKey& key, Direction direction) const;

  // Contiguous run of tuples whose (left, middle) match.
  std::span<const PrecedenceTuple> precedences_for(std::string_view left, std::string_view middle) const;

  bool operator==(const Grammar&) const = default;
};

// Sorts productions by (left, right, head, roles, weight descending,
// equations, reason) and precedences by (key, direction); canonicalizes every
// equation list.
void canonicalize(Grammar& grammar);

struct Diagnostic {
  std::string invariant;
  std::string element;

  bool operator==(const Diagnostic&) const = default;
};

// Empty iff every grammar invariant holds.
std::vector<Diagnostic> validate_grammar(const Grammar& grammar);

// Grammar document (JSON). Output order is canonical; reading throws
// SchemaViolation on malformed input and canonicalizes what it reads.
std::string serialize_grammar(const Grammar& grammar);
Grammar deserialize_grammar(std::string_view document);

}  // namespace arsg
