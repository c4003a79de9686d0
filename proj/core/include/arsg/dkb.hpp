#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arsg {

// Agents, influence factors and dynamics of a domain. Blue concepts double as
// the domain relations (grammar non-terminals).
enum class Color { Green, Red, Blue };

std::string_view to_string(Color color);
std::optional<Color> parse_color(std::string_view text);

struct Concept {
  std::string id;
  Color color = Color::Green;
  std::vector<std::string> surface_forms;
  int level = 1;
  std::optional<std::string> parent;
  int polarity = 0;  // blue concepts only; seeds the `happy` attribute

  bool operator==(const Concept&) const = default;
};

struct ConceptMatch {
  std::size_t begin = 0;  // token span [begin, end)
  std::size_t end = 0;
  std::string concept_id;

  bool operator==(const ConceptMatch&) const = default;
};

struct ColorCounts {
  std::size_t green = 0;
  std::size_t red = 0;
  std::size_t blue = 0;

  bool operator==(const ColorCounts&) const = default;
};

// Lowercases ASCII, splits on whitespace, emits . , ; : ! ? ( ) " [ ] as
// single-character tokens and splits a trailing possessive 's. Used for both
// surface forms and clause text so matching stays consistent.
std::vector<std::string> tokenize(std::string_view text);

// Three colored concept forests with a surface-form index. Immutable once
// constructed; the constructor enforces every structural invariant.
class DomainKnowledgeBase {
 public:
  DomainKnowledgeBase() = default;

  // Throws DuplicateId, CycleDetected, ColorMismatch, BadPolarity,
  // InvalidConcept (empty form, unknown parent, level break) or DuplicateForm
  // (one surface form naming two concepts of the same color).
  DomainKnowledgeBase(std::string domain_name, std::vector<Concept> concepts);

  const std::string& domain_name() const { return domain_name_; }
  const std::vector<Concept>& concepts() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }
  const Concept* find(std::string_view id) const;

  ColorCounts counts() const;
  int height(Color color) const;  // deepest level, 0 for an empty forest

  // Greedy longest match, left to right, restricted to one color. Matches
  // never overlap.
  std::vector<ConceptMatch> lookup(std::span<const std::string> tokens, Color color) const;

  bool operator==(const DomainKnowledgeBase& other) const {
    return domain_name_ == other.domain_name_ && concepts_ == other.concepts_;
  }

 private:
  struct FormIndex {
    std::map<std::vector<std::string>, std::string> forms;
    std::size_t longest = 0;
  };

  const FormIndex& index_for(Color color) const { return index_[static_cast<int>(color)]; }

  std::string domain_name_;
  std::vector<Concept> concepts_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  FormIndex index_[3];
};

// Concept file: {"domain": name, "concepts": [{id, color, forms, level,
// parent?, polarity?}]}. Throws SchemaViolation on malformed documents.
std::vector<Concept> parse_concepts(std::string_view document, std::string* domain_name = nullptr);
DomainKnowledgeBase load_dkb(std::string_view document);
std::string serialize_dkb(const DomainKnowledgeBase& dkb);

struct ExtendResult {
  DomainKnowledgeBase dkb;
  ColorCounts added;
};

// Merges additions into a copy of `dkb`. Re-adding an identical concept is a
// no-op; the same id with different fields throws ConflictingRedefinition.
ExtendResult extend_dkb(const DomainKnowledgeBase& dkb, std::span<const Concept> additions);

}  // namespace arsg
