#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsg/artr.hpp"
#include "arsg/attributes.hpp"
#include "arsg/dkb.hpp"
#include "arsg/text.hpp"

namespace arsg {

enum class SegmentMode {
  Punctuation,  // split after any delimiter character
  Lines,        // one EDU per non-blank line
  Markers,      // split at inline clause markers such as "(C3)"
};

struct SegmentationConfig {
  SegmentMode mode = SegmentMode::Punctuation;
  std::string delimiters = ",.;?!";
  std::string marker_pattern = R"(\(C\d+\))";
};

// Throws EmptyInput when the text holds nothing but whitespace. Sentence
// ordinals are assigned by counting EDUs that end in . ? or !.
std::vector<Edu> segment(std::string_view raw_text, const SegmentationConfig& config = {});

// Pre-segmented corpus: one EDU per line, a blank line between texts.
std::vector<std::vector<Edu>> parse_presegmented_corpus(std::string_view document);

struct BorrowConfig {
  int radius = 1;               // how many EDUs away a slot may be borrowed from
  bool prefer_following = true;  // try the next EDU before the previous one
};

struct LcExtraction {
  std::vector<LexicalCore> cores;
  std::vector<int> skipped;  // EDU ids that could not be completed
};

// First match of each color per EDU; a missing slot is borrowed from the
// nearest EDU (within the radius) that has its own match of that color.
LcExtraction extract_lcs(std::span<const Edu> edus, const DomainKnowledgeBase& dkb, const BorrowConfig& config = {});

// Exact phrase matching over tokens; phrases are stored token-normalized.
class CueLexicon {
 public:
  CueLexicon() = default;
  explicit CueLexicon(std::span<const std::string> phrases);

  // One phrase per line; blank lines and lines starting with # are ignored.
  static CueLexicon parse(std::string_view document);

  StringSet find(std::span<const std::string> tokens) const;
  std::size_t size() const { return phrases_.size(); }

 private:
  std::vector<std::vector<std::string>> phrases_;
};

// Per-EDU attribute assignment that wins over the computed leaf value.
struct LeafOverride {
  int edu = 0;
  std::string attribute;
  Value value;
};

// {"overrides": [{"edu": 4, "attribute": "happy", "value": 0}]}
std::vector<LeafOverride> parse_overrides(std::string_view document);
std::string serialize_overrides(std::span<const LeafOverride> overrides);

// A lexical core with the attributes of its root. The blue concept is the
// root symbol; green and red are its two leaves.
struct BasicTree {
  LexicalCore lc;
  AttributeMap attributes;

  const std::string& root() const { return lc.blue; }
  const std::string& green() const { return lc.green; }
  const std::string& red() const { return lc.red; }
  NodePtr node() const { return make_leaf(lc, attributes); }

  bool operator==(const BasicTree&) const = default;
};

// Root attributes: cue (lexicon phrases in the EDU), punctuation (terminal
// mark), position (EDU id) and happy (blue polarity), then overrides. role and
// rre stay unset. Throws UnknownConcept for ids absent from the DKB.
std::vector<BasicTree> build_basic_trees(std::span<const LexicalCore> lcs, std::span<const Edu> edus,
                                         const DomainKnowledgeBase& dkb, const CueLexicon& cues,
                                         std::span<const LeafOverride> overrides = {});

struct PreparedText {
  std::vector<Edu> edus;
  LcExtraction extraction;
  std::vector<BasicTree> trees;
};

PreparedText prepare_text(std::vector<Edu> edus, const DomainKnowledgeBase& dkb, const CueLexicon& cues,
                          std::span<const LeafOverride> overrides = {}, const BorrowConfig& borrow = {});

}  // namespace arsg
