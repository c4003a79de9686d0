#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "arsg/artr.hpp"
#include "arsg/error.hpp"
#include "arsg/grammar.hpp"
#include "arsg/rational.hpp"

namespace arsg {

enum class Backoff { Fail, MajorityAbcStar, DefaultShift };
enum class TieBreak { LeftmostRule, LowestHeadSymbol };

std::string_view to_string(Backoff b);  // fail, majority, shift
std::optional<Backoff> parse_backoff(std::string_view text);

struct ParseConfig {
  Backoff backoff = Backoff::MajorityAbcStar;
  std::size_t max_backtracks = 10000;  // attempts allowed; 1 means greedy
  TieBreak tie_break = TieBreak::LeftmostRule;
  // Receives one JSON object per line for every step of the search.
  std::function<void(std::string_view)> trace;
};

struct RankedRule {
  std::size_t index = 0;  // into Grammar::productions
  Rational probability;

  bool operator==(const RankedRule&) const = default;
};

// Productions over (dre(A), dre(B)) whose reason holds on the children,
// weighted by weight / total satisfied weight, most probable first. Throws
// NoApplicableRule when none holds.
std::vector<RankedRule> applicable_rules(const Grammar& g, const ArtrNode& a, const ArtrNode& b,
                                         TieBreak tie_break = TieBreak::LeftmostRule);

struct Decision {
  enum class Source { Precedence, Backoff, EndOfInput };

  std::vector<Direction> alternatives;  // first is the preferred action
  Source source = Source::Precedence;

  Direction action() const { return alternatives.front(); }
  bool operator==(const Decision&) const = default;
};

// Consults the precedence tuples of (A, B, C); `c` is null at end of input,
// where only a reduction is possible. Throws NoAction when nothing applies
// and the backoff is Fail, or at end of input without an applicable rule.
Decision decide_action(const Grammar& g, const ArtrNode& a, const ArtrNode& b, const ArtrNode* c,
                       const ParseConfig& config);

struct ParseStats {
  std::size_t steps = 0;
  std::size_t backtracks = 0;
};

struct ParseResult {
  NodePtr root;
  ParseStats stats;
};

// Failure of the whole search. `forest` is the least fragmented state reached:
// its stack followed by the unread input.
class ParseFailure : public Error {
 public:
  ParseFailure(const std::string& message, std::vector<NodePtr> forest, ParseStats stats)
      : Error(ErrorCode::ParseFailure, message), forest_(std::move(forest)), stats_(stats) {}

  const std::vector<NodePtr>& forest() const { return forest_; }
  const ParseStats& stats() const { return stats_; }

 private:
  std::vector<NodePtr> forest_;
  ParseStats stats_;
};

// Depth-first search over decisions in probability order, restoring the most
// recent choice point on a dead end.
ParseResult parse(const Grammar& g, std::span<const NodePtr> leaves, const ParseConfig& config = {});

}  // namespace arsg
