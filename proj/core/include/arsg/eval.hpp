#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arsg/artr.hpp"
#include "arsg/rational.hpp"

namespace arsg {

struct Prf {
  Rational precision{0};
  Rational recall{0};
  Rational f_score{0};

  bool operator==(const Prf&) const = default;
};

// F = 2PR / (P + R), or 0 when P + R = 0.
Prf make_prf(std::size_t hits, std::size_t predicted, std::size_t reference);

enum class TreeLevel { Structure, Nuclearity, Rre, Dre };
inline constexpr std::array kTreeLevels{TreeLevel::Structure, TreeLevel::Nuclearity, TreeLevel::Rre, TreeLevel::Dre};
std::string_view to_string(TreeLevel level);

// Which constituents take part: all of them, or only those inside a single
// sentence or paragraph of the EDU metadata.
enum class Granularity { Discourse, Sentence, Paragraph };
std::string_view to_string(Granularity g);

struct LevelCounts {
  std::size_t hits = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  bool operator==(const LevelCounts&) const = default;
};

// Hit counts per level; corpus scores sum these before dividing.
struct TreeCounts {
  std::array<LevelCounts, 4> levels{};

  TreeCounts& operator+=(const TreeCounts& other);
  bool operator==(const TreeCounts&) const = default;
};

struct TreeScore {
  std::array<Prf, 4> levels{};
  const Prf& at(TreeLevel level) const { return levels[static_cast<int>(level)]; }
};

// Constituents are internal nodes keyed by the EDU span they cover. Throws
// LeafMismatch when the two trees cover different EDUs. `edus` supplies
// sentence and paragraph ordinals; constituents not confined to one unit are
// dropped at the finer granularities, and EDUs without the metadata fall back
// to discourse level.
TreeCounts tree_counts(const ArtrNode& pred, const ArtrNode& gold, Granularity granularity = Granularity::Discourse,
                       std::span<const Edu> edus = {});
TreeScore score(const TreeCounts& counts);
TreeScore tree_scores(const ArtrNode& pred, const ArtrNode& gold);

using StopSet = std::set<std::string, std::less<>>;

// One word per line; blank lines and # comments ignored. Words are lowercased.
StopSet parse_stopwords(std::string_view document);

// Tokens left after removing stop words and pure punctuation.
std::vector<std::string> content_tokens(std::span<const std::string> tokens, const StopSet& stop);

// Clipped overlap of ordered pairs (x_i, x_j) with 1 <= j - i <= max_gap, over
// the content tokens. Throws EmptyReference when the reference has no pairs.
Prf rouge_skip(std::span<const std::string> candidate, std::span<const std::string> reference, const StopSet& stop,
               std::size_t max_gap);
Prf rouge2(std::span<const std::string> candidate, std::span<const std::string> reference, const StopSet& stop);
Prf rougeS4(std::span<const std::string> candidate, std::span<const std::string> reference, const StopSet& stop);

}  // namespace arsg
