#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arsg/dkb.hpp"

namespace arsg {

enum class Punctuation { Comma, Point, Semicolon, Question, Exclamation, None };

std::string_view to_string(Punctuation p);  // comma, point, semicolon, question, exclamation, none
std::optional<Punctuation> parse_punctuation(std::string_view text);
Punctuation punctuation_of(char c);

// Elementary discourse unit. Sentence and paragraph ordinals are optional
// corpus metadata used by level-restricted evaluation.
struct Edu {
  int id = 0;  // 1-based text order
  std::string text;
  std::vector<std::string> tokens;
  Punctuation terminal_punctuation = Punctuation::None;
  std::optional<int> sentence;
  std::optional<int> paragraph;

  bool operator==(const Edu&) const = default;
};

// {green, red, blue} concept triple of one EDU. `borrowed` maps each borrowed
// slot to the EDU it was taken from.
struct LexicalCore {
  std::string green;
  std::string red;
  std::string blue;
  int edu_id = 0;
  std::map<Color, int> borrowed;

  const std::string& slot(Color color) const;
  bool operator==(const LexicalCore&) const = default;
};

}  // namespace arsg
