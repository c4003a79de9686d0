#include "arsg/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>

#include "arsg/error.hpp"
#include "json_codec.hpp"

namespace arsg {

std::string_view to_string(Punctuation p) {
  switch (p) {
    case Punctuation::Comma: return "comma";
    case Punctuation::Point: return "point";
    case Punctuation::Semicolon: return "semicolon";
    case Punctuation::Question: return "question";
    case Punctuation::Exclamation: return "exclamation";
    case Punctuation::None: return "none";
  }
  return "none";
}

std::optional<Punctuation> parse_punctuation(std::string_view text) {
  for (auto p : {Punctuation::Comma, Punctuation::Point, Punctuation::Semicolon, Punctuation::Question,
                 Punctuation::Exclamation, Punctuation::None}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

Punctuation punctuation_of(char c) {
  switch (c) {
    case ',': return Punctuation::Comma;
    case '.': return Punctuation::Point;
    case ';': return Punctuation::Semicolon;
    case '?': return Punctuation::Question;
    case '!': return Punctuation::Exclamation;
    default: return Punctuation::None;
  }
}

const std::string& LexicalCore::slot(Color color) const {
  switch (color) {
    case Color::Green: return green;
    case Color::Red: return red;
    case Color::Blue: return blue;
  }
  return green;
}

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

Edu make_edu(std::string text) {
  Edu edu;
  edu.text = std::move(text);
  edu.tokens = tokenize(edu.text);
  edu.terminal_punctuation = edu.text.empty() ? Punctuation::None : punctuation_of(edu.text.back());
  return edu;
}

void number(std::vector<Edu>& edus) {
  int sentence = 1;
  for (std::size_t i = 0; i < edus.size(); ++i) {
    edus[i].id = static_cast<int>(i) + 1;
    edus[i].sentence = sentence;
    auto p = edus[i].terminal_punctuation;
    if (p == Punctuation::Point || p == Punctuation::Question || p == Punctuation::Exclamation) ++sentence;
  }
}

}  // namespace

std::vector<Edu> segment(std::string_view raw_text, const SegmentationConfig& config) {
  if (trim(raw_text).empty()) throw Error(ErrorCode::EmptyInput, "no text to segment");
  std::vector<std::string> pieces;
  switch (config.mode) {
    case SegmentMode::Lines: {
      std::size_t start = 0;
      while (start <= raw_text.size()) {
        auto end = raw_text.find('\n', start);
        if (end == std::string_view::npos) end = raw_text.size();
        if (auto line = trim(raw_text.substr(start, end - start)); !line.empty()) pieces.push_back(std::move(line));
        start = end + 1;
      }
      break;
    }
    case SegmentMode::Markers: {
      std::regex marker(config.marker_pattern);
      std::string text(raw_text);
      std::sregex_token_iterator it(text.begin(), text.end(), marker, -1), end;
      for (; it != end; ++it) {
        if (auto piece = trim(it->str()); !piece.empty()) pieces.push_back(std::move(piece));
      }
      break;
    }
    case SegmentMode::Punctuation: {
      std::string current;
      for (char c : raw_text) {
        current.push_back(c == '\n' ? ' ' : c);
        if (config.delimiters.find(c) != std::string::npos) {
          if (auto piece = trim(current); !piece.empty()) pieces.push_back(std::move(piece));
          current.clear();
        }
      }
      if (auto piece = trim(current); !piece.empty()) pieces.push_back(std::move(piece));
      break;
    }
  }
  if (pieces.empty()) throw Error(ErrorCode::EmptyInput, "segmentation produced no EDUs");
  std::vector<Edu> edus;
  edus.reserve(pieces.size());
  for (auto& p : pieces) edus.push_back(make_edu(std::move(p)));
  number(edus);
  return edus;
}

std::vector<std::vector<Edu>> parse_presegmented_corpus(std::string_view document) {
  std::vector<std::vector<Edu>> texts;
  std::vector<Edu> current;
  auto close = [&] {
    if (current.empty()) return;
    number(current);
    texts.push_back(std::move(current));
    current.clear();
  };
  std::size_t start = 0;
  while (start <= document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    auto line = trim(document.substr(start, end - start));
    if (line.empty()) {
      close();
    } else {
      current.push_back(make_edu(std::move(line)));
    }
    start = end + 1;
  }
  close();
  if (texts.empty()) throw Error(ErrorCode::EmptyInput, "corpus holds no EDUs");
  return texts;
}

LcExtraction extract_lcs(std::span<const Edu> edus, const DomainKnowledgeBase& dkb, const BorrowConfig& config) {
  constexpr Color kColors[] = {Color::Green, Color::Red, Color::Blue};
  // own[i][c]: the first concept of color c matched in EDU i.
  std::vector<std::array<std::optional<std::string>, 3>> own(edus.size());
  for (std::size_t i = 0; i < edus.size(); ++i) {
    for (Color c : kColors) {
      auto matches = dkb.lookup(edus[i].tokens, c);
      if (!matches.empty()) own[i][static_cast<int>(c)] = matches.front().concept_id;
    }
  }

  LcExtraction out;
  for (std::size_t i = 0; i < edus.size(); ++i) {
    LexicalCore lc;
    lc.edu_id = edus[i].id;
    bool complete = true;
    for (Color c : kColors) {
      const int ci = static_cast<int>(c);
      std::string value;
      if (own[i][ci]) {
        value = *own[i][ci];
      } else {
        for (int d = 1; d <= config.radius && value.empty(); ++d) {
          const std::ptrdiff_t order[2] = {config.prefer_following ? d : -d, config.prefer_following ? -d : d};
          for (auto offset : order) {
            auto j = static_cast<std::ptrdiff_t>(i) + offset;
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(edus.size())) continue;
            if (const auto& cand = own[static_cast<std::size_t>(j)][ci]) {
              value = *cand;
              lc.borrowed[c] = edus[static_cast<std::size_t>(j)].id;
              break;
            }
          }
        }
      }
      if (value.empty()) {
        complete = false;
        break;
      }
      (c == Color::Green ? lc.green : c == Color::Red ? lc.red : lc.blue) = std::move(value);
    }
    if (complete) {
      out.cores.push_back(std::move(lc));
    } else {
      out.skipped.push_back(edus[i].id);
    }
  }
  return out;
}

CueLexicon::CueLexicon(std::span<const std::string> phrases) {
  for (const auto& p : phrases) {
    auto tokens = tokenize(p);
    if (!tokens.empty()) phrases_.push_back(std::move(tokens));
  }
  std::sort(phrases_.begin(), phrases_.end());
  phrases_.erase(std::unique(phrases_.begin(), phrases_.end()), phrases_.end());
}

CueLexicon CueLexicon::parse(std::string_view document) {
  std::vector<std::string> phrases;
  std::size_t start = 0;
  while (start <= document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    auto line = trim(document.substr(start, end - start));
    if (!line.empty() && line.front() != '#') phrases.push_back(std::move(line));
    start = end + 1;
  }
  return CueLexicon(phrases);
}

StringSet CueLexicon::find(std::span<const std::string> tokens) const {
  StringSet found;
  for (const auto& phrase : phrases_) {
    if (phrase.size() > tokens.size()) continue;
    auto hit = std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end());
    if (hit == tokens.end()) continue;
    std::string joined;
    for (const auto& t : phrase) {
      if (!joined.empty()) joined += ' ';
      joined += t;
    }
    found.insert(std::move(joined));
  }
  return found;
}

namespace {
constexpr std::string_view kOverrides = "override file";
}

std::vector<LeafOverride> parse_overrides(std::string_view document) {
  auto j = codec::parse(document, kOverrides);
  const auto& list = codec::require(j, "overrides", kOverrides);
  if (!list.is_array()) codec::violation(kOverrides, "overrides must be an array");
  std::vector<LeafOverride> out;
  for (const auto& item : list) {
    LeafOverride o;
    o.edu = static_cast<int>(codec::require_int(item, "edu", kOverrides));
    o.attribute = codec::require_string(item, "attribute", kOverrides);
    o.value = codec::value_from_json(codec::require(item, "value", kOverrides));
    out.push_back(std::move(o));
  }
  return out;
}

std::string serialize_overrides(std::span<const LeafOverride> overrides) {
  codec::Json list = codec::Json::array();
  for (const auto& o : overrides) {
    list.push_back({{"edu", o.edu}, {"attribute", o.attribute}, {"value", codec::to_json(o.value)}});
  }
  return codec::dump({{"overrides", std::move(list)}});
}

std::vector<BasicTree> build_basic_trees(std::span<const LexicalCore> lcs, std::span<const Edu> edus,
                                         const DomainKnowledgeBase& dkb, const CueLexicon& cues,
                                         std::span<const LeafOverride> overrides) {
  std::vector<BasicTree> trees;
  trees.reserve(lcs.size());
  for (const auto& lc : lcs) {
    for (const auto* id : {&lc.green, &lc.red, &lc.blue}) {
      if (!dkb.find(*id)) throw Error(ErrorCode::UnknownConcept, "concept '" + *id + "' not in the knowledge base");
    }
    auto edu = std::find_if(edus.begin(), edus.end(), [&](const Edu& e) { return e.id == lc.edu_id; });
    if (edu == edus.end()) {
      throw Error(ErrorCode::UnknownConcept, "lexical core refers to missing EDU " + std::to_string(lc.edu_id));
    }
    BasicTree tree;
    tree.lc = lc;
    tree.attributes.set(std::string(attr::cue), cues.find(edu->tokens));
    tree.attributes.set(std::string(attr::punctuation), std::string(to_string(edu->terminal_punctuation)));
    tree.attributes.set(std::string(attr::position), std::int64_t{edu->id});
    tree.attributes.set(std::string(attr::happy), std::int64_t{dkb.find(lc.blue)->polarity});
    for (const auto& o : overrides) {
      if (o.edu == lc.edu_id) tree.attributes.set(o.attribute, o.value);
    }
    trees.push_back(std::move(tree));
  }
  return trees;
}

PreparedText prepare_text(std::vector<Edu> edus, const DomainKnowledgeBase& dkb, const CueLexicon& cues,
                          std::span<const LeafOverride> overrides, const BorrowConfig& borrow) {
  PreparedText out;
  out.edus = std::move(edus);
  out.extraction = extract_lcs(out.edus, dkb, borrow);
  out.trees = build_basic_trees(out.extraction.cores, out.edus, dkb, cues, overrides);
  return out;
}

}  // namespace arsg
