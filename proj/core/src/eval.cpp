#include "arsg/eval.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <tuple>

#include "arsg/error.hpp"

namespace arsg {

Prf make_prf(std::size_t hits, std::size_t predicted, std::size_t reference) {
  Prf out;
  if (predicted) out.precision = Rational(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(predicted));
  if (reference) out.recall = Rational(static_cast<std::int64_t>(hits), static_cast<std::int64_t>(reference));
  if (out.precision + out.recall > 0) {
    out.f_score = 2 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

std::string_view to_string(TreeLevel level) {
  switch (level) {
    case TreeLevel::Structure: return "structure";
    case TreeLevel::Nuclearity: return "nuclearity";
    case TreeLevel::Rre: return "rre";
    case TreeLevel::Dre: return "dre";
  }
  return "structure";
}

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::Discourse: return "discourse";
    case Granularity::Sentence: return "sentence";
    case Granularity::Paragraph: return "paragraph";
  }
  return "discourse";
}

TreeCounts& TreeCounts::operator+=(const TreeCounts& other) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    levels[i].hits += other.levels[i].hits;
    levels[i].predicted += other.levels[i].predicted;
    levels[i].gold += other.levels[i].gold;
  }
  return *this;
}

namespace {

struct Constituent {
  int first = 0;
  int last = 0;
  std::string left_role;
  std::string right_role;
  std::string rre;
  std::string dre;
};

int edu_of(const ArtrNode& leaf) { return leaf.leaf ? leaf.leaf->edu_id : 0; }

std::string role_text(const NodePtr& child) {
  auto r = role_of(child->attributes);
  return r ? std::string(to_string(*r)) : std::string();
}

// Returns the EDU span of `node` and records its internal constituents.
std::pair<int, int> collect(const ArtrNode& node, std::vector<Constituent>& out) {
  if (node.is_leaf()) return {edu_of(node), edu_of(node)};
  if (!node.left || !node.right) throw Error(ErrorCode::MalformedTree, "node '" + node.dre + "' is not binary");
  auto l = collect(*node.left, out);
  auto r = collect(*node.right, out);
  Constituent c;
  c.first = l.first;
  c.last = r.second;
  c.left_role = role_text(node.left);
  c.right_role = role_text(node.right);
  if (const auto* label = node.attributes.get_as<std::string>(attr::rre)) c.rre = *label;
  c.dre = node.dre;
  out.push_back(c);
  return {c.first, c.last};
}

using LevelKey = std::tuple<int, int, std::string, std::string>;

LevelKey key_for(const Constituent& c, TreeLevel level) {
  switch (level) {
    case TreeLevel::Structure: return {c.first, c.last, "", ""};
    case TreeLevel::Nuclearity: return {c.first, c.last, c.left_role, c.right_role};
    case TreeLevel::Rre: return {c.first, c.last, c.rre, ""};
    case TreeLevel::Dre: return {c.first, c.last, c.dre, ""};
  }
  return {c.first, c.last, "", ""};
}

std::vector<int> leaf_ids(const ArtrNode& root) {
  std::vector<int> ids;
  for (const auto* leaf : leaves_of(root)) ids.push_back(edu_of(*leaf));
  return ids;
}

}  // namespace

TreeCounts tree_counts(const ArtrNode& pred, const ArtrNode& gold, Granularity granularity, std::span<const Edu> edus) {
  const auto ids = leaf_ids(gold);
  if (leaf_ids(pred) != ids) throw Error(ErrorCode::LeafMismatch, "trees cover different EDUs");

  // Unit ordinal of each EDU at the requested granularity.
  std::map<int, int> unit;
  if (granularity != Granularity::Discourse) {
    for (const auto& e : edus) {
      auto u = granularity == Granularity::Sentence ? e.sentence : e.paragraph;
      if (u) unit[e.id] = *u;
    }
    bool complete = std::all_of(ids.begin(), ids.end(), [&](int id) { return unit.count(id) > 0; });
    if (!complete) unit.clear();
  }
  auto kept = [&](const Constituent& c) {
    if (unit.empty()) return true;
    auto lo = std::find(ids.begin(), ids.end(), c.first);
    auto hi = std::find(ids.begin(), ids.end(), c.last);
    for (auto it = lo; it <= hi && it != ids.end(); ++it) {
      if (unit[*it] != unit[c.first]) return false;
    }
    return true;
  };

  std::vector<Constituent> p, g;
  collect(pred, p);
  collect(gold, g);
  std::erase_if(p, [&](const Constituent& c) { return !kept(c); });
  std::erase_if(g, [&](const Constituent& c) { return !kept(c); });

  TreeCounts counts;
  for (TreeLevel level : kTreeLevels) {
    std::multiset<LevelKey> gold_keys;
    for (const auto& c : g) gold_keys.insert(key_for(c, level));
    auto& lc = counts.levels[static_cast<int>(level)];
    lc.predicted = p.size();
    lc.gold = g.size();
    for (const auto& c : p) {
      auto it = gold_keys.find(key_for(c, level));
      if (it == gold_keys.end()) continue;
      gold_keys.erase(it);
      ++lc.hits;
    }
  }
  return counts;
}

TreeScore score(const TreeCounts& counts) {
  TreeScore s;
  for (std::size_t i = 0; i < counts.levels.size(); ++i) {
    const auto& c = counts.levels[i];
    // Two trees without internal nodes agree vacuously.
    s.levels[i] = c.predicted == 0 && c.gold == 0 ? Prf{Rational(1), Rational(1), Rational(1)}
                                                  : make_prf(c.hits, c.predicted, c.gold);
  }
  return s;
}

TreeScore tree_scores(const ArtrNode& pred, const ArtrNode& gold) { return score(tree_counts(pred, gold)); }

StopSet parse_stopwords(std::string_view document) {
  StopSet out;
  std::size_t start = 0;
  while (start <= document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    std::string word;
    for (char c : document.substr(start, end - start)) {
      if (!std::isspace(static_cast<unsigned char>(c))) word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (!word.empty() && word.front() != '#') out.insert(std::move(word));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> content_tokens(std::span<const std::string> tokens, const StopSet& stop) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (t.empty() || stop.count(t)) continue;
    if (std::all_of(t.begin(), t.end(), [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; })) continue;
    out.push_back(t);
  }
  return out;
}

namespace {

std::map<std::pair<std::string, std::string>, std::size_t> skip_pairs(const std::vector<std::string>& tokens,
                                                                      std::size_t max_gap, std::size_t& total) {
  std::map<std::pair<std::string, std::string>, std::size_t> pairs;
  total = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j < tokens.size() && j - i <= max_gap; ++j) {
      ++pairs[{tokens[i], tokens[j]}];
      ++total;
    }
  }
  return pairs;
}

}  // namespace

Prf rouge_skip(std::span<const std::string> candidate, std::span<const std::string> reference, const StopSet& stop,
               std::size_t max_gap) {
  std::size_t cand_total = 0;
  std::size_t ref_total = 0;
  auto cand = skip_pairs(content_tokens(candidate, stop), max_gap, cand_total);
  auto ref = skip_pairs(content_tokens(reference, stop), max_gap, ref_total);
  if (ref_total == 0) throw Error(ErrorCode::EmptyReference, "reference has no token pairs after filtering");
  std::size_t overlap = 0;
  for (const auto& [pair, n] : cand) {
    if (auto it = ref.find(pair); it != ref.end()) overlap += std::min(n, it->second);
  }
  return make_prf(overlap, cand_total, ref_total);
}

Prf rouge2(std::span<const std::string> candidate, std::span<const std::string> reference, const StopSet& stop) {
  return rouge_skip(candidate, reference, stop, 1);
}

Prf rougeS4(std::span<const std::string> candidate, std::span<const std::string> reference, const StopSet& stop) {
  return rouge_skip(candidate, reference, stop, 4);
}

}  // namespace arsg
