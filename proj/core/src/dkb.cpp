#include "arsg/dkb.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "arsg/error.hpp"
#include "json_codec.hpp"

namespace arsg {

std::string_view to_string(Color color) {
  switch (color) {
    case Color::Green: return "green";
    case Color::Red: return "red";
    case Color::Blue: return "blue";
  }
  return "green";
}

std::optional<Color> parse_color(std::string_view text) {
  if (text == "green") return Color::Green;
  if (text == "red") return Color::Red;
  if (text == "blue") return Color::Blue;
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  static constexpr std::string_view kSingles = ".,;:!?()\"[]{}";
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (current.size() > 2 && current.compare(current.size() - 2, 2, "'s") == 0) {
      tokens.push_back(current.substr(0, current.size() - 2));
      tokens.emplace_back("'s");
    } else {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char c : text) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      flush();
    } else if (kSingles.find(c) != std::string_view::npos) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current.push_back(uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c);
    }
  }
  flush();
  return tokens;
}

DomainKnowledgeBase::DomainKnowledgeBase(std::string domain_name, std::vector<Concept> concepts)
    : domain_name_(std::move(domain_name)), concepts_(std::move(concepts)) {
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    const Concept& c = concepts_[i];
    if (c.id.empty()) throw Error(ErrorCode::InvalidConcept, "concept with empty id");
    if (c.surface_forms.empty()) throw Error(ErrorCode::InvalidConcept, "concept '" + c.id + "' has no surface forms");
    for (const auto& form : c.surface_forms) {
      if (tokenize(form).empty()) {
        throw Error(ErrorCode::InvalidConcept, "concept '" + c.id + "' has an empty surface form");
      }
    }
    if (c.polarity < -1 || c.polarity > 1) {
      throw Error(ErrorCode::BadPolarity, "concept '" + c.id + "' polarity " + std::to_string(c.polarity));
    }
    if (c.color != Color::Blue && c.polarity != 0) {
      throw Error(ErrorCode::BadPolarity, "non-blue concept '" + c.id + "' has polarity");
    }
    if (c.level < 1) throw Error(ErrorCode::InvalidConcept, "concept '" + c.id + "' level must be positive");
    if (!by_id_.emplace(c.id, i).second) throw Error(ErrorCode::DuplicateId, "concept id '" + c.id + "' repeated");
  }

  for (const Concept& c : concepts_) {
    if (!c.parent) continue;
    const Concept* p = find(*c.parent);
    if (!p) throw Error(ErrorCode::InvalidConcept, "concept '" + c.id + "' has unknown parent '" + *c.parent + "'");
    if (p->color != c.color) {
      throw Error(ErrorCode::ColorMismatch, "concept '" + c.id + "' and parent '" + p->id + "' differ in color");
    }
  }

  // Parent chains: every walk must reach a root within |concepts| steps.
  for (const Concept& c : concepts_) {
    const Concept* cursor = &c;
    std::size_t steps = 0;
    while (cursor->parent) {
      cursor = find(*cursor->parent);
      if (++steps > concepts_.size() || cursor == &c) {
        throw Error(ErrorCode::CycleDetected, "parent chain of '" + c.id + "' is cyclic");
      }
    }
  }

  for (const Concept& c : concepts_) {
    if (c.parent) {
      const Concept* p = find(*c.parent);
      if (p->level != c.level - 1) {
        throw Error(ErrorCode::InvalidConcept, "concept '" + c.id + "' level " + std::to_string(c.level) +
                                                   " under parent level " + std::to_string(p->level));
      }
    } else if (c.level != 1) {
      throw Error(ErrorCode::InvalidConcept, "root concept '" + c.id + "' must be level 1");
    }
  }

  for (const Concept& c : concepts_) {
    FormIndex& index = index_[static_cast<int>(c.color)];
    for (const auto& form : c.surface_forms) {
      auto tokens = tokenize(form);
      auto [it, inserted] = index.forms.emplace(tokens, c.id);
      if (!inserted && it->second != c.id) {
        throw Error(ErrorCode::DuplicateForm, "surface form '" + form + "' names both '" + it->second + "' and '" +
                                                  c.id + "'");
      }
      index.longest = std::max(index.longest, tokens.size());
    }
  }
}

const Concept* DomainKnowledgeBase::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &concepts_[it->second];
}

ColorCounts DomainKnowledgeBase::counts() const {
  ColorCounts out;
  for (const auto& c : concepts_) {
    switch (c.color) {
      case Color::Green: ++out.green; break;
      case Color::Red: ++out.red; break;
      case Color::Blue: ++out.blue; break;
    }
  }
  return out;
}

int DomainKnowledgeBase::height(Color color) const {
  int best = 0;
  for (const auto& c : concepts_) {
    if (c.color == color) best = std::max(best, c.level);
  }
  return best;
}

std::vector<ConceptMatch> DomainKnowledgeBase::lookup(std::span<const std::string> tokens, Color color) const {
  const FormIndex& index = index_for(color);
  std::vector<ConceptMatch> matches;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool found = false;
    for (std::size_t len = std::min(index.longest, tokens.size() - i); len > 0; --len) {
      std::vector<std::string> probe(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                     tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
      if (auto it = index.forms.find(probe); it != index.forms.end()) {
        matches.push_back({i, i + len, it->second});
        i += len;
        found = true;
        break;
      }
    }
    if (!found) ++i;
  }
  return matches;
}

namespace {

constexpr std::string_view kWhat = "concept file";

Concept concept_from_json(const codec::Json& j) {
  if (!j.is_object()) codec::violation(kWhat, "concept record must be an object");
  Concept c;
  c.id = codec::require_string(j, "id", kWhat);
  auto color = parse_color(codec::require_string(j, "color", kWhat));
  if (!color) codec::violation(kWhat, "concept '" + c.id + "' has unknown color");
  c.color = *color;
  const auto& forms = codec::require(j, "forms", kWhat);
  if (!forms.is_array()) codec::violation(kWhat, "forms must be an array");
  for (const auto& f : forms) {
    if (!f.is_string()) codec::violation(kWhat, "forms must be strings");
    c.surface_forms.push_back(f.get<std::string>());
  }
  c.level = static_cast<int>(codec::require_int(j, "level", kWhat));
  if (auto it = j.find("parent"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) codec::violation(kWhat, "parent must be a string");
    c.parent = it->get<std::string>();
  }
  if (auto it = j.find("polarity"); it != j.end()) {
    if (!it->is_number_integer()) codec::violation(kWhat, "polarity must be an integer");
    c.polarity = it->get<int>();
  }
  return c;
}

codec::Json concept_to_json(const Concept& c) {
  codec::Json j = {{"id", c.id}, {"color", std::string(to_string(c.color))}, {"forms", c.surface_forms},
                   {"level", c.level}};
  if (c.parent) j["parent"] = *c.parent;
  if (c.color == Color::Blue) j["polarity"] = c.polarity;
  return j;
}

}  // namespace

std::vector<Concept> parse_concepts(std::string_view document, std::string* domain_name) {
  auto j = codec::parse(document, kWhat);
  if (!j.is_object()) codec::violation(kWhat, "top level must be an object");
  if (domain_name) {
    auto it = j.find("domain");
    *domain_name = (it != j.end() && it->is_string()) ? it->get<std::string>() : std::string();
  }
  const auto& list = codec::require(j, "concepts", kWhat);
  if (!list.is_array()) codec::violation(kWhat, "concepts must be an array");
  std::vector<Concept> out;
  out.reserve(list.size());
  for (const auto& item : list) out.push_back(concept_from_json(item));
  return out;
}

DomainKnowledgeBase load_dkb(std::string_view document) {
  std::string name;
  auto concepts = parse_concepts(document, &name);
  return DomainKnowledgeBase(std::move(name), std::move(concepts));
}

std::string serialize_dkb(const DomainKnowledgeBase& dkb) {
  codec::Json list = codec::Json::array();
  for (const auto& c : dkb.concepts()) list.push_back(concept_to_json(c));
  return codec::dump({{"domain", dkb.domain_name()}, {"concepts", std::move(list)}});
}

ExtendResult extend_dkb(const DomainKnowledgeBase& dkb, std::span<const Concept> additions) {
  std::vector<Concept> merged = dkb.concepts();
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < merged.size(); ++i) index.emplace(merged[i].id, i);
  ColorCounts added;
  for (const auto& c : additions) {
    if (auto it = index.find(c.id); it != index.end()) {
      if (merged[it->second] == c) continue;
      throw Error(ErrorCode::ConflictingRedefinition, "concept '" + c.id + "' redefined with different fields");
    }
    index.emplace(c.id, merged.size());
    merged.push_back(c);
    switch (c.color) {
      case Color::Green: ++added.green; break;
      case Color::Red: ++added.red; break;
      case Color::Blue: ++added.blue; break;
    }
  }
  return {DomainKnowledgeBase(dkb.domain_name(), std::move(merged)), added};
}

}  // namespace arsg
