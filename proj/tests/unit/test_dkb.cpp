#include <doctest.h>

#include <random>

#include "arsg/dkb.hpp"
#include "arsg/error.hpp"
#include "support.hpp"

using namespace arsg;

namespace {

Concept make(std::string id, Color color, std::vector<std::string> forms, int level = 1,
             std::optional<std::string> parent = std::nullopt, int polarity = 0) {
  return {std::move(id), color, std::move(forms), level, std::move(parent), polarity};
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Io;
}

// Synthetic knowledge base with the requested number of concepts per color.
std::vector<Concept> sized(std::size_t green, std::size_t red, std::size_t blue, const std::string& prefix) {
  std::vector<Concept> out;
  auto add = [&](Color c, std::size_t count, const std::string& tag) {
    for (std::size_t i = 0; i < count; ++i) {
      const std::string id = prefix + tag + std::to_string(i);
      const int level = i % 3 == 0 ? 1 : 2;
      std::optional<std::string> parent;
      if (level == 2) parent = prefix + tag + std::to_string(i - i % 3);
      out.push_back(make(id, c, {id + " form"}, level, parent, c == Color::Blue ? static_cast<int>(i % 3) - 1 : 0));
    }
  };
  add(Color::Green, green, "g");
  add(Color::Red, red, "r");
  add(Color::Blue, blue, "b");
  return out;
}

}  // namespace

TEST_SUITE("dkb") {
  TEST_CASE("load counts every color") {
    DomainKnowledgeBase dkb("trade", sized(334, 347, 339, "base-"));
    CHECK(dkb.counts() == ColorCounts{334, 347, 339});
    CHECK(dkb.height(Color::Green) == 2);
    auto reloaded = load_dkb(serialize_dkb(dkb));
    CHECK(reloaded == dkb);
  }

  TEST_CASE("single blue concept") {
    auto dkb = load_dkb(R"({"domain": "d", "concepts": [{"id": "up", "color": "blue", "forms": ["rises"], "level": 1, "polarity": 1}]})");
    CHECK(dkb.size() == 1);
    CHECK(dkb.find("up")->polarity == 1);
  }

  TEST_CASE("structural errors") {
    CHECK(code_of([] {
            DomainKnowledgeBase("d", {make("g1", Color::Green, {"a"}, 1, "g2"), make("g2", Color::Green, {"b"}, 1, "g1")});
          }) == ErrorCode::CycleDetected);
    CHECK(code_of([] { DomainKnowledgeBase("d", {make("x", Color::Green, {"a"}), make("x", Color::Green, {"b"})}); }) ==
          ErrorCode::DuplicateId);
    CHECK(code_of([] {
            DomainKnowledgeBase("d", {make("p", Color::Green, {"a"}), make("c", Color::Red, {"b"}, 2, "p")});
          }) == ErrorCode::ColorMismatch);
    CHECK(code_of([] { DomainKnowledgeBase("d", {make("g", Color::Green, {"a"}, 1, std::nullopt, 1)}); }) ==
          ErrorCode::BadPolarity);
    CHECK(code_of([] { DomainKnowledgeBase("d", {make("b", Color::Blue, {"a"}, 1, std::nullopt, 2)}); }) ==
          ErrorCode::BadPolarity);
    CHECK(code_of([] { DomainKnowledgeBase("d", {make("g", Color::Green, {"  "})}); }) == ErrorCode::InvalidConcept);
    CHECK(code_of([] {
            DomainKnowledgeBase("d", {make("p", Color::Green, {"a"}), make("c", Color::Green, {"b"}, 3, "p")});
          }) == ErrorCode::InvalidConcept);
    CHECK(code_of([] { DomainKnowledgeBase("d", {make("x", Color::Red, {"a b"}), make("y", Color::Red, {"A  b"})}); }) ==
          ErrorCode::DuplicateForm);
    // The same form in two colors is allowed.
    CHECK_NOTHROW(DomainKnowledgeBase("d", {make("x", Color::Red, {"trade"}), make("y", Color::Blue, {"trade"})}));
    CHECK(code_of([] { load_dkb(R"({"domain": "d"})"); }) == ErrorCode::SchemaViolation);
    CHECK(code_of([] { load_dkb("not json"); }) == ErrorCode::SchemaViolation);
  }

  TEST_CASE("lookup on the first clause") {
    const auto& e = testing::trade_text();
    auto red = e.dkb.lookup(e.edus[0].tokens, Color::Red);
    REQUIRE(red.size() == 1);
    CHECK(red[0].concept_id == "foreign trade");
    CHECK(red[0].end - red[0].begin == 2);
    CHECK(e.dkb.lookup({}, Color::Red).empty());
  }

  TEST_CASE("longest match wins") {
    DomainKnowledgeBase dkb("d", {make("trade", Color::Red, {"trade"}), make("ft", Color::Red, {"foreign trade"}, 2, "trade")});
    auto m = dkb.lookup(tokenize("the foreign trade and trade"), Color::Red);
    REQUIRE(m.size() == 2);
    CHECK(m[0] == ConceptMatch{1, 3, "ft"});
    CHECK(m[1] == ConceptMatch{4, 5, "trade"});
  }

  TEST_CASE("lookup matches are disjoint and maximal") {
    std::vector<Concept> concepts;
    const std::vector<std::string> forms{"a", "a b", "b c", "a b c d", "c", "d a"};
    for (std::size_t i = 0; i < forms.size(); ++i) concepts.push_back(make("c" + std::to_string(i), Color::Red, {forms[i]}));
    DomainKnowledgeBase dkb("d", concepts);
    std::set<std::vector<std::string>> form_tokens;
    for (const auto& f : forms) form_tokens.insert(tokenize(f));
    std::mt19937 rng(7);
    for (int round = 0; round < 300; ++round) {
      auto tokens = testing::random_tokens(rng, 10, 4);
      auto matches = dkb.lookup(tokens, Color::Red);
      std::size_t covered_to = 0;
      for (const auto& m : matches) {
        CHECK(m.begin >= covered_to);
        covered_to = m.end;
        // No longer form starts at the same position.
        for (std::size_t end = m.end + 1; end <= tokens.size(); ++end) {
          std::vector<std::string> longer(tokens.begin() + m.begin, tokens.begin() + end);
          CHECK_FALSE(form_tokens.count(longer));
        }
      }
    }
  }

  TEST_CASE("extend") {
    DomainKnowledgeBase base("trade", sized(334, 347, 339, "base-"));
    auto additions = sized(93, 71, 0, "id-");
    auto merged = extend_dkb(base, additions);
    CHECK(merged.dkb.counts() == ColorCounts{427, 418, 339});
    CHECK(merged.added == ColorCounts{93, 71, 0});

    auto same = extend_dkb(base, {});
    CHECK(same.dkb == base);
    CHECK(same.added == ColorCounts{});

    auto again = extend_dkb(base, std::vector<Concept>{base.concepts().front()});
    CHECK(again.dkb == base);

    auto changed = base.concepts().front();
    changed.surface_forms.push_back("other");
    CHECK(code_of([&] { extend_dkb(base, std::vector<Concept>{changed}); }) == ErrorCode::ConflictingRedefinition);
  }
}
