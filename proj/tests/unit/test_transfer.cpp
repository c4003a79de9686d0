#include <doctest.h>

#include <random>

#include "arsg/error.hpp"
#include "arsg/transfer.hpp"
#include "support.hpp"

using namespace arsg;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

const std::set<std::string> kLiterals{"R0", "R1", "R2", "c0", "c1", "c2", "c3", "t0", "t1", "t2"};

std::set<std::string> targets(const ConceptMapping& m) {
  std::set<std::string> out;
  for (const auto& [s, t] : m.dre) out.insert(t);
  return out;
}

}  // namespace

TEST_SUITE("transfer") {
  TEST_CASE("identity mapping") {
    std::mt19937 rng(1);
    auto g = testing::random_grammar(rng);
    auto r = transfer_grammar(g, {}, DomainKnowledgeBase());
    CHECK(r.grammar == g);
    CHECK(r.report == TransferReport{});
  }

  TEST_CASE("single symbol report") {
    Grammar g;
    g.dre = {"A", "B", "C"};
    g.rre = {"Joint"};
    auto rule = [](std::string h, std::string l, std::string r) {
      ProductionRule p;
      p.head = std::move(h);
      p.left = std::move(l);
      p.right = std::move(r);
      p.equations = {{"rre", ConstRhs{std::string("Joint")}}};
      return p;
    };
    g.productions = {rule("A", "B", "C"), rule("B", "A", "A"), rule("C", "B", "A"), rule("C", "B", "C")};
    g.precedences = {{{"A", "B", "C"}, Direction::Shift, Reason::always(), 1, Rational(1)},
                     {{"B", "C", "A"}, Direction::Reduce, Reason::always(), 1, Rational(1)},
                     {{"B", "C", "B"}, Direction::Reduce, Reason::always(), 1, Rational(1)}};
    canonicalize(g);
    ConceptMapping m;
    m.dre["A"] = "Z";
    auto r = transfer_grammar(g, m, testing::blue_dkb({"Z"}));
    CHECK(r.report == TransferReport{3, 0, 2});
    CHECK(r.grammar.dre == std::set<std::string>{"B", "C", "Z"});
    CHECK(validate_grammar(r.grammar).empty());
  }

  TEST_CASE("report counts occurrences") {
    std::mt19937 rng(4);
    for (int i = 0; i < 50; ++i) {
      auto g = testing::random_grammar(rng);
      const std::string s = "D" + std::to_string(rng() % 6);
      std::size_t prods = 0, precs = 0;
      for (const auto& p : g.productions) prods += p.head == s || p.left == s || p.right == s;
      for (const auto& t : g.precedences) precs += t.key.left == s || t.key.middle == s || t.key.lookahead == s;
      ConceptMapping m;
      m.dre[s] = "Z";
      auto r = transfer_grammar(g, m, testing::blue_dkb({"Z"}));
      CHECK(r.report == TransferReport{prods, 0, precs});
    }
  }

  TEST_CASE("attribute and literal renames") {
    std::mt19937 rng(5);
    auto g = testing::random_grammar(rng);
    ConceptMapping m;
    m.attribute["topic"] = "subject";
    m.literal["R0"] = "Background";
    auto r = transfer_grammar(g, m, DomainKnowledgeBase());
    CHECK(r.report.changed_attributes == 1);
    CHECK(r.grammar.schema.find("subject"));
    CHECK_FALSE(r.grammar.schema.find("topic"));
    CHECK(r.grammar.rre == std::set<std::string>{"Background", "R1", "R2"});
    CHECK(validate_grammar(r.grammar).empty());
    std::uint64_t before = 0, after = 0;
    for (const auto& p : g.productions) before += p.weight;
    for (const auto& p : r.grammar.productions) after += p.weight;
    CHECK(before == after);
  }

  TEST_CASE("mapping errors") {
    std::mt19937 rng(6);
    auto g = testing::random_grammar(rng);
    auto ext = testing::blue_dkb({"Z", "D1"});
    ConceptMapping twice;
    twice.dre = {{"D0", "Z"}, {"D2", "Z"}};
    CHECK(code_of([&] { transfer_grammar(g, twice, ext); }) == ErrorCode::NonInjectiveMapping);
    ConceptMapping collide;
    collide.dre = {{"D0", "D1"}};
    CHECK(code_of([&] { transfer_grammar(g, collide, ext); }) == ErrorCode::NonInjectiveMapping);
    ConceptMapping dangling;
    dangling.dre = {{"D0", "Q"}};
    CHECK(code_of([&] { transfer_grammar(g, dangling, ext); }) == ErrorCode::DanglingTarget);
    ConceptMapping attr;
    attr.attribute = {{"topic", "cue"}};
    CHECK(code_of([&] { transfer_grammar(g, attr, ext); }) == ErrorCode::NonInjectiveMapping);
  }

  TEST_CASE("mapping documents") {
    auto m = parse_mapping(R"({"mappings": [{"source_id": "trade", "target_id": "investment", "class": "dre"},
                                            {"source_id": "topic", "target_id": "subject", "class": "attribute"}]})");
    CHECK(m.dre.at("trade") == "investment");
    CHECK(m.attribute.at("topic") == "subject");
    CHECK(parse_mapping(serialize_mapping(m)) == m);
    CHECK_THROWS_AS(parse_mapping(R"({"mappings": [{"source_id": "a", "target_id": "b", "class": "dre"},
                                                    {"source_id": "a", "target_id": "c", "class": "dre"}]})"),
                    Error);
    CHECK_THROWS_AS(parse_mapping(R"({"mappings": [{"source_id": "a", "target_id": "b", "class": "color"}]})"), Error);
  }

  TEST_CASE("composition law") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
      auto g = testing::random_grammar(rng, 12, 12);
      auto f = testing::random_mapping(rng, g.dre, kLiterals, std::string("topic"), "X");
      auto gf = transfer_grammar(g, f, testing::blue_dkb(targets(f))).grammar;
      std::set<std::string> h_literals;
      for (const auto& l : kLiterals) h_literals.insert(f.literal.count(l) ? f.literal.at(l) : l);
      auto h = testing::random_mapping(rng, gf.dre, h_literals,
                                       f.attribute.empty() ? std::string("topic") : f.attribute.begin()->second, "Y");
      auto all = targets(f);
      all.merge(targets(h));
      const auto ext = testing::blue_dkb(all);
      auto sequential = transfer_grammar(gf, h, ext).grammar;
      auto composed = transfer_grammar(g, compose(f, h), ext).grammar;
      CHECK(serialize_grammar(sequential) == serialize_grammar(composed));
    }
  }
}
