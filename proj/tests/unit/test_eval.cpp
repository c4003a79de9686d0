#include <doctest.h>

#include <random>

#include "arsg/error.hpp"
#include "arsg/eval.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace arsg;

namespace {

NodePtr join(NodePtr l, NodePtr r, std::string rre, Role lr = Role::Nucleus, Role rr = Role::Satellite,
             std::string head = "D") {
  static const AttributeSchema schema = AttributeSchema::standard();
  std::vector<AttributeEquation> eqs{{"rre", ConstRhs{std::move(rre)}}};
  return reduce_nodes(l, lr, r, rr, std::move(head), eqs, schema);
}

NodePtr leaf(int id) { return testing::test_leaf(id, "L"); }

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("precision recall f") {
    CHECK(make_prf(1, 2, 4) == Prf{Rational(1, 2), Rational(1, 4), Rational(1, 3)});
    CHECK(make_prf(0, 0, 3) == Prf{});
    CHECK(make_prf(3, 3, 3).f_score == Rational(1));
  }

  TEST_CASE("tree comparison levels") {
    auto gold = join(join(leaf(1), leaf(2), "Joint"), leaf(3), "Cause");
    auto pred = join(leaf(1), join(leaf(2), leaf(3), "Joint"), "Cause");
    auto s = tree_scores(*pred, *gold);
    CHECK(s.at(TreeLevel::Structure).precision == Rational(1, 2));
    CHECK(s.at(TreeLevel::Structure).recall == Rational(1, 2));
    CHECK(s.at(TreeLevel::Rre).f_score == Rational(1, 2));

    auto same = tree_scores(*gold, *gold);
    for (auto level : kTreeLevels) CHECK(same.at(level).f_score == Rational(1));

    auto relabel = join(join(leaf(1), leaf(2), "Joint"), leaf(3), "Contrast", Role::Satellite, Role::Nucleus, "E");
    auto r = tree_scores(*relabel, *gold);
    CHECK(r.at(TreeLevel::Structure).f_score == Rational(1));
    CHECK(r.at(TreeLevel::Nuclearity).f_score == Rational(1, 2));
    CHECK(r.at(TreeLevel::Rre).f_score == Rational(1, 2));
    CHECK(r.at(TreeLevel::Dre).f_score == Rational(1, 2));

    CHECK_THROWS_AS(tree_counts(*gold, *join(leaf(1), leaf(4), "Joint")), Error);
    auto single = tree_scores(*leaf(1), *leaf(1));
    CHECK(single.at(TreeLevel::Structure).f_score == Rational(1));
  }

  TEST_CASE("granularity") {
    auto gold = join(join(leaf(1), leaf(2), "Joint"), join(leaf(3), leaf(4), "Joint"), "Cause");
    auto pred = join(leaf(1), join(leaf(2), join(leaf(3), leaf(4), "Joint"), "Joint"), "Cause");
    std::vector<Edu> edus(4);
    for (int i = 0; i < 4; ++i) {
      edus[i].id = i + 1;
      edus[i].sentence = i / 2 + 1;
      edus[i].paragraph = 1;
    }
    auto sent = tree_counts(*pred, *gold, Granularity::Sentence, edus);
    CHECK(sent.levels[0] == LevelCounts{1, 1, 2});
    auto para = tree_counts(*pred, *gold, Granularity::Paragraph, edus);
    CHECK(para == tree_counts(*pred, *gold));
    edus.pop_back();
    CHECK(tree_counts(*pred, *gold, Granularity::Sentence, edus) == tree_counts(*pred, *gold));
  }

  TEST_CASE("tree counts match the brute-force oracle") {
    std::mt19937 rng(6);
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 1 + rng() % 12;
      auto a = testing::random_tree(rng, n, 2, 2);
      auto b = testing::random_tree(rng, n, 2, 2);
      CHECK(tree_counts(*a, *b) == testing::brute_tree_counts(*a, *b));
    }
  }

  TEST_CASE("rouge") {
    StopSet none;
    auto r2 = rouge2(words("a b c"), words("a b d"), none);
    CHECK(r2 == Prf{Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    auto s4 = rougeS4(words("a b c"), words("a c b"), none);
    CHECK(s4.precision == Rational(2, 3));
    CHECK(rouge2(words("x x x"), words("x x"), none).recall == Rational(1));
    CHECK(rouge2(words("x x"), words("x x x"), none).recall == Rational(1, 2));
    CHECK_THROWS_AS(rouge2(words("a b"), words("a"), none), Error);

    auto stop = parse_stopwords("# common\nThe\n\nof\n");
    CHECK(stop == StopSet{"of", "the"});
    CHECK(content_tokens(words("the top of , list"), stop) == std::vector<std::string>{"top", "list"});
    CHECK(rouge2(words("the top of list"), words("top list"), stop).f_score == Rational(1));
  }

  TEST_CASE("rouge matches the pair oracle") {
    std::mt19937 rng(12);
    const auto stop = parse_stopwords("a\n");
    for (int i = 0; i < 300; ++i) {
      auto c = testing::random_tokens(rng, 12, 4);
      auto r = testing::random_tokens(rng, 12, 4);
      for (std::size_t gap : {1, 4}) {
        auto p = testing::brute_pairs(c, r, stop, gap);
        if (p.reference == 0) {
          CHECK_THROWS_AS(rouge_skip(c, r, stop, gap), Error);
        } else {
          CHECK(rouge_skip(c, r, stop, gap) == make_prf(p.overlap, p.candidate, p.reference));
        }
      }
    }
  }
}
