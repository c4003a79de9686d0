#include <doctest.h>

#include <random>
#include <set>

#include "arsg/error.hpp"
#include "arsg/summarizer.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace arsg;

namespace {

const AttributeSchema& schema() {
  static const AttributeSchema s = AttributeSchema::standard();
  return s;
}

NodePtr leaf(int id) { return testing::test_leaf(id, "L"); }

NodePtr join(NodePtr l, NodePtr r, Role lr = Role::Nucleus, Role rr = Role::Satellite) {
  return reduce_nodes(l, lr, r, rr, "D", {}, schema());
}

std::vector<int> ids(const std::vector<const ArtrNode*>& nodes) {
  std::vector<int> out;
  for (const auto* n : nodes) out.push_back(n->leaf->edu_id);
  return out;
}

Artr artr_of(NodePtr root) {
  Artr a{"t", {}, root};
  for (const auto* l : leaves_of(*root)) {
    Edu e;
    e.id = l->leaf->edu_id;
    e.text = "e" + std::to_string(e.id);
    a.edus.push_back(e);
  }
  return a;
}

std::vector<int> summary_ids(const SummaryResult& r) {
  std::vector<int> out;
  for (const auto& i : r.items) out.push_back(i.edu_id);
  return out;
}

}  // namespace

TEST_SUITE("summarizer") {
  TEST_CASE("significance order alternates root subtrees") {
    auto n = join(join(leaf(1), leaf(2)), join(leaf(3), leaf(4)));
    auto s = join(leaf(5), join(leaf(6), join(leaf(7), leaf(8))));
    auto root = join(n, s);
    CHECK(ids(significance_order(*root)) == std::vector{1, 5, 2, 6, 3, 7, 4, 8});

    // The satellite on the left is visited second, at the root and below.
    auto flipped = join(join(leaf(1), leaf(2), Role::Satellite, Role::Nucleus), leaf(3), Role::Satellite, Role::Nucleus);
    CHECK(ids(significance_order(*flipped)) == std::vector{3, 2, 1});

    // Multinuclear nodes read left first.
    auto multi = join(leaf(1), join(leaf(2), leaf(3), Role::Nucleus, Role::Nucleus), Role::Nucleus, Role::Nucleus);
    CHECK(ids(significance_order(*multi)) == std::vector{1, 2, 3});

    CHECK(ids(significance_order(*leaf(4))) == std::vector{4});
  }

  TEST_CASE("malformed trees") {
    auto bad = join(leaf(1), leaf(2), Role::Satellite, Role::Satellite);
    CHECK_THROWS_AS(significance_order(*bad), Error);
    auto unary = std::make_shared<ArtrNode>();
    unary->dre = "D";
    unary->left = with_role(leaf(1), Role::Nucleus);
    CHECK_THROWS_AS(significance_order(*unary), Error);
  }

  TEST_CASE("orders agree with the oracles") {
    std::mt19937 rng(41);
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 1 + rng() % 60;
      auto root = testing::random_tree(rng, n);
      std::size_t visits = 0;
      auto order = ids(significance_order(*root, &visits));
      CHECK(order == testing::coroutine_order(*root));
      CHECK(order == testing::path_order(*root));
      CHECK(std::set<int>(order.begin(), order.end()).size() == n);
      CHECK(visits <= 3 * node_count(*root));
    }
  }

  TEST_CASE("summary bounds") {
    std::mt19937 rng(2);
    auto a = artr_of(testing::random_tree(rng, 10));
    const auto full = ids(significance_order(*a.root));

    SummaryRequest count;
    count.count = 3;
    auto r = summarize(a, count);
    CHECK(summary_ids(r) == std::vector(full.begin(), full.begin() + 3));
    CHECK(r.halted_by == HaltReason::Count);
    CHECK(r.items[0].rank == 1);
    CHECK(r.items[0].text == "e" + std::to_string(full[0]));

    SummaryRequest ratio;
    ratio.ratio = Rational(1, 4);
    r = summarize(a, ratio);
    CHECK(r.items.size() == 3);
    CHECK(r.halted_by == HaltReason::Ratio);

    SummaryRequest both;
    both.count = 2;
    both.ratio = Rational(1, 2);
    CHECK(summarize(a, both).items.size() == 2);
    both.count = 8;
    CHECK(summarize(a, both).items.size() == 5);

    SummaryRequest all;
    all.ratio = Rational(1);
    CHECK(summarize(a, all).items.size() == 10);

    SummaryRequest ordered = count;
    ordered.restore_text_order = true;
    auto o = summary_ids(summarize(a, ordered));
    CHECK(std::is_sorted(o.begin(), o.end()));
    CHECK(std::set<int>(o.begin(), o.end()) == std::set<int>(full.begin(), full.begin() + 3));

    for (auto bad : {std::int64_t{0}, std::int64_t{10}, std::int64_t{-1}}) {
      SummaryRequest q;
      q.count = bad;
      CHECK_THROWS_AS(summarize(a, q), Error);
    }
    for (auto bad : {Rational(0), Rational(5, 4), Rational(-1, 2)}) {
      SummaryRequest q;
      q.ratio = bad;
      CHECK_THROWS_AS(summarize(a, q), Error);
    }
    CHECK_THROWS_AS(summarize(a, SummaryRequest{}), Error);
  }

  TEST_CASE("halting matches the oracle") {
    std::mt19937 rng(8);
    for (int t = 0; t < 40; ++t) {
      const std::size_t h = 2 + rng() % 15;
      auto a = artr_of(testing::random_tree(rng, h));
      for (std::size_t m = 1; m < h; ++m) {
        SummaryRequest q;
        q.count = static_cast<std::int64_t>(m);
        CHECK(summarize(a, q).items.size() == testing::halting_length(h, q.count, std::nullopt));
      }
      for (std::size_t k = 1; k <= h; ++k) {
        SummaryRequest q;
        q.ratio = Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(h));
        CHECK(summarize(a, q).items.size() == testing::halting_length(h, std::nullopt, q.ratio));
      }
    }
  }
}
