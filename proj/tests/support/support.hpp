#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "arsg/annotation.hpp"
#include "arsg/artr.hpp"
#include "arsg/dkb.hpp"
#include "arsg/grammar.hpp"
#include "arsg/learner.hpp"
#include "arsg/service.hpp"
#include "arsg/textprep.hpp"
#include "arsg/transfer.hpp"

namespace arsg::testing {

std::string read_file(const std::filesystem::path& path);
std::filesystem::path data_path(const std::string& relative);

// The eight-clause trade text with its knowledge base, cue list and the
// override that neutralizes the fourth clause.
struct TradeText {
  DomainKnowledgeBase dkb;
  CueLexicon cues;
  std::vector<LeafOverride> overrides;
  std::vector<Edu> edus;
};

const TradeText& trade_text();

// One scripted annotator decision.
struct ScriptStep {
  bool shift = false;
  ReduceRequest reduce;
};

// Reduces the eight basic trees to one root: K1,K2 -> K9, K9,K3 -> K12, a
// shift at (K12, K4, K5), and so on up to K15.
std::vector<ScriptStep> trade_script();
std::string decision_body(const ScriptStep& step);  // JSON body for the decisions endpoint
std::string trade_create_body();

// The whole script driven through AnnotationService::handle; returns the
// finalized log as the service reports it.
AnnotationLog trade_log_via_service();

// Atoms the generated reasons of the first three decisions must contain:
// (K1,K2,K3) reduce, (K9,K3,K4) reduce, (K12,K4,K5) shift.
std::vector<Conjunction> trade_expected_atoms();

// True when the reason has one clause holding every atom of `atoms`.
bool contains_atoms(const Reason& reason, const Conjunction& atoms);

AnnotationSession trade_session(const std::string& id = "t1");
void run_script(AnnotationSession& session, const std::vector<ScriptStep>& steps);

// Corpus annotated by a deterministic policy: one rule per (A, B) and one
// action per (A, B, C), so every context is conflict free.
struct SyntheticCorpus {
  std::vector<AnnotationLog> logs;
  std::vector<ProductionRule> rules;  // generating rules, reason True, weights summed over the corpus
  std::size_t reductions = 0;
};

SyntheticCorpus synthetic_corpus(std::size_t texts, std::uint32_t seed, std::size_t min_leaves = 2,
                                 std::size_t max_leaves = 14);

// Leaf with edu id `edu` and symbol `blue`.
NodePtr test_leaf(int edu, const std::string& blue, AttributeMap attributes = {});

// Random binary tree over leaves 1..leaves with random role pairs, DRE
// symbols drawn from `symbols` and rre labels from `labels`.
NodePtr random_tree(std::mt19937& rng, std::size_t leaves, std::size_t symbols = 3, std::size_t labels = 3);
NodePtr random_tree_over(std::mt19937& rng, int first, int last, std::size_t symbols, std::size_t labels);

// Six rule forms over (A, B) with integer attributes u, v, s, q, r, m, given
// as 3, 1, 4, 1, 5 and 9 weight-one instances. The gates are u(LEFT) <
// s(RIGHT) and v(LEFT) < s(RIGHT).
struct ClusterFixture {
  AttributeSchema schema = AttributeSchema::standard();
  std::vector<RuleInstance> instances;
  NodePtr a_u;     // A satisfying u < s only
  NodePtr a_v;     // v < s only
  NodePtr a_both;  // both
  NodePtr b;
};

ClusterFixture cluster_fixture();
Grammar cluster_grammar(const ClusterFixture& e);  // clustered instances

// Grammar over D0..D5 whose reasons and equations use the literals R*, c* and
// t* and an extra symbol attribute `topic`.
Grammar random_grammar(std::mt19937& rng, std::size_t productions = 20, std::size_t precedences = 20);

// Random injective mapping from a subset of `dre` and of `literals` to fresh
// names `prefix`<k>; the attribute `attribute`, when given, may be renamed
// to `prefix`_attr.
ConceptMapping random_mapping(std::mt19937& rng, const std::set<std::string>& dre, const std::set<std::string>& literals,
                              const std::optional<std::string>& attribute, const std::string& prefix);

// Knowledge base whose blue concepts are exactly `ids`.
DomainKnowledgeBase blue_dkb(const std::set<std::string>& ids);

std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t max_len, std::size_t vocabulary);

}  // namespace arsg::testing
