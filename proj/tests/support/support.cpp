#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "arsg/error.hpp"
#include "arsg/stack_machine.hpp"

#ifndef ARSG_TEST_DATA_DIR
#error ARSG_TEST_DATA_DIR must point at tests/data
#endif

namespace arsg::testing {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path data_path(const std::string& relative) {
  return std::filesystem::path(ARSG_TEST_DATA_DIR) / relative;
}

const TradeText& trade_text() {
  static const TradeText data = [] {
    TradeText e;
    e.dkb = load_dkb(read_file(data_path("trade/dkb.json")));
    e.cues = CueLexicon::parse(read_file(data_path("trade/cues.txt")));
    e.overrides = parse_overrides(read_file(data_path("trade/overrides.json")));
    e.edus = segment(read_file(data_path("trade/text.txt")), {SegmentMode::Markers});
    return e;
  }();
  return data;
}

namespace {

ScriptStep reduce(std::string head, Role l, Role r, std::string rre, std::int64_t happy) {
  ScriptStep s;
  s.reduce.head = std::move(head);
  s.reduce.left_role = l;
  s.reduce.right_role = r;
  s.reduce.rre = std::move(rre);
  s.reduce.happy = happy;
  return s;
}

ScriptStep shift() {
  ScriptStep s;
  s.shift = true;
  return s;
}

constexpr Role N = Role::Nucleus;
constexpr Role S = Role::Satellite;

}  // namespace

std::vector<ScriptStep> trade_script() {
  return {
      reduce("good development", N, S, "Conjunction", 1),     // K9  = (K1, K2)
      reduce("gladness with worry", S, N, "Concession", -1),  // K12 = (K9, K3)
      shift(),                                                // at (K12, K4, K5)
      reduce("low status", S, N, "Elaboration", -1),          // K10 = (K4, K5)
      reduce("gladness with worry", N, S, "Elaboration", -1), // K13 = (K12, K10)
      shift(),                                                // at (K13, K6, K7)
      reduce("upgrade demand", N, N, "Joint", 1),             // K11 = (K6, K7)
      shift(),                                                // at (K13, K11, K8)
      reduce("future importance", S, N, "Elaboration", 0),    // K14 = (K11, K8)
      reduce("development outlook", S, N, "Cause", 0),        // K15 = (K13, K14)
  };
}

std::string decision_body(const ScriptStep& step) {
  if (step.shift) return R"({"action":"shift"})";
  const auto& r = step.reduce;
  nlohmann::json j = {{"action", "reduce"},
                      {"head", r.head},
                      {"roles", {std::string(to_string(*r.left_role)), std::string(to_string(*r.right_role))}},
                      {"rre", *r.rre}};
  if (r.happy) j["happy"] = *r.happy;
  return j.dump();
}

std::string trade_create_body() {
  nlohmann::json j = {{"text_id", "trade"},
                      {"text", read_file(data_path("trade/text.txt"))},
                      {"segmentation", "markers"},
                      {"overrides", nlohmann::json::parse(read_file(data_path("trade/overrides.json")))["overrides"]}};
  return j.dump();
}

AnnotationLog trade_log_via_service() {
  const auto& e = trade_text();
  ServiceConfig config;
  config.dkb = std::make_shared<DomainKnowledgeBase>(e.dkb);
  config.cues = e.cues;
  AnnotationService service(config);
  auto expect = [](const HttpResponse& r, int status) {
    if (r.status != status) throw Error(ErrorCode::BadRequest, "service returned " + std::to_string(r.status) + ": " + r.body);
    return nlohmann::json::parse(r.body);
  };
  auto created = expect(service.handle({"POST", "/sessions", trade_create_body(), ""}), 201);
  const std::string base = "/sessions/" + created["id"].get<std::string>();
  for (const auto& step : trade_script()) expect(service.handle({"POST", base + "/decisions", decision_body(step), ""}), 200);
  auto done = expect(service.handle({"POST", base + "/finalize", "", ""}), 200);
  return deserialize_log(done["log"].dump());
}

std::vector<Conjunction> trade_expected_atoms() {
  auto happy = [](Slot s, CompareOp op) { return ReasonAtom{s, "happy", op, std::int64_t{0}}; };
  auto cue = [](Slot s, StringSet v) { return ReasonAtom{s, "cue", CompareOp::SetEq, std::move(v)}; };
  const ReasonAtom point_r{Slot::Right, "punctuation", CompareOp::Eq, std::string("point")};
  const ReasonAtom point_l{Slot::Left, "punctuation", CompareOp::Eq, std::string("point")};
  return {
      {happy(Slot::Left, CompareOp::Gt), happy(Slot::Right, CompareOp::Gt), happy(Slot::Lookahead, CompareOp::Lt),
       cue(Slot::Left, {"although"}), cue(Slot::Lookahead, {"still"})},
      {happy(Slot::Left, CompareOp::Gt), happy(Slot::Right, CompareOp::Lt), cue(Slot::Left, {"although"}),
       cue(Slot::Right, {"still"}), point_r},
      {cue(Slot::Left, {"although", "still"}), point_l, cue(Slot::Right, {"especially"}), happy(Slot::Right, CompareOp::Eq)},
  };
}

bool contains_atoms(const Reason& reason, const Conjunction& atoms) {
  for (const auto& clause : reason.clauses()) {
    if (std::ranges::all_of(atoms, [&](const ReasonAtom& a) { return std::ranges::find(clause, a) != clause.end(); })) return true;
  }
  return false;
}

AnnotationSession trade_session(const std::string& id) {
  const auto& e = trade_text();
  SessionOptions options;
  for (const auto& c : e.dkb.concepts()) {
    if (c.color == Color::Blue) options.heads.insert(c.id);
  }
  return AnnotationSession::create(id, "trade", e.edus, e.dkb, e.cues, e.overrides, options);
}

void run_script(AnnotationSession& session, const std::vector<ScriptStep>& steps) {
  for (const auto& s : steps) {
    if (s.shift) {
      session.shift();
    } else {
      session.reduce(s.reduce);
    }
  }
}

NodePtr test_leaf(int edu, const std::string& blue, AttributeMap attributes) {
  LexicalCore lc{"g", "r", blue, edu, {}};
  return make_leaf(std::move(lc), std::move(attributes));
}

SyntheticCorpus synthetic_corpus(std::size_t texts, std::uint32_t seed, std::size_t min_leaves,
                                 std::size_t max_leaves) {
  static const std::vector<std::string> symbols{"T0", "T1", "T2", "T3", "T4", "T5"};
  static const std::vector<std::string> labels{"Elaboration", "Contrast", "Cause", "Joint"};
  static const std::vector<std::string> cue_pool{"although", "still", "but"};
  static const std::vector<std::string> punct{"comma", "point", "none"};
  const auto n = symbols.size();
  auto index = [&](const std::string& s) { return static_cast<std::size_t>(std::find(symbols.begin(), symbols.end(), s) - symbols.begin()); };

  auto rule_for = [&](std::size_t i, std::size_t j) {
    ProductionRule r;
    r.head = symbols[(i + 2 * j + 1) % n];
    r.left = symbols[i];
    r.right = symbols[j];
    const std::size_t roles = (i + j) % 3;
    r.left_role = roles == 1 ? Role::Satellite : Role::Nucleus;
    r.right_role = roles == 0 ? Role::Satellite : Role::Nucleus;
    ReduceRequest req;
    req.rre = labels[(i * j + i) % labels.size()];
    req.happy = static_cast<std::int64_t>((i + j) % 3) - 1;
    r.equations = AnnotationSession::reduce_equations(req);
    r.weight = 0;
    return r;
  };
  auto shifts = [&](std::size_t a, std::size_t b, std::size_t c) { return (7 * a + 3 * b + c) % 3 == 0; };

  std::mt19937 rng(seed);
  std::map<std::pair<std::size_t, std::size_t>, ProductionRule> used;
  SyntheticCorpus corpus;
  for (std::size_t t = 0; t < texts; ++t) {
    const auto h = std::uniform_int_distribution<std::size_t>(min_leaves, max_leaves)(rng);
    AnnotationLog log;
    log.text_id = "synthetic-" + std::to_string(t + 1);
    for (std::size_t k = 0; k < h; ++k) {
      const int id = static_cast<int>(k) + 1;
      Edu edu;
      edu.id = id;
      edu.text = "clause " + std::to_string(id);
      edu.tokens = tokenize(edu.text);
      edu.sentence = 1;
      log.edus.push_back(edu);
      AttributeMap a;
      StringSet cues;
      for (const auto& c : cue_pool) {
        if (rng() % 4 == 0) cues.insert(c);
      }
      a.set("cue", cues);
      a.set("happy", static_cast<std::int64_t>(rng() % 3) - 1);
      a.set("punctuation", punct[rng() % punct.size()]);
      a.set("position", std::int64_t{id});
      log.leaves.push_back(test_leaf(id, symbols[rng() % n], std::move(a)));
    }

    StackMachine m(log.leaves);
    while (!m.done()) {
      const auto key = m.key();
      const std::size_t a = index(key.left), b = index(key.middle);
      DecisionEvent e;
      e.context = key;
      e.left = m.left()->attributes;
      e.right = m.right()->attributes;
      if (const NodePtr* c = m.lookahead()) e.lookahead = (*c)->attributes;
      const bool do_shift = m.lookahead() && shifts(a, b, index(key.lookahead));
      if (do_shift) {
        e.kind = Direction::Shift;
        m.shift();
      } else {
        auto [it, fresh] = used.try_emplace({a, b}, rule_for(a, b));
        ++it->second.weight;
        ++corpus.reductions;
        const auto& r = it->second;
        e.kind = Direction::Reduce;
        const auto* rre = std::get_if<std::string>(&std::get<ConstRhs>(
            std::find_if(r.equations.begin(), r.equations.end(), [](const AttributeEquation& q) { return q.target == "rre"; })->rhs).value);
        e.reduce = ReduceDecision{r.head, r.left_role, r.right_role, *rre, r.equations};
        m.reduce(r.head, r.left_role, r.right_role, r.equations, AttributeSchema::standard());
      }
      log.events.push_back(std::move(e));
    }
    log.root = m.stack().front();
    corpus.logs.push_back(std::move(log));
  }
  for (auto& [key, rule] : used) corpus.rules.push_back(rule);
  return corpus;
}

NodePtr random_tree_over(std::mt19937& rng, int first, int last, std::size_t symbols, std::size_t labels) {
  if (first == last) {
    AttributeMap a;
    a.set("cue", StringSet{});
    a.set("position", std::int64_t{first});
    return test_leaf(first, "L" + std::to_string(rng() % symbols), std::move(a));
  }
  const int split = std::uniform_int_distribution<int>(first, last - 1)(rng);
  auto left = random_tree_over(rng, first, split, symbols, labels);
  auto right = random_tree_over(rng, split + 1, last, symbols, labels);
  static constexpr std::pair<Role, Role> kRoles[] = {
      {Role::Nucleus, Role::Satellite}, {Role::Satellite, Role::Nucleus}, {Role::Nucleus, Role::Nucleus}};
  const auto roles = kRoles[rng() % 3];
  std::vector<AttributeEquation> eqs{cue_union_equation(),
                                     {"rre", ConstRhs{"R" + std::to_string(rng() % labels)}}};
  return reduce_nodes(left, roles.first, right, roles.second, "D" + std::to_string(rng() % symbols), eqs,
                      AttributeSchema::standard());
}

NodePtr random_tree(std::mt19937& rng, std::size_t leaves, std::size_t symbols, std::size_t labels) {
  return random_tree_over(rng, 1, static_cast<int>(leaves), symbols, labels);
}

std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t max_len, std::size_t vocabulary) {
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(std::string(1, static_cast<char>('a' + rng() % vocabulary)));
  return out;
}

ClusterFixture cluster_fixture() {
  ClusterFixture e;
  auto entries = e.schema.entries();
  for (const char* name : {"u", "v", "s", "q", "r", "m"}) entries.push_back({name, AttrKind::Integer, AttrScope::Semantic});
  e.schema = AttributeSchema(entries);

  const ReasonAtom u{Slot::Left, "u", CompareOp::Lt, AttributeRef{Slot::Right, "s"}};
  const ReasonAtom v{Slot::Left, "v", CompareOp::Lt, AttributeRef{Slot::Right, "s"}};
  auto form = [&](std::string head, const ReasonAtom& gate, Role x, Role y, AttributeEquation eq, int count) {
    for (int i = 0; i < count; ++i) {
      RuleInstance r;
      r.head = head;
      r.reason = Reason::conjunction({gate});
      r.equations = {eq, {"rre", ConstRhs{std::string("Joint")}}};
      r.left_role = x;
      r.right_role = y;
      r.left = "A";
      r.right = "B";
      e.instances.push_back(r);
    }
  };
  const AttributeEquation q_r{"q", CopyRhs{Slot::Left, "r"}};
  const AttributeEquation q_r1{"q", OffsetRhs{Slot::Left, "r", 1}};
  const AttributeEquation q_r2{"q", OffsetRhs{Slot::Left, "r", 2}};
  const AttributeEquation m_q1{"m", OffsetRhs{Slot::Left, "q", -1}};
  const Role N = Role::Nucleus, S = Role::Satellite;
  form("D", u, N, S, q_r, 3);
  form("D", v, S, N, q_r1, 1);
  form("E", u, S, N, m_q1, 4);
  form("E", v, S, N, m_q1, 1);
  form("F", v, N, S, q_r1, 5);
  form("F", u, N, S, q_r2, 9);

  auto a = [](std::int64_t uu, std::int64_t vv) {
    return test_leaf(1, "A", {{"u", uu}, {"v", vv}, {"q", std::int64_t{0}}, {"r", std::int64_t{0}}});
  };
  e.a_u = a(0, 5);
  e.a_v = a(5, 0);
  e.a_both = a(0, 0);
  e.b = test_leaf(2, "B", {{"s", std::int64_t{1}}});
  return e;
}

Grammar cluster_grammar(const ClusterFixture& e) {
  Grammar g;
  g.dre = {"A", "B", "D", "E", "F"};
  g.rre = {"Joint"};
  g.schema = e.schema;
  g.productions = cluster_rules(e.instances);
  canonicalize(g);
  return g;
}

Grammar random_grammar(std::mt19937& rng, std::size_t productions, std::size_t precedences) {
  auto pick = [&](const char* prefix, int n) { return prefix + std::to_string(rng() % n); };
  auto entries = AttributeSchema::standard().entries();
  entries.push_back({"topic", AttrKind::Symbol, AttrScope::Semantic});
  Grammar g;
  g.schema = AttributeSchema(entries);
  for (int i = 0; i < 6; ++i) g.dre.insert("D" + std::to_string(i));
  g.dcp = {"g0", "r0"};
  g.rre = {"R0", "R1", "R2"};
  auto reason = [&] {
    if (rng() % 4 == 0) return Reason::always();
    std::vector<Conjunction> clauses(1 + rng() % 2);
    for (auto& c : clauses) {
      c.push_back({static_cast<Slot>(rng() % 3), "cue", CompareOp::SetEq, StringSet{pick("c", 4), pick("c", 4)}});
      if (rng() % 2) c.push_back({static_cast<Slot>(rng() % 3), "topic", CompareOp::Eq, pick("t", 3)});
      if (rng() % 3 == 0) c.push_back({Slot::Left, "topic", CompareOp::Neq, AttributeRef{Slot::Right, "topic"}});
    }
    return Reason::any_of(clauses);
  };
  for (std::size_t i = 0; i < productions; ++i) {
    ProductionRule p;
    p.head = pick("D", 6);
    p.left = pick("D", 6);
    p.right = pick("D", 6);
    p.left_role = rng() % 2 ? Role::Nucleus : Role::Satellite;
    p.right_role = p.left_role == Role::Satellite ? Role::Nucleus : (rng() % 2 ? Role::Nucleus : Role::Satellite);
    p.reason = reason();
    p.weight = 1 + rng() % 5;
    p.equations = {cue_union_equation(), {"rre", ConstRhs{pick("R", 3)}}};
    if (rng() % 2) p.equations.push_back({"topic", rng() % 2 ? EquationRhs{CopyRhs{Slot::Left, "topic"}} : EquationRhs{ConstRhs{pick("t", 3)}}});
    g.productions.push_back(std::move(p));
  }
  std::set<PrecedenceKey> keys;
  while (keys.size() < precedences) keys.insert({pick("D", 6), pick("D", 6), rng() % 5 ? pick("D", 6) : std::string(kEndSymbol)});
  for (const auto& k : keys) {
    const std::uint64_t s = rng() % 4, r = 1 + rng() % 4;
    if (s) g.precedences.push_back({k, Direction::Shift, reason(), s, Rational(static_cast<std::int64_t>(s), static_cast<std::int64_t>(s + r))});
    g.precedences.push_back({k, Direction::Reduce, reason(), r, Rational(static_cast<std::int64_t>(r), static_cast<std::int64_t>(s + r))});
  }
  canonicalize(g);
  return g;
}

ConceptMapping random_mapping(std::mt19937& rng, const std::set<std::string>& dre, const std::set<std::string>& literals,
                              const std::optional<std::string>& attribute, const std::string& prefix) {
  ConceptMapping m;
  std::size_t k = 0;
  for (const auto& s : dre) {
    if (rng() % 2) m.dre[s] = prefix + std::to_string(k++);
  }
  for (const auto& s : literals) {
    if (rng() % 2) m.literal[s] = prefix + std::to_string(k++);
  }
  if (attribute && rng() % 2) m.attribute[*attribute] = prefix + "_attr";
  return m;
}

DomainKnowledgeBase blue_dkb(const std::set<std::string>& ids) {
  std::vector<Concept> concepts;
  for (const auto& id : ids) concepts.push_back({id, Color::Blue, {"form " + id}, 1, std::nullopt, 0});
  return DomainKnowledgeBase("extension", std::move(concepts));
}

}  // namespace arsg::testing
