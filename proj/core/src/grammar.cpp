#include "arsg/grammar.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace arsg {

std::string_view to_string(Direction d) { return d == Direction::Shift ? "shift" : "reduce"; }

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "shift") return Direction::Shift;
  if (text == "reduce") return Direction::Reduce;
  return std::nullopt;
}

std::string to_string(const ProductionRule& rule) {
  std::string out = "(";
  for (std::size_t i = 0; i < rule.equations.size(); ++i) {
    if (i) out += ", ";
    out += to_string(rule.equations[i]);
  }
  out += "): " + rule.head + "(" + to_string(rule.reason) + ") <- " + rule.left + "(" +
         std::string(to_string(rule.left_role)) + "), " + rule.right + "(" + std::string(to_string(rule.right_role)) +
         "); " + std::to_string(rule.weight);
  return out;
}

const PrecedenceTuple* Grammar::find_precedence(const PrecedenceKey& key, Direction direction) const {
  auto it = std::lower_bound(precedences.begin(), precedences.end(), std::tie(key, direction),
                             [](const PrecedenceTuple& t, const auto& probe) {
                               return std::tie(t.key, t.direction) < probe;
                             });
  if (it != precedences.end() && it->key == key && it->direction == direction) return &*it;
  return nullptr;
}

std::span<const PrecedenceTuple> Grammar::precedences_for(std::string_view left, std::string_view middle) const {
  auto lo = std::lower_bound(precedences.begin(), precedences.end(), std::pair(left, middle),
                             [](const PrecedenceTuple& t, const auto& probe) {
                               return std::tie(t.key.left, t.key.middle) <
                                      std::tie(probe.first, probe.second);
                             });
  auto hi = lo;
  while (hi != precedences.end() && hi->key.left == left && hi->key.middle == middle) ++hi;
  return {lo, hi};
}

namespace {

bool reason_less(const Reason& a, const Reason& b) {
  if (a.is_constant_true() != b.is_constant_true()) return a.is_constant_true();
  return a.clauses() < b.clauses();
}

bool production_less(const ProductionRule& a, const ProductionRule& b) {
  auto ka = std::tie(a.left, a.right, a.head, a.left_role, a.right_role);
  auto kb = std::tie(b.left, b.right, b.head, b.left_role, b.right_role);
  if (ka != kb) return ka < kb;
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.equations != b.equations) return a.equations < b.equations;
  return reason_less(a.reason, b.reason);
}

}  // namespace

void canonicalize(Grammar& grammar) {
  for (auto& rule : grammar.productions) rule.equations = canonical_equations(std::move(rule.equations));
  std::stable_sort(grammar.productions.begin(), grammar.productions.end(), production_less);
  std::stable_sort(grammar.precedences.begin(), grammar.precedences.end(),
                   [](const PrecedenceTuple& a, const PrecedenceTuple& b) {
                     return std::tie(a.key, a.direction) < std::tie(b.key, b.direction);
                   });
}

std::vector<Diagnostic> validate_grammar(const Grammar& g) {
  std::vector<Diagnostic> out;
  auto add = [&](std::string invariant, std::string element) {
    out.push_back({std::move(invariant), std::move(element)});
  };
  auto known = [&](const std::string& symbol) { return g.dre.count(symbol) > 0; };

  if (g.start.empty()) add("start symbol present", "start");

  for (std::size_t i = 0; i < g.productions.size(); ++i) {
    const auto& rule = g.productions[i];
    const std::string where = "production #" + std::to_string(i) + " " + to_string(rule);
    if (rule.weight < 1) add("weight >= 1", where);
    if (rule.left_role == Role::Satellite && rule.right_role == Role::Satellite) add("roles not (S,S)", where);
    for (const auto* sym : {&rule.head, &rule.left, &rule.right}) {
      if (!known(*sym)) add("symbol in DRE", where + " uses '" + *sym + "'");
    }
    if (!rule.reason.is_constant_true() && rule.reason.clauses().empty()) add("reason non-empty", where);
    for (const auto& p : check_reason(rule.reason, g.schema)) add("reason fits schema", where + ": " + p);
    for (const auto& p : check_equations(rule.equations, g.schema)) add("equation fits schema", where + ": " + p);
    bool assigns_rre = false;
    for (const auto& eq : rule.equations) {
      if (eq.target != attr::rre) continue;
      assigns_rre = true;
      if (const auto* c = std::get_if<ConstRhs>(&eq.rhs)) {
        if (const auto* label = std::get_if<std::string>(&c->value); label && !g.rre.count(*label)) {
          add("rre label in RRE", where + " uses '" + *label + "'");
        }
      }
    }
    if (!assigns_rre) add("production assigns rre", where);
  }

  std::map<PrecedenceKey, std::pair<const PrecedenceTuple*, const PrecedenceTuple*>> by_key;
  for (std::size_t i = 0; i < g.precedences.size(); ++i) {
    const auto& t = g.precedences[i];
    const std::string where = "precedence #" + std::to_string(i) + " (" + t.key.left + ", " + t.key.middle + ", " +
                              t.key.lookahead + ", " + std::string(to_string(t.direction)) + ")";
    if (i > 0) {
      const auto& prev = g.precedences[i - 1];
      if (!(std::tie(prev.key, prev.direction) < std::tie(t.key, t.direction))) {
        add("precedences canonical and unique per (A,B,C,direction)", where);
      }
    }
    if (!known(t.key.left) || !known(t.key.middle)) add("symbol in DRE", where);
    if (t.key.lookahead != kEndSymbol && !known(t.key.lookahead)) add("symbol in DRE", where);
    if (t.probability <= Rational(0) || t.probability > Rational(1)) add("probability in (0,1]", where);
    if (t.count < 1) add("count >= 1", where);
    if (!t.reason.is_constant_true() && t.reason.clauses().empty()) add("reason non-empty", where);
    for (const auto& p : check_reason(t.reason, g.schema)) add("reason fits schema", where + ": " + p);
    auto& slot = by_key[t.key];
    (t.direction == Direction::Shift ? slot.first : slot.second) = &t;
  }
  for (const auto& [key, pair] : by_key) {
    const auto* shift = pair.first;
    const auto* reduce = pair.second;
    const std::string where = "(" + key.left + ", " + key.middle + ", " + key.lookahead + ")";
    if (shift && reduce) {
      const auto total = static_cast<std::int64_t>(shift->count + reduce->count);
      if (shift->probability + reduce->probability != Rational(1)) {
        add("p_shift + p_reduce = 1", where);
      } else if (shift->probability != Rational(static_cast<std::int64_t>(shift->count), total) ||
          reduce->probability != Rational(static_cast<std::int64_t>(reduce->count), total)) {
        add("probability = count / total", where);
      }
    } else {
      const auto* only = shift ? shift : reduce;
      if (only && only->probability != Rational(1)) add("lone direction has probability 1", where);
    }
  }

  return out;
}

}  // namespace arsg
