#include "arsg/parser.hpp"

#include <algorithm>

#include <json.hpp>

#include "arsg/stack_machine.hpp"

namespace arsg {

std::string_view to_string(Backoff b) {
  switch (b) {
    case Backoff::Fail: return "fail";
    case Backoff::MajorityAbcStar: return "majority";
    case Backoff::DefaultShift: return "shift";
  }
  return "fail";
}

std::optional<Backoff> parse_backoff(std::string_view text) {
  for (auto b : {Backoff::Fail, Backoff::MajorityAbcStar, Backoff::DefaultShift}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

std::vector<RankedRule> applicable_rules(const Grammar& g, const ArtrNode& a, const ArtrNode& b, TieBreak tie_break) {
  auto lo = std::lower_bound(g.productions.begin(), g.productions.end(), std::tie(a.dre, b.dre),
                             [](const ProductionRule& r, const auto& probe) { return std::tie(r.left, r.right) < probe; });
  const ParseContext ctx{&a.attributes, &b.attributes, nullptr};
  std::vector<RankedRule> out;
  std::uint64_t total = 0;
  for (auto it = lo; it != g.productions.end() && it->left == a.dre && it->right == b.dre; ++it) {
    if (!eval_reason(it->reason, ctx)) continue;
    out.push_back({static_cast<std::size_t>(it - g.productions.begin()), Rational(static_cast<std::int64_t>(it->weight))});
    total += it->weight;
  }
  if (out.empty()) throw Error(ErrorCode::NoApplicableRule, "no rule reduces " + a.dre + ", " + b.dre);
  for (auto& r : out) r.probability /= static_cast<std::int64_t>(total);
  std::stable_sort(out.begin(), out.end(), [&](const RankedRule& x, const RankedRule& y) {
    if (x.probability != y.probability) return x.probability > y.probability;
    if (tie_break == TieBreak::LowestHeadSymbol) {
      const auto& hx = g.productions[x.index].head;
      const auto& hy = g.productions[y.index].head;
      if (hx != hy) return hx < hy;
    }
    return x.index < y.index;
  });
  return out;
}

Decision decide_action(const Grammar& g, const ArtrNode& a, const ArtrNode& b, const ArtrNode* c,
                       const ParseConfig& config) {
  if (!c) {
    applicable_rules(g, a, b, config.tie_break);
    return {{Direction::Reduce}, Decision::Source::EndOfInput};
  }
  const ParseContext ctx{&a.attributes, &b.attributes, &c->attributes};
  const PrecedenceKey key{a.dre, b.dre, c->dre};
  const auto* shift = g.find_precedence(key, Direction::Shift);
  const auto* reduce = g.find_precedence(key, Direction::Reduce);
  const bool s = shift && eval_reason(shift->reason, ctx);
  const bool r = reduce && eval_reason(reduce->reason, ctx);
  if (s && r) {
    if (shift->probability > reduce->probability) return {{Direction::Shift, Direction::Reduce}};
    return {{Direction::Reduce, Direction::Shift}};
  }
  if (s) return {{Direction::Shift}};
  if (r) return {{Direction::Reduce}};

  switch (config.backoff) {
    case Backoff::Fail:
      throw Error(ErrorCode::NoAction, "no precedence tuple holds for (" + key.left + ", " + key.middle + ", " +
                                           key.lookahead + ")");
    case Backoff::DefaultShift:
      return {{Direction::Shift, Direction::Reduce}, Decision::Source::Backoff};
    case Backoff::MajorityAbcStar: {
      std::uint64_t shifts = 0;
      std::uint64_t reduces = 0;
      for (const auto& t : g.precedences_for(a.dre, b.dre)) (t.direction == Direction::Shift ? shifts : reduces) += t.count;
      if (reduces > shifts) return {{Direction::Reduce, Direction::Shift}, Decision::Source::Backoff};
      return {{Direction::Shift, Direction::Reduce}, Decision::Source::Backoff};
    }
  }
  return {{Direction::Shift}, Decision::Source::Backoff};
}

namespace {

struct Action {
  Direction direction = Direction::Shift;
  std::size_t rule = 0;
  Rational probability{1};
};

struct ChoicePoint {
  StackMachine::State state;
  std::vector<Action> untried;  // in preference order, consumed from the front
  std::size_t next = 0;
};

class Search {
 public:
  Search(const Grammar& g, std::span<const NodePtr> leaves, const ParseConfig& config)
      : g_(g), config_(config), machine_(std::vector<NodePtr>(leaves.begin(), leaves.end())) {}

  ParseResult run() {
    remember_best();
    while (!machine_.done()) {
      auto actions = expand();
      if (actions.empty()) {
        emit("dead_end");
        backtrack();
        continue;
      }
      Action first = actions.front();
      actions.erase(actions.begin());
      if (!actions.empty()) trail_.push_back({machine_.state(), std::move(actions)});
      if (!apply(first)) backtrack();
    }
    emit("done");
    return {machine_.stack().front(), stats_};
  }

 private:
  std::vector<Action> expand() {
    std::vector<Action> out;
    Decision decision;
    try {
      const NodePtr* c = machine_.lookahead();
      decision = decide_action(g_, *machine_.left(), *machine_.right(), c ? c->get() : nullptr, config_);
    } catch (const Error&) {
      return out;
    }
    for (Direction d : decision.alternatives) {
      if (d == Direction::Shift) {
        if (machine_.remaining() > 0) out.push_back({Direction::Shift});
        continue;
      }
      try {
        for (const auto& r : applicable_rules(g_, *machine_.left(), *machine_.right(), config_.tie_break)) {
          out.push_back({Direction::Reduce, r.index, r.probability});
        }
      } catch (const Error&) {
      }
    }
    return out;
  }

  bool apply(const Action& a) {
    ++stats_.steps;
    const auto key = machine_.key();
    if (a.direction == Direction::Shift) {
      machine_.shift();
      emit("shift", &key);
    } else {
      const auto& rule = g_.productions[a.rule];
      try {
        machine_.reduce(rule.head, rule.left_role, rule.right_role, rule.equations, g_.schema, a.rule);
      } catch (const Error&) {
        emit("dead_end", &key);
        return false;
      }
      emit("reduce", &key, &a);
    }
    remember_best();
    return true;
  }

  void backtrack() {
    for (;;) {
      while (!trail_.empty() && trail_.back().next >= trail_.back().untried.size()) trail_.pop_back();
      if (trail_.empty()) fail("all alternatives exhausted");
      if (stats_.backtracks + 1 >= config_.max_backtracks) fail("backtrack limit reached");
      ++stats_.backtracks;
      auto& point = trail_.back();
      machine_.restore(point.state);
      Action next = point.untried[point.next++];
      emit("backtrack");
      if (apply(next)) return;
    }
  }

  [[noreturn]] void fail(const std::string& why) {
    emit("fail");
    throw ParseFailure("parse failed: " + why, best_, stats_);
  }

  void remember_best() {
    const std::size_t size = machine_.stack().size() + machine_.remaining();
    if (!best_.empty() && size >= best_.size()) return;
    best_ = machine_.stack();
    const auto& input = machine_.input();
    best_.insert(best_.end(), input.end() - static_cast<std::ptrdiff_t>(machine_.remaining()), input.end());
  }

  void emit(std::string_view event, const PrecedenceKey* key = nullptr, const Action* action = nullptr) {
    if (!config_.trace) return;
    nlohmann::json j = {{"step", stats_.steps},
                        {"event", event},
                        {"stack", machine_.stack().size()},
                        {"remaining", machine_.remaining()},
                        {"backtracks", stats_.backtracks}};
    if (key) j["context"] = {key->left, key->middle, key->lookahead};
    if (action) {
      j["rule"] = action->rule;
      j["head"] = g_.productions[action->rule].head;
      j["probability"] = to_string(action->probability);
    }
    config_.trace(j.dump());
  }

  const Grammar& g_;
  const ParseConfig& config_;
  StackMachine machine_;
  std::vector<ChoicePoint> trail_;
  std::vector<NodePtr> best_;
  ParseStats stats_;
};

}  // namespace

ParseResult parse(const Grammar& g, std::span<const NodePtr> leaves, const ParseConfig& config) {
  if (leaves.empty()) throw Error(ErrorCode::EmptyInput, "nothing to parse");
  if (config.max_backtracks < 1) throw Error(ErrorCode::BadRequest, "max_backtracks must be at least 1");
  return Search(g, leaves, config).run();
}

}  // namespace arsg
