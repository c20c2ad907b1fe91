#include "morphex/match.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>

#include "morphex/error.hpp"

namespace morphex {

CompiledRule compile_rule(const Rule& rule, const RuleSet& rules) {
  CompiledRule out;
  out.name = rule.name;
  out.root = prepare_rule(rule, rules);
  out.nfa = build_nfa(out.root);
  return out;
}

std::vector<CompiledRule> compile_rules(const RuleSet& rules) {
  std::vector<CompiledRule> out;
  out.reserve(rules.rules.size());
  for (const auto& r : rules.rules) out.push_back(compile_rule(r, rules));
  return out;
}

namespace {

struct Event {
  enum class Kind : std::uint8_t { Open, Close, Leaf };
  Kind kind;
  std::uint32_t node;
  std::uint32_t pos;
};

// Persistent event list, newest first; threads share common prefixes.
struct Cell {
  Event event;
  std::shared_ptr<const Cell> prev;
};
using Trace = std::shared_ptr<const Cell>;

Trace push(Trace t, Event e) { return std::make_shared<const Cell>(Cell{e, std::move(t)}); }

std::vector<Event> unwind(const Trace& t) {
  std::vector<Event> events;
  for (const Cell* c = t.get(); c; c = c->prev.get()) events.push_back(c->event);
  std::reverse(events.begin(), events.end());
  return events;
}

// Choice indices taken at every branch; lexicographic order is priority
// order. Only maintained for automata with And states, where threads resume
// at later positions and must be merged back in priority order.
using Key = std::vector<std::uint32_t>;

struct Thread {
  std::uint32_t state;
  Trace trace;
  Key key;
};

Key extend(const Key& key, bool keyed, std::uint32_t choice) {
  if (!keyed) return {};
  Key k = key;
  k.push_back(choice);
  return k;
}

class Runner {
public:
  Runner(const TagSetSequence& seq, const std::string& rule, std::size_t maxSteps)
      : seq_(seq), rule_(rule), max_steps_(maxSteps) {}

  // Highest-priority trace for every end position reachable from `start`.
  using Ends = std::map<std::size_t, Trace>;

  Ends run(const Nfa& nfa, std::size_t start) {
    const bool keyed = nfa.has_and();
    const auto& states = nfa.states();
    std::vector<std::size_t> mark(states.size(), std::numeric_limits<std::size_t>::max());
    std::map<std::size_t, std::vector<Thread>> pending;
    std::vector<Thread> seeds{Thread{nfa.start(), nullptr, {}}};
    Ends best;

    for (std::size_t pos = start; pos <= seq_.size(); ++pos) {
      if (auto it = pending.find(pos); it != pending.end()) {
        for (auto& th : it->second) seeds.push_back(std::move(th));
        pending.erase(it);
        std::stable_sort(seeds.begin(), seeds.end(),
                         [](const Thread& a, const Thread& b) { return a.key < b.key; });
      }
      if (seeds.empty()) {
        if (pending.empty()) break;
        pos = pending.begin()->first - 1;
        continue;
      }
      std::vector<Thread> list = closure(nfa, seeds, pos, mark, pending, keyed);
      seeds.clear();
      for (auto& th : list) {
        const auto& s = states[th.state];
        if (s.type == Nfa::StateType::Accept) {
          best.emplace(pos, th.trace);  // first accept in list order wins
        } else if (pos < seq_.size() && fires(nfa.info(s), pos)) {
          tick();
          seeds.push_back(Thread{s.out.at(0),
                                 push(th.trace, Event{Event::Kind::Leaf, s.node,
                                                      static_cast<std::uint32_t>(pos)}),
                                 std::move(th.key)});
        }
      }
    }
    return best;
  }

private:
  void tick() {
    if (++steps_ > max_steps_) throw BudgetExceeded(rule_, max_steps_);
  }

  bool fires(const NodeInfo& info, std::size_t pos) const {
    if (info.other) return seq_.is_other(pos);
    return seq_.perWord[pos].count(info.symbol) != 0;
  }

  const Ends& run_memo(const Nfa& nfa, std::size_t start) {
    const auto key = std::make_pair(&nfa, start);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, run(nfa, start)).first;
    return it->second;
  }

  std::vector<Thread> closure(const Nfa& nfa, const std::vector<Thread>& seeds, std::size_t pos,
                              std::vector<std::size_t>& mark,
                              std::map<std::size_t, std::vector<Thread>>& pending, bool keyed) {
    using T = Nfa::StateType;
    const auto& states = nfa.states();
    const auto upos = static_cast<std::uint32_t>(pos);
    std::vector<Thread> list;
    std::vector<Thread> stack;
    for (const auto& seed : seeds) {
      stack.push_back(seed);
      while (!stack.empty()) {
        Thread th = std::move(stack.back());
        stack.pop_back();
        tick();
        if (mark[th.state] == pos) continue;
        mark[th.state] = pos;
        const auto& s = states[th.state];
        switch (s.type) {
          case T::Symbol:
          case T::Accept:
            list.push_back(std::move(th));
            break;
          case T::Split:
            for (std::size_t i = s.out.size(); i-- > 0;)
              stack.push_back(Thread{s.out[i], th.trace,
                                     extend(th.key, keyed, static_cast<std::uint32_t>(i))});
            break;
          case T::Open:
            stack.push_back(Thread{s.out.at(0), push(th.trace, Event{Event::Kind::Open, s.node, upos}),
                                   std::move(th.key)});
            break;
          case T::Close:
            stack.push_back(Thread{s.out.at(0),
                                   push(th.trace, Event{Event::Kind::Close, s.node, upos}),
                                   std::move(th.key)});
            break;
          case T::And: {
            const Ends& left = run_memo(nfa.subs()[s.left], pos);
            const Ends& right = run_memo(nfa.subs()[s.right], pos);
            std::uint32_t choice = 0;
            for (auto it = left.rbegin(); it != left.rend(); ++it) {
              if (!right.count(it->first)) continue;
              Trace t = th.trace;
              for (const auto& e : unwind(it->second)) t = push(std::move(t), e);
              Thread next{s.out.at(0), std::move(t), extend(th.key, keyed, choice++)};
              if (it->first == pos)
                stack.push_back(std::move(next));  // empty span is the lowest choice
              else
                pending[it->first].push_back(std::move(next));
            }
            break;
          }
        }
      }
    }
    return list;
  }

  const TagSetSequence& seq_;
  const std::string& rule_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  std::map<std::pair<const Nfa*, std::size_t>, Ends> memo_;
};

MatchNode from_info(const NodeInfo& info, std::uint32_t id) {
  MatchNode m;
  m.kind = info.kind;
  m.node = id;
  m.symbol = info.symbol;
  m.path = info.path;
  m.repetition = info.repetition;
  return m;
}

MatchNode build_tree(const Nfa& nfa, const Trace& trace) {
  const auto& nodes = nfa.nodes();
  std::vector<MatchNode> stack;
  MatchNode root;
  for (const auto& e : unwind(trace)) {
    switch (e.kind) {
      case Event::Kind::Open: {
        MatchNode m = from_info(nodes[e.node], e.node);
        m.begin = e.pos;
        stack.push_back(std::move(m));
        break;
      }
      case Event::Kind::Close: {
        MatchNode m = std::move(stack.back());
        stack.pop_back();
        m.end = e.pos;
        if (stack.empty())
          root = std::move(m);
        else if (m.end > m.begin)
          stack.back().children.push_back(std::move(m));
        break;
      }
      case Event::Kind::Leaf: {
        const auto& info = nodes[e.node];
        MatchNode leaf = from_info(info, e.node);
        leaf.begin = e.pos;
        leaf.end = e.pos + 1;
        leaf.leafLabel = info.other ? std::string(kNoneLabel) : info.symbol;
        if (stack.empty())
          root = std::move(leaf);
        else
          stack.back().children.push_back(std::move(leaf));
        break;
      }
    }
  }
  return root;
}

}  // namespace

std::set<std::size_t> accepting_ends(const CompiledRule& rule, const TagSetSequence& seq,
                                     std::size_t start, const SimulationOptions& options) {
  Runner runner(seq, rule.name, options.maxSteps);
  std::set<std::size_t> ends;
  for (const auto& [end, trace] : runner.run(rule.nfa, start)) ends.insert(end);
  return ends;
}

std::vector<MatchTree> simulate(const CompiledRule& rule, const TagSetSequence& seq,
                                const SimulationOptions& options) {
  Runner runner(seq, rule.name, options.maxSteps);
  std::vector<MatchTree> out;
  std::size_t i = 0;
  while (i < seq.size()) {
    const auto best = runner.run(rule.nfa, i);
    if (!best.empty() && best.rbegin()->first > i) {
      const auto& [end, trace] = *best.rbegin();
      out.push_back(MatchTree{rule.name, build_tree(rule.nfa, trace)});
      i = end;
    } else {
      ++i;
    }
  }
  return out;
}

std::size_t leaf_count(const MatchNode& node) {
  if (node.is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : node.children) n += leaf_count(c);
  return n;
}

void for_each_node(const MatchNode& node, const std::function<void(const MatchNode&)>& fn) {
  fn(node);
  for (const auto& c : node.children) for_each_node(c, fn);
}

std::string check_tree(const MatchNode& node) {
  const std::string where = std::string(to_string(node.kind)) + " [" + std::to_string(node.begin) +
                            "," + std::to_string(node.end) + ")";
  if (node.end <= node.begin) return where + ": empty span";
  if (node.is_leaf()) {
    if (node.end != node.begin + 1) return where + ": leaf spans more than one word";
    if (!node.children.empty()) return where + ": leaf has children";
    if (node.leafLabel.empty()) return where + ": leaf without label";
    return {};
  }
  if (node.children.empty()) return where + ": internal node without children";
  std::size_t cursor = node.begin;
  for (const auto& c : node.children) {
    if (c.begin != cursor) return where + ": children do not partition the span";
    cursor = c.end;
    if (auto problem = check_tree(c); !problem.empty()) return problem;
  }
  if (cursor != node.end) return where + ": children do not cover the span";
  if (leaf_count(node) != node.end - node.begin) return where + ": leaf count differs from span";
  return {};
}

}  // namespace morphex
