#include "morphex/nfa.hpp"

#include "morphex/error.hpp"
#include "morphex/formula.hpp"

namespace morphex {

namespace {

void fill_table(const RuleNode& node, std::vector<NodeInfo>& table) {
  if (node.id >= table.size()) table.resize(node.id + 1);
  auto& info = table[node.id];
  info.kind = node.kind;
  info.symbol = node.symbol;
  info.path = node.path;
  info.repetition = node.repetition;
  info.other = node.kind == NodeKind::Label && is_other_alias(node.symbol);
  for (const auto& c : node.children) fill_table(c, table);
}

}  // namespace

std::vector<NodeInfo> node_table(const RuleNode& prepared) {
  std::vector<NodeInfo> table;
  fill_table(prepared, table);
  return table;
}

class NfaBuilder {
public:
  explicit NfaBuilder(std::shared_ptr<const std::vector<NodeInfo>> nodes) {
    nfa_.nodes_ = std::move(nodes);
  }

  Nfa build(const RuleNode& root) {
    const Fragment f = compile(root);
    const auto accept = add(Nfa::StateType::Accept, 0);
    patch(f, accept);
    nfa_.start_ = f.start;
    nfa_.accept_ = accept;
    return std::move(nfa_);
  }

private:
  using StateType = Nfa::StateType;

  // A fragment has one entry and a list of dangling exits to patch.
  struct Fragment {
    std::uint32_t start;
    std::vector<std::uint32_t> exits;
  };

  std::uint32_t add(StateType type, std::uint32_t node) {
    Nfa::State s;
    s.type = type;
    s.node = node;
    nfa_.states_.push_back(std::move(s));
    return static_cast<std::uint32_t>(nfa_.states_.size() - 1);
  }

  void patch(const Fragment& f, std::uint32_t target) {
    for (auto e : f.exits) nfa_.states_[e].out.push_back(target);
  }

  // Open -> inner -> Close
  Fragment wrap(const RuleNode& n, Fragment inner) {
    const auto open = add(StateType::Open, n.id);
    const auto close = add(StateType::Close, n.id);
    nfa_.states_[open].out.push_back(inner.start);
    patch(inner, close);
    return {open, {close}};
  }

  Fragment compile(const RuleNode& n) {
    switch (n.kind) {
      case NodeKind::Label: {
        const auto s = add(StateType::Symbol, n.id);
        return {s, {s}};
      }
      case NodeKind::RuleRef:
        return wrap(n, compile(n.children.at(0)));
      case NodeKind::Concat: {
        Fragment first = compile(n.children.at(0));
        Fragment last = first;
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          Fragment next = compile(n.children[i]);
          patch(last, next.start);
          last = next;
        }
        return wrap(n, Fragment{first.start, last.exits});
      }
      case NodeKind::Or: {
        const auto split = add(StateType::Split, n.id);
        Fragment out{split, {}};
        for (const auto& c : n.children) {
          Fragment f = compile(c);
          nfa_.states_[split].out.push_back(f.start);
          out.exits.insert(out.exits.end(), f.exits.begin(), f.exits.end());
        }
        return wrap(n, out);
      }
      case NodeKind::Optional: {
        const auto split = add(StateType::Split, n.id);
        Fragment body = compile(n.children.at(0));
        nfa_.states_[split].out.push_back(body.start);
        Fragment out{split, body.exits};
        out.exits.push_back(split);  // skip branch, lower priority
        return wrap(n, out);
      }
      case NodeKind::Star: {
        const auto loop = add(StateType::Split, n.id);
        Fragment body = compile(n.children.at(0));
        nfa_.states_[loop].out.push_back(body.start);
        patch(body, loop);
        return wrap(n, Fragment{loop, {loop}});
      }
      case NodeKind::Plus: {
        const auto loop = add(StateType::Split, n.id);
        Fragment body = compile(n.children.at(0));
        patch(body, loop);
        nfa_.states_[loop].out.push_back(body.start);
        return wrap(n, Fragment{body.start, {loop}});
      }
      case NodeKind::And: {
        const auto s = add(StateType::And, n.id);
        nfa_.states_[s].left = static_cast<std::uint32_t>(nfa_.subs_.size());
        nfa_.subs_.push_back(NfaBuilder(nfa_.nodes_).build(n.children.at(0)));
        nfa_.states_[s].right = static_cast<std::uint32_t>(nfa_.subs_.size());
        nfa_.subs_.push_back(NfaBuilder(nfa_.nodes_).build(n.children.at(1)));
        return wrap(n, Fragment{s, {s}});
      }
      case NodeKind::UpTo:
        throw Error("up-to node reached the automaton builder unexpanded");
    }
    throw Error("unknown rule node");
  }

  Nfa nfa_;
};

Nfa build_nfa(const RuleNode& prepared) {
  auto table = std::make_shared<const std::vector<NodeInfo>>(node_table(prepared));
  return NfaBuilder(std::move(table)).build(prepared);
}

}  // namespace morphex
