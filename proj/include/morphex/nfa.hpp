#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "morphex/rules.hpp"

namespace morphex {

/// What a prepared rule node looks like to the simulator and tree builder.
struct NodeInfo {
  NodeKind kind = NodeKind::Label;
  std::string symbol;
  std::string path;
  bool repetition = false;
  bool other = false;  // Label node matching the NONE tag set
};

/// Thompson automaton over tag labels.
///
/// Symbol states consume one word whose tag set contains `symbol` (or is
/// exactly {NONE} for the other formula). Split states branch with ordered
/// priority. Open/Close states mark subexpression boundaries for tree
/// reconstruction. And states run two sub-automata from the current position
/// and continue where both accept the same span.
class Nfa {
public:
  enum class StateType : std::uint8_t { Symbol, Split, Open, Close, And, Accept };

  struct State {
    StateType type = StateType::Split;
    std::uint32_t node = 0;  // rule node id (Symbol, Open, Close, And)
    std::vector<std::uint32_t> out;
    std::uint32_t left = 0;   // And: index into subs()
    std::uint32_t right = 0;
  };

  const std::vector<State>& states() const { return states_; }
  std::uint32_t start() const { return start_; }
  std::uint32_t accept() const { return accept_; }
  const std::vector<Nfa>& subs() const { return subs_; }
  const std::vector<NodeInfo>& nodes() const { return *nodes_; }
  bool has_and() const { return !subs_.empty(); }

  /// Symbol a Symbol state tests, taken from its rule node.
  const NodeInfo& info(const State& s) const { return (*nodes_)[s.node]; }

private:
  friend class NfaBuilder;

  std::vector<State> states_;
  std::uint32_t start_ = 0;
  std::uint32_t accept_ = 0;
  std::vector<Nfa> subs_;
  std::shared_ptr<const std::vector<NodeInfo>> nodes_;
};

/// Builds the automaton of a prepared rule (up-to nodes already expanded).
Nfa build_nfa(const RuleNode& prepared);

/// Node table indexed by RuleNode::id.
std::vector<NodeInfo> node_table(const RuleNode& prepared);

}  // namespace morphex
