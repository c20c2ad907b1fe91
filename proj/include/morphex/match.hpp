#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "morphex/formula.hpp"
#include "morphex/nfa.hpp"
#include "morphex/rules.hpp"

namespace morphex {

/// Node of a match parse tree. Spans are word indices [begin, end).
/// Leaves are Label nodes; `leafLabel` is the tag that fired (NONE for the
/// other formula). Zero-width subexpressions are omitted.
struct MatchNode {
  NodeKind kind = NodeKind::Label;
  std::uint32_t node = 0;  // prepared rule node id
  std::string symbol;
  std::string path;
  bool repetition = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string leafLabel;
  std::vector<MatchNode> children;

  bool is_leaf() const { return kind == NodeKind::Label; }
  bool operator==(const MatchNode&) const = default;
};

struct MatchTree {
  std::string rule;
  MatchNode root;

  std::size_t begin() const { return root.begin; }
  std::size_t end() const { return root.end; }
  bool operator==(const MatchTree&) const = default;
};

/// A rule ready to simulate: prepared tree plus its automaton.
struct CompiledRule {
  std::string name;
  RuleNode root;
  Nfa nfa;
};

CompiledRule compile_rule(const Rule& rule, const RuleSet& rules);
std::vector<CompiledRule> compile_rules(const RuleSet& rules);

inline constexpr std::size_t kDefaultMaxSteps = 10'000'000;

struct SimulationOptions {
  std::size_t maxSteps = kDefaultMaxSteps;
};

/// Positions at which a match starting at `start` may end (including
/// `start` itself when the expression accepts the empty sequence).
std::set<std::size_t> accepting_ends(const CompiledRule& rule, const TagSetSequence& seq,
                                     std::size_t start, const SimulationOptions& options = {});

/// Leftmost-longest, non-overlapping matches of one rule, sorted by start.
/// Empty matches are never reported. Throws BudgetExceeded.
std::vector<MatchTree> simulate(const CompiledRule& rule, const TagSetSequence& seq,
                                const SimulationOptions& options = {});

/// Number of leaves under a node.
std::size_t leaf_count(const MatchNode& node);

/// Visits nodes in pre-order.
void for_each_node(const MatchNode& node, const std::function<void(const MatchNode&)>& fn);

/// Checks span partition and leaf invariants; returns an empty string when
/// the tree is well formed, otherwise a description of the first violation.
std::string check_tree(const MatchNode& node);

}  // namespace morphex
