#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace morphex {

enum class NodeKind { Label, Concat, Star, Plus, Optional, UpTo, And, Or, RuleRef };

std::string_view to_string(NodeKind kind);
NodeKind node_kind_from(std::string_view name);

/// Expression tree of one rule.
///
/// `symbol` is the formula label of a Label node or the rule name of a
/// RuleRef node. `binding` is the local `$name=` binding; `path` is the fully
/// qualified binding path and `id` the pre-order number, both filled in by
/// prepare_rule(). A RuleRef scopes the bindings inside the referenced rule
/// under its own binding (or the rule name when unbound).
struct RuleNode {
  NodeKind kind = NodeKind::Label;
  std::string symbol;
  unsigned count = 0;  // UpTo bound
  std::string binding;
  std::vector<RuleNode> children;

  // Concat/Optional nodes produced by up-to expansion group repetitions.
  bool repetition = false;

  std::uint32_t id = 0;
  std::string path;

  std::size_t line = 0;
  std::size_t column = 0;

  /// Structural equality: kind, symbol, count, binding and children.
  bool same_shape(const RuleNode& other) const;
};

RuleNode label(std::string symbol);
RuleNode concat(std::vector<RuleNode> children);
RuleNode alt(std::vector<RuleNode> children);
RuleNode conj(RuleNode left, RuleNode right);
RuleNode star(RuleNode child);
RuleNode plus(RuleNode child);
RuleNode optional(RuleNode child);
RuleNode upto(RuleNode child, unsigned count);
RuleNode bind(std::string name, RuleNode node);

struct Rule {
  std::string name;
  RuleNode root;
  std::size_t line = 0;
};

/// Rules in definition order; a rule references only earlier rules.
struct RuleSet {
  std::vector<Rule> rules;

  const Rule* find(std::string_view name) const;
};

/// Parses `name: expr;` definitions.
///
///   expr    := conj ('|' conj)*
///   conj    := seq ('&' seq)*
///   seq     := unary+
///   unary   := ('$' ident '=')? postfix
///   postfix := atom ('?' | '*' | '+' | '^' int)*
///   atom    := ident | '(' expr ')'
///
/// Identifiers resolve to `knownLabels`, an "other" alias (NONE, OTHER, O) or
/// an earlier rule. `#` and `//` start line comments. Throws ParseError.
RuleSet parse_rules(std::string_view source, const std::set<std::string>& knownLabels);

/// Renders an expression back to rule-language text.
std::string to_source(const RuleNode& node);
std::string to_source(const RuleSet& rules);

/// Rewrites f^x as f? | ff | ... | f{x}; f^1 becomes f?.
RuleNode expand_upto(const RuleNode& node);

/// Replaces each RuleRef's (empty) body with a copy of the referenced rule.
RuleNode inline_rules(const RuleNode& node, const RuleSet& rules);

/// inline_rules + expand_upto + id/path numbering.
RuleNode prepare_rule(const Rule& rule, const RuleSet& rules);

/// Every binding path occurring in a prepared tree.
std::set<std::string> binding_paths(const RuleNode& prepared);

/// True iff some node bound at `path` sits under a Star, Plus or up-to group.
bool path_under_repetition(const RuleNode& prepared, std::string_view path);

}  // namespace morphex
