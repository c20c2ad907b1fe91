#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphex/document.hpp"
#include "morphex/match.hpp"
#include "morphex/synk.hpp"

namespace morphex {

inline constexpr std::string_view kIsSynLabel = "isSyn";

/// ⟨source, destination, label⟩ over binding paths of one rule. The rule
/// root is addressed by the rule name. With `next`, the destination is taken
/// from the following iteration of the repetition enclosing the source.
struct RelationDef {
  std::string name;
  std::string rule;
  std::string source;
  std::string destination;
  std::string label;
  bool next = false;

  bool operator==(const RelationDef&) const = default;
};

struct EntityNode {
  std::string id;
  std::string text;
  std::size_t begin = 0;  // word range
  std::size_t end = 0;
  std::size_t index = 0;  // code-point range
  std::size_t length = 0;
  std::string headStem;
  std::vector<std::string> matches;  // "rule#n" of every tree mentioning the node
  std::map<std::string, std::string> attributes;

  bool operator==(const EntityNode&) const = default;
};

/// `label` is the text of the label binding's match; `gloss` the stem glosses of
/// its head word, for display in the document's translation language.
struct EntityEdge {
  std::string source;
  std::string destination;
  std::string label;
  std::string relation;
  std::string gloss;

  auto operator<=>(const EntityEdge&) const = default;
};

/// Nodes keyed by word span; edges deduplicated.
class EntityGraph {
public:
  /// Returns the id of the node covering [begin, end), creating it if needed.
  std::string add_node(EntityNode node);
  bool add_edge(EntityEdge edge);

  const EntityNode* find(const std::string& id) const;
  EntityNode* find(const std::string& id);

  const std::vector<EntityNode>& nodes() const { return nodes_; }
  const std::vector<EntityEdge>& edges() const { return edges_; }

  static std::string node_id(std::size_t begin, std::size_t end);

  /// Throws ValidationError on duplicate ids or dangling edge endpoints.
  void validate(const std::string& path = "graph") const;

  bool operator==(const EntityGraph&) const = default;

private:
  std::vector<EntityNode> nodes_;
  std::vector<EntityEdge> edges_;
};

/// Checks that each relation names a compiled rule and binding paths that
/// exist in it, and that `next` is only used under a repetition.
void validate_relations(std::span<const RelationDef> defs, std::span<const CompiledRule> rules,
                        const std::string& path = "relations");

/// Adds one edge per co-occurring binding triple of every tree. Trees are
/// those of one document in document order; a node records "rule#n" for the
/// n-th tree of a rule that mentions it. Absent optional bindings yield no edge.
void extract_relations(std::span<const MatchTree> trees, std::span<const RelationDef> defs,
                       const DocumentView& view, EntityGraph& graph);

/// Connects nodes whose head stems are second-order extended synonyms.
/// Edges go from the earlier to the later span. Idempotent.
void add_synonymy_edges(EntityGraph& graph, const SynClosureCache& syn, int k = 2);

}  // namespace morphex
