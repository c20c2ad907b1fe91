#include "morphex/relations.hpp"

#include <algorithm>
#include <set>

#include "morphex/error.hpp"

namespace morphex {

std::string EntityGraph::node_id(std::size_t begin, std::size_t end) {
  return "w" + std::to_string(begin) + "-" + std::to_string(end);
}

std::string EntityGraph::add_node(EntityNode node) {
  node.id = node_id(node.begin, node.end);
  if (auto* existing = find(node.id)) {
    for (auto& m : node.matches)
      if (std::find(existing->matches.begin(), existing->matches.end(), m) ==
          existing->matches.end())
        existing->matches.push_back(std::move(m));
    for (auto& [k, v] : node.attributes) existing->attributes[k] = std::move(v);
    return existing->id;
  }
  auto pos = std::lower_bound(nodes_.begin(), nodes_.end(), node, [](const auto& a, const auto& b) {
    return std::tie(a.begin, a.end) < std::tie(b.begin, b.end);
  });
  return nodes_.insert(pos, std::move(node))->id;
}

bool EntityGraph::add_edge(EntityEdge edge) {
  if (std::find(edges_.begin(), edges_.end(), edge) != edges_.end()) return false;
  edges_.push_back(std::move(edge));
  return true;
}

const EntityNode* EntityGraph::find(const std::string& id) const {
  for (const auto& n : nodes_)
    if (n.id == id) return &n;
  return nullptr;
}

EntityNode* EntityGraph::find(const std::string& id) {
  for (auto& n : nodes_)
    if (n.id == id) return &n;
  return nullptr;
}

void EntityGraph::validate(const std::string& path) const {
  std::set<std::string> ids;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    const auto where = path + ".nodes[" + std::to_string(i) + "]";
    if (!ids.insert(n.id).second) throw ValidationError(where + ".id", "duplicate node id " + n.id);
    if (n.end <= n.begin) throw ValidationError(where, "empty word range");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    const auto where = path + ".edges[" + std::to_string(i) + "]";
    if (!ids.count(e.source)) throw ValidationError(where + ".source", "unknown node " + e.source);
    if (!ids.count(e.destination))
      throw ValidationError(where + ".destination", "unknown node " + e.destination);
  }
}

void validate_relations(std::span<const RelationDef> defs, std::span<const CompiledRule> rules,
                        const std::string& path) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < defs.size(); ++i) {
    const auto& d = defs[i];
    const auto where = path + "[" + std::to_string(i) + "]";
    const auto who = "relation '" + d.name + "'";
    if (d.name.empty()) throw ValidationError(where + ".name", "relation without a name");
    if (!names.insert(d.name).second) throw ValidationError(where + ".name", "duplicate " + who);
    const auto rule = std::find_if(rules.begin(), rules.end(),
                                   [&](const CompiledRule& r) { return r.name == d.rule; });
    if (rule == rules.end())
      throw ValidationError(where + ".rule", who + " names unknown rule '" + d.rule + "'");
    const auto paths = binding_paths(rule->root);
    const std::pair<const char*, const std::string*> ends[] = {
        {"source", &d.source}, {"destination", &d.destination}, {"label", &d.label}};
    for (const auto& [field, value] : ends) {
      if (*value != d.rule && !paths.count(*value))
        throw ValidationError(where + "." + field,
                              who + " refers to unknown binding '" + *value + "'");
    }
    if (d.next) {
      for (const auto* p : {&d.source, &d.destination})
        if (*p == d.rule || !path_under_repetition(rule->root, *p))
          throw ValidationError(where + ".next", who + " uses next on '" + *p +
                                                     "', which is not under a repetition");
    }
  }
}

namespace {

using Context = std::vector<std::pair<const MatchNode*, std::size_t>>;

struct Occurrence {
  const MatchNode* node;
  Context context;
};

bool repeats(const MatchNode& n) {
  return n.kind == NodeKind::Star || n.kind == NodeKind::Plus ||
         (n.repetition && (n.kind == NodeKind::Concat || n.kind == NodeKind::Optional));
}

void collect(const MatchNode& node, const Context& context,
             std::map<std::string, std::vector<Occurrence>>& out) {
  if (!node.path.empty()) out[node.path].push_back({&node, context});
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (repeats(node)) {
      Context inner = context;
      inner.emplace_back(&node, i);
      collect(node.children[i], inner, out);
    } else {
      collect(node.children[i], context, out);
    }
  }
}

// Two occurrences co-occur when every repetition enclosing both places them
// in the same iteration.
bool compatible(const Context& a, const Context& b) {
  for (const auto& [rep, i] : a)
    for (const auto& [rep2, j] : b)
      if (rep == rep2 && i != j) return false;
  return true;
}

// Destination in the iteration after the source's innermost repetition, and
// in the same iteration of every repetition outside it.
bool follows(const Context& src, const Context& dst) {
  if (src.empty()) return false;
  const auto& [rep, i] = src.back();
  bool found = false;
  for (const auto& [r, j] : dst) {
    if (r == rep) {
      if (j != i + 1) return false;
      found = true;
    }
  }
  if (!found) return false;
  return compatible(Context(src.begin(), src.end() - 1), dst);
}

}  // namespace

void extract_relations(std::span<const MatchTree> trees, std::span<const RelationDef> defs,
                       const DocumentView& view, EntityGraph& graph) {
  std::map<std::string, std::size_t> ordinal;
  for (const auto& tree : trees) {
    const std::string matchId = tree.rule + "#" + std::to_string(ordinal[tree.rule]++);
    std::map<std::string, std::vector<Occurrence>> occ;
    collect(tree.root, {}, occ);
    occ[tree.rule].push_back({&tree.root, {}});

    auto node_for = [&](const MatchNode& n) {
      EntityNode e;
      e.begin = n.begin;
      e.end = n.end;
      e.text = view.text(n.begin, n.end);
      e.index = view.char_index(n.begin);
      e.length = view.char_length(n.begin, n.end);
      e.headStem = view.head_stem(n);
      e.matches.push_back(matchId);
      return graph.add_node(std::move(e));
    };

    for (const auto& def : defs) {
      if (def.rule != tree.rule) continue;
      const auto& sources = occ[def.source];
      const auto& dests = occ[def.destination];
      const auto& labels = occ[def.label];
      for (const auto& s : sources) {
        for (const auto& d : dests) {
          if (d.node == s.node) continue;
          if (def.next ? !follows(s.context, d.context) : !compatible(s.context, d.context))
            continue;
          for (const auto& l : labels) {
            if (!compatible(l.context, d.context)) continue;
            if (!def.next && !compatible(l.context, s.context)) continue;
            EntityEdge edge;
            edge.source = node_for(*s.node);
            edge.destination = node_for(*d.node);
            edge.label = view.text(l.node->begin, l.node->end);
            edge.relation = def.name;
            edge.gloss = view.head_gloss(*l.node);
            graph.add_edge(std::move(edge));
          }
        }
      }
    }
  }
}

void add_synonymy_edges(EntityGraph& graph, const SynClosureCache& syn, int k) {
  const auto nodes = graph.nodes();  // sorted by span
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].headStem.empty()) continue;
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[j].headStem.empty()) continue;
      if (!syn.closure(nodes[j].headStem, k).count(nodes[i].headStem)) continue;
      graph.add_edge(EntityEdge{nodes[i].id, nodes[j].id, std::string(kIsSynLabel),
                                std::string(kIsSynLabel), ""});
    }
  }
}

}  // namespace morphex
