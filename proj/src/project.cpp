#include "morphex/project.hpp"

#include <algorithm>
#include <set>

#include "morphex/text.hpp"

namespace morphex {

RuleSet parse_project_rules(const Project& project) {
  std::set<std::string> labels;
  for (const auto& t : project.tagTypes) labels.insert(t.label);
  try {
    return parse_rules(project.rules, labels);
  } catch (const ParseError& e) {
    throw ValidationError("rules", e.what());
  }
}

namespace {

std::vector<CompiledRule> select_reported(const Project& project,
                                          const std::vector<CompiledRule>& all) {
  if (project.mreTagTypes.empty()) return all;
  std::vector<CompiledRule> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < project.mreTagTypes.size(); ++i) {
    const auto& t = project.mreTagTypes[i];
    const auto where = "mreTagTypes[" + std::to_string(i) + "]";
    if (!seen.insert(t.label).second)
      throw ValidationError(where + ".label", "duplicate rule tag type '" + t.label + "'");
    if (!is_hex_color(t.legend.color))
      throw ValidationError(where + ".legend.color", "not a #RRGGBB color: " + t.legend.color);
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const CompiledRule& r) { return r.name == t.label; });
    if (it == all.end()) throw ValidationError(where + ".label", "unknown rule '" + t.label + "'");
    out.push_back(*it);
  }
  // Keep definition order so match output does not depend on listing order.
  std::stable_sort(out.begin(), out.end(), [&](const CompiledRule& a, const CompiledRule& b) {
    auto pos = [&](const std::string& n) {
      return std::find_if(all.begin(), all.end(), [&](const auto& r) { return r.name == n; }) -
             all.begin();
    };
    return pos(a.name) < pos(b.name);
  });
  return out;
}

void check_action_bindings(const Project& project, const std::vector<CompiledRule>& reported) {
  for (std::size_t i = 0; i < project.actions.size(); ++i) {
    const auto& a = project.actions[i];
    const auto where = "actions[" + std::to_string(i) + "]";
    const auto rule = std::find_if(reported.begin(), reported.end(),
                                   [&](const CompiledRule& r) { return r.name == a.rule; });
    if (rule == reported.end())
      throw ValidationError(where + ".rule", "unknown or unreported rule '" + a.rule + "'");
    if (a.binding == a.rule) continue;
    bool found = false;
    for (const auto& p : binding_paths(rule->root)) {
      if (p == a.binding || (p.size() > a.binding.size() && p.ends_with("." + a.binding)))
        found = true;
    }
    if (!found) throw ValidationError(where + ".binding", "unknown binding '" + a.binding + "'");
  }
}

struct Compiled {
  RuleSet rules;
  std::vector<CompiledRule> all;
  std::vector<CompiledRule> reported;
  std::vector<CompiledAction> actions;
};

Compiled compile_project(const Project& project) {
  project.lexicon.validate();
  validate_tag_types(project.tagTypes, "tagTypes");
  Compiled c;
  c.rules = parse_project_rules(project);
  c.all = compile_rules(c.rules);
  c.reported = select_reported(project, c.all);
  validate_relations(project.relations, c.reported, "relations");
  c.actions = compile_actions(project.actions, "actions");
  check_action_bindings(project, c.reported);
  return c;
}

}  // namespace

void validate_project(const Project& project) { compile_project(project); }

Engine::Engine(Project project) : project_(std::move(project)) {
  auto c = compile_project(project_);
  rule_set_ = std::move(c.rules);
  compiled_ = std::move(c.all);
  reported_ = std::move(c.reported);
  actions_ = std::move(c.actions);
  analyzer_ = std::make_unique<LexiconAnalyzer>(project_.lexicon);
  graph_ = std::make_unique<GlossGraph>(project_.lexicon);
  syn_ = std::make_unique<SynClosureCache>(*graph_);
}

Engine::~Engine() = default;

AnalyzedText Engine::analyze(std::string_view document) const {
  return analyze_text(document, *analyzer_);
}

TagSetSequence Engine::tag(const AnalyzedText& doc) const {
  return compute_tag_sequence(doc, project_.tagTypes, syn_.get());
}

std::vector<MatchTree> Engine::simulate(const TagSetSequence& seq,
                                        const SimulationOptions& options) const {
  std::vector<std::pair<std::size_t, MatchTree>> all;
  for (std::size_t r = 0; r < reported_.size(); ++r)
    for (auto& m : morphex::simulate(reported_[r], seq, options)) all.emplace_back(r, std::move(m));
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.second.begin(), a.first) < std::make_pair(b.second.begin(), b.first);
  });
  std::vector<MatchTree> out;
  out.reserve(all.size());
  for (auto& [r, m] : all) out.push_back(std::move(m));
  return out;
}

DocumentView Engine::view(const RunResult& r) const {
  return DocumentView(r.doc, r.sequence, project_.tagTypes, syn_.get());
}

namespace {

template <typename Fn>
void stage(const char* name, Fn&& fn) {
  try {
    fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

}  // namespace

RunResult Engine::run(std::string_view document, const SimulationOptions& options) const {
  RunResult r;
  r.documentSha256 = text::sha256_hex(document);
  r.documentLength = text::length(document);
  stage("analyze", [&] { r.doc = analyze(document); });
  stage("tag", [&] { r.sequence = tag(r.doc); });
  stage("simulate", [&] { r.matches = simulate(r.sequence, options); });
  const DocumentView v = view(r);
  stage("actions", [&] {
    for (const auto& m : r.matches) run_actions(m, actions_, v, r.env);
  });
  stage("relations", [&] {
    extract_relations(r.matches, project_.relations, v, r.graph);
    add_synonymy_edges(r.graph, *syn_);
    for (const auto& e : r.env.emitted)
      if (auto* node = r.graph.find(EntityGraph::node_id(e.begin, e.end)))
        node->attributes[e.label] = format_value(e.value);
  });
  return r;
}

}  // namespace morphex
