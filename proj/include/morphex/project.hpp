#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphex/actions.hpp"
#include "morphex/error.hpp"
#include "morphex/formula.hpp"
#include "morphex/match.hpp"
#include "morphex/relations.hpp"
#include "morphex/synk.hpp"

namespace morphex {

inline constexpr int kFormatVersion = 1;

/// Presentation of a rule whose matches are reported as tags.
struct MreTagType {
  std::string label;  // rule name
  std::string description;
  Legend legend;

  bool operator==(const MreTagType&) const = default;
};

/// Everything a user authors: lexicon, formula tag types, rule source,
/// reported rules, relations and action scripts.
struct Project {
  /// Where the lexicon came from when it is stored as a separate file.
  std::optional<std::string> lexiconPath;
  Lexicon lexicon;
  std::vector<TagType> tagTypes;
  std::string rules;
  std::vector<MreTagType> mreTagTypes;
  std::vector<RelationDef> relations;
  std::vector<ActionScript> actions;

  bool operator==(const Project&) const = default;
};

/// Checks cross references: rule labels, reported rules, relation and action
/// bindings. Throws ValidationError with the offending field path.
void validate_project(const Project& project);

/// Failure of one pipeline stage: load, analyze, tag, simulate, actions,
/// relations or write.
class PipelineError : public Error {
public:
  PipelineError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

struct RunResult {
  std::string documentSha256;
  std::size_t documentLength = 0;  // code points
  AnalyzedText doc;
  TagSetSequence sequence;
  /// Matches of every reported rule, by start then rule order.
  std::vector<MatchTree> matches;
  ActionEnv env;
  EntityGraph graph;
};

/// A validated, compiled project. Immutable after construction, so one
/// instance may serve concurrent runs.
class Engine {
public:
  /// Throws ValidationError.
  explicit Engine(Project project);
  ~Engine();

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const Project& project() const { return project_; }
  const RuleSet& rule_set() const { return rule_set_; }
  /// Rules whose matches are reported: those listed as MRE tag types, or
  /// every rule when none are listed.
  const std::vector<CompiledRule>& reported_rules() const { return reported_; }
  const std::vector<CompiledRule>& all_rules() const { return compiled_; }
  const GlossGraph& gloss_graph() const { return *graph_; }
  const SynClosureCache& syn() const { return *syn_; }

  AnalyzedText analyze(std::string_view document) const;
  TagSetSequence tag(const AnalyzedText& doc) const;
  std::vector<MatchTree> simulate(const TagSetSequence& seq,
                                  const SimulationOptions& options = {}) const;
  DocumentView view(const RunResult& r) const;

  /// analyze, tag, simulate, actions, relations. Throws PipelineError.
  RunResult run(std::string_view document, const SimulationOptions& options = {}) const;

private:
  Project project_;
  RuleSet rule_set_;
  std::vector<CompiledRule> compiled_;
  std::vector<CompiledRule> reported_;
  std::vector<CompiledAction> actions_;
  std::unique_ptr<LexiconAnalyzer> analyzer_;
  std::unique_ptr<GlossGraph> graph_;
  std::unique_ptr<SynClosureCache> syn_;
};

/// Parses the rule source against the project's formula labels, mapping
/// parse errors to a ValidationError on `rules`.
RuleSet parse_project_rules(const Project& project);

}  // namespace morphex
