#pragma once

#include <map>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "morphex/morphology.hpp"

namespace morphex {

inline constexpr int kMinSynK = 1;
inline constexpr int kMaxSynK = 7;

using StemSet = std::set<std::string>;

/// Stem/gloss bipartite graph. `stem_glosses` maps a stem to its glosses,
/// `word_stems` maps lexicon words to stems, `gloss_stems` is the inverse of
/// `stem_glosses`.
class GlossGraph {
public:
  GlossGraph() = default;
  explicit GlossGraph(const Lexicon& lexicon);

  /// Adds a stem with its glosses, merging with earlier glosses of the same stem.
  void add_stem(const std::string& stem, const std::set<std::string>& glosses);
  void map_word(const std::string& word, const StemSet& stems);

  const std::set<std::string>& glosses_of(const std::string& stem) const;
  const StemSet& stems_with_gloss(const std::string& gloss) const;
  /// Stems a lexicon word stands for; a stem always stands for itself.
  StemSet stems_of_word(const std::string& word) const;

  const std::map<std::string, std::set<std::string>>& stem_glosses() const { return stem_glosses_; }
  const std::map<std::string, StemSet>& gloss_stems() const { return gloss_stems_; }

  bool has_stem(const std::string& stem) const { return stem_glosses_.count(stem) != 0; }

private:
  std::map<std::string, std::set<std::string>> stem_glosses_;
  std::map<std::string, StemSet> word_stems_;
  std::map<std::string, StemSet> gloss_stems_;
};

/// Stems within `k` gloss-sharing steps of `word` (union of the first k levels).
/// Throws BoundsError unless 1 <= k <= 7.
StemSet syn_closure(const std::string& word, int k, const GlossGraph& graph);

/// Same expansion seeded with an explicit stem set instead of a word.
StemSet syn_closure_from(const StemSet& seeds, int k, const GlossGraph& graph);

/// True iff a stem of some solution lies in syn_closure(cf, k).
bool is_syn(std::span<const MorphSolution> solutions, const std::string& cf, int k,
            const GlossGraph& graph);
bool is_syn(const std::string& stem, const std::string& cf, int k, const GlossGraph& graph);

/// Thread-safe memo of closures keyed by (seed, k).
class SynClosureCache {
public:
  explicit SynClosureCache(const GlossGraph& graph) : graph_(&graph) {}

  const StemSet& closure(const std::string& word, int k) const;
  /// Closure seeded by all stems that carry `gloss`.
  const StemSet& gloss_closure(const std::string& gloss, int k) const;

  const GlossGraph& graph() const { return *graph_; }

private:
  const GlossGraph* graph_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::string, int>, StemSet> by_word_;
  mutable std::map<std::pair<std::string, int>, StemSet> by_gloss_;
};

}  // namespace morphex
