#include "morphex/synk.hpp"

#include "morphex/error.hpp"

namespace morphex {

namespace {

const std::set<std::string> kNoGlosses;
const StemSet kNoStems;

void check_k(int k) {
  if (k < kMinSynK || k > kMaxSynK)
    throw BoundsError("synonymy order k=" + std::to_string(k) + " outside [1, 7]");
}

}  // namespace

GlossGraph::GlossGraph(const Lexicon& lexicon) {
  for (const auto& stem : lexicon.stems)
    add_stem(stem.form, std::set<std::string>(stem.gloss.begin(), stem.gloss.end()));
  for (const auto& [word, stems] : lexicon.words) map_word(word, StemSet(stems.begin(), stems.end()));
}

void GlossGraph::add_stem(const std::string& stem, const std::set<std::string>& glosses) {
  auto& mine = stem_glosses_[stem];
  for (const auto& g : glosses) {
    mine.insert(g);
    gloss_stems_[g].insert(stem);
  }
}

void GlossGraph::map_word(const std::string& word, const StemSet& stems) {
  word_stems_[word].insert(stems.begin(), stems.end());
}

const std::set<std::string>& GlossGraph::glosses_of(const std::string& stem) const {
  const auto it = stem_glosses_.find(stem);
  return it == stem_glosses_.end() ? kNoGlosses : it->second;
}

const StemSet& GlossGraph::stems_with_gloss(const std::string& gloss) const {
  const auto it = gloss_stems_.find(gloss);
  return it == gloss_stems_.end() ? kNoStems : it->second;
}

StemSet GlossGraph::stems_of_word(const std::string& word) const {
  StemSet out;
  if (const auto it = word_stems_.find(word); it != word_stems_.end()) out = it->second;
  if (has_stem(word)) out.insert(word);
  return out;
}

StemSet syn_closure_from(const StemSet& seeds, int k, const GlossGraph& graph) {
  check_k(k);
  // Level i+1 expands from all of level i; since every glossed stem shares a
  // gloss with itself, only the newly reached stems need expanding.
  StemSet closure;
  StemSet frontier = seeds;
  std::set<std::string> seen_glosses;
  for (int level = 1; level <= k && !frontier.empty(); ++level) {
    StemSet next;
    for (const auto& stem : frontier) {
      for (const auto& gloss : graph.glosses_of(stem)) {
        if (!seen_glosses.insert(gloss).second) continue;
        for (const auto& u : graph.stems_with_gloss(gloss)) {
          if (closure.insert(u).second) next.insert(u);
        }
      }
    }
    frontier = std::move(next);
  }
  return closure;
}

StemSet syn_closure(const std::string& word, int k, const GlossGraph& graph) {
  check_k(k);
  return syn_closure_from(graph.stems_of_word(word), k, graph);
}

bool is_syn(std::span<const MorphSolution> solutions, const std::string& cf, int k,
            const GlossGraph& graph) {
  const StemSet closure = syn_closure(cf, k, graph);
  for (const auto& sol : solutions) {
    if (closure.count(sol.stem.form)) return true;
  }
  return false;
}

bool is_syn(const std::string& stem, const std::string& cf, int k, const GlossGraph& graph) {
  return syn_closure(cf, k, graph).count(stem) != 0;
}

const StemSet& SynClosureCache::closure(const std::string& word, int k) const {
  check_k(k);
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(word, k);
  auto it = by_word_.find(key);
  if (it == by_word_.end()) it = by_word_.emplace(key, syn_closure(word, k, *graph_)).first;
  return it->second;
}

const StemSet& SynClosureCache::gloss_closure(const std::string& gloss, int k) const {
  check_k(k);
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(gloss, k);
  auto it = by_gloss_.find(key);
  if (it == by_gloss_.end())
    it = by_gloss_.emplace(key, syn_closure_from(graph_->stems_with_gloss(gloss), k, *graph_)).first;
  return it->second;
}

}  // namespace morphex
