#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "morphex/formula.hpp"
#include "morphex/match.hpp"

namespace morphex {

/// Read access to one analyzed, tagged document for code that walks match
/// trees. Word ranges are [begin, end) word indices.
class DocumentView {
public:
  DocumentView(const AnalyzedText& doc, const TagSetSequence& seq,
               std::span<const TagType> tagTypes, const SynClosureCache* syn);

  const AnalyzedText& doc() const { return *doc_; }
  const TagSetSequence& sequence() const { return *seq_; }

  /// Surfaces joined by single spaces.
  std::string text(std::size_t begin, std::size_t end) const;
  /// Code-point offset of the first word and extent up to the end of the last.
  std::size_t char_index(std::size_t begin) const;
  std::size_t char_length(std::size_t begin, std::size_t end) const;

  /// Solution a leaf stands for: the first solution its formula accepts, or
  /// the first solution at all for NONE leaves. Null when the word has none.
  const MorphSolution* solution(const MatchNode& leaf) const;

  /// Stem of the first non-NONE leaf under `node`, or "" if there is none.
  std::string head_stem(const MatchNode& node) const;
  /// Stem glosses of the same solution, joined by ", ".
  std::string head_gloss(const MatchNode& node) const;

private:
  const AnalyzedText* doc_;
  const TagSetSequence* seq_;
  std::map<std::string, const TagType*> by_label_;
  const SynClosureCache* syn_;
};

}  // namespace morphex
