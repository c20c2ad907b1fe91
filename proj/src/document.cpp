#include "morphex/document.hpp"

namespace morphex {

DocumentView::DocumentView(const AnalyzedText& doc, const TagSetSequence& seq,
                           std::span<const TagType> tagTypes, const SynClosureCache* syn)
    : doc_(&doc), seq_(&seq), syn_(syn) {
  for (const auto& t : tagTypes) by_label_.emplace(t.label, &t);
}

std::string DocumentView::text(std::size_t begin, std::size_t end) const {
  std::string out;
  for (std::size_t i = begin; i < end && i < doc_->size(); ++i) {
    if (i > begin) out += ' ';
    out += (*doc_)[i].word.surface;
  }
  return out;
}

std::size_t DocumentView::char_index(std::size_t begin) const {
  return begin < doc_->size() ? (*doc_)[begin].word.index : 0;
}

std::size_t DocumentView::char_length(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > doc_->size()) return 0;
  const auto& last = (*doc_)[end - 1].word;
  return last.index + last.length - (*doc_)[begin].word.index;
}

const MorphSolution* DocumentView::solution(const MatchNode& leaf) const {
  if (leaf.begin >= doc_->size()) return nullptr;
  const auto& solutions = (*doc_)[leaf.begin].solutions;
  if (solutions.empty()) return nullptr;
  auto it = by_label_.find(leaf.leafLabel);
  if (it == by_label_.end()) return &solutions.front();
  for (const auto& s : solutions)
    if (eval_formula(it->second->formula, std::span(&s, 1), syn_)) return &s;
  // Negated terms can accept a word through the absence of a solution.
  return &solutions.front();
}

namespace {

const MatchNode* first_tagged_leaf(const MatchNode& node) {
  const MatchNode* out = nullptr;
  for_each_node(node, [&](const MatchNode& n) {
    if (!out && n.is_leaf() && n.leafLabel != kNoneLabel) out = &n;
  });
  return out;
}

}  // namespace

std::string DocumentView::head_stem(const MatchNode& node) const {
  const MatchNode* leaf = first_tagged_leaf(node);
  const MorphSolution* s = leaf ? solution(*leaf) : nullptr;
  return s ? s->stem.form : std::string();
}

std::string DocumentView::head_gloss(const MatchNode& node) const {
  const MatchNode* leaf = first_tagged_leaf(node);
  const MorphSolution* s = leaf ? solution(*leaf) : nullptr;
  std::string out;
  if (!s) return out;
  for (const auto& g : s->stem.gloss) out += (out.empty() ? "" : ", ") + g;
  return out;
}

}  // namespace morphex
