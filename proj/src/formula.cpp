#include "morphex/formula.hpp"

#include <algorithm>
#include <cctype>

#include "morphex/error.hpp"

namespace morphex {

bool is_other_alias(std::string_view label) {
  return label == kNoneLabel || label == "OTHER" || label == "O";
}

std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::Prefix:
      return "prefix";
    case Feature::Stem:
      return "stem";
    case Feature::Suffix:
      return "suffix";
    case Feature::Pos:
      return "pos";
    case Feature::Gloss:
      return "gloss";
    case Feature::Category:
      return "category";
  }
  return "stem";
}

std::string_view to_string(Predicate p) { return p == Predicate::IsA ? "isA" : "contains"; }

std::optional<Feature> feature_from(std::string_view name) {
  for (auto f : {Feature::Prefix, Feature::Stem, Feature::Suffix, Feature::Pos, Feature::Gloss,
                 Feature::Category}) {
    if (to_string(f) == name) return f;
  }
  if (name == "POS") return Feature::Pos;
  return std::nullopt;
}

std::optional<Predicate> predicate_from(std::string_view name) {
  if (name == "isA") return Predicate::IsA;
  if (name == "contains") return Predicate::Contains;
  return std::nullopt;
}

void AtomicTerm::validate(const std::string& path) const {
  if (value.empty()) throw ValidationError(path + ".value", "empty feature value");
  if (synK) {
    if (feature != Feature::Stem && feature != Feature::Gloss)
      throw ValidationError(path + ".synK", "synonymy applies only to stem or gloss features");
    if (*synK < kMinSynK || *synK > kMaxSynK)
      throw ValidationError(path + ".synK", "k=" + std::to_string(*synK) + " outside [1, 7]");
  }
}

bool TagSetSequence::is_other(std::size_t i) const {
  const auto& set = perWord.at(i);
  return set.size() == 1 && *set.begin() == kNoneLabel;
}

namespace {

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

bool any_of_strings(const std::vector<std::string>& values, Predicate p, std::string_view v) {
  return std::any_of(values.begin(), values.end(), [&](const std::string& s) {
    return p == Predicate::IsA ? s == v : contains(s, v);
  });
}

bool affix_matches(const std::vector<Morpheme>& affixes, const std::string& joined, Predicate p,
                   std::string_view v) {
  if (p == Predicate::Contains) return contains(joined, v);
  if (joined == v) return true;
  return std::any_of(affixes.begin(), affixes.end(),
                     [&](const Morpheme& m) { return m.form == v; });
}

bool solution_matches(const MorphSolution& sol, const AtomicTerm& term) {
  const std::string_view v = term.value;
  const Predicate p = term.predicate;
  switch (term.feature) {
    case Feature::Prefix:
      return affix_matches(sol.prefixes, sol.prefix_string(), p, v);
    case Feature::Suffix:
      return affix_matches(sol.suffixes, sol.suffix_string(), p, v);
    case Feature::Stem:
      return p == Predicate::IsA ? sol.stem.form == v : contains(sol.stem.form, v);
    case Feature::Pos: {
      bool hit = false;
      sol.for_each_morpheme([&](const Morpheme& m) {
        hit = hit || (p == Predicate::IsA ? m.pos == v : contains(m.pos, v));
      });
      return hit;
    }
    case Feature::Gloss: {
      bool hit = false;
      sol.for_each_morpheme([&](const Morpheme& m) { hit = hit || any_of_strings(m.gloss, p, v); });
      return hit;
    }
    case Feature::Category: {
      bool hit = false;
      sol.for_each_morpheme(
          [&](const Morpheme& m) { hit = hit || any_of_strings(m.category, p, v); });
      return hit;
    }
  }
  return false;
}

}  // namespace

bool eval_term(const AtomicTerm& term, std::span<const MorphSolution> solutions,
               const SynClosureCache* syn) {
  bool hit = false;
  if (term.synK) {
    if (syn == nullptr) throw Error("synonymy term '" + term.value + "' evaluated without a gloss graph");
    const StemSet& closure = term.feature == Feature::Gloss ? syn->gloss_closure(term.value, *term.synK)
                                                            : syn->closure(term.value, *term.synK);
    hit = std::any_of(solutions.begin(), solutions.end(),
                      [&](const MorphSolution& s) { return closure.count(s.stem.form) != 0; });
  } else {
    hit = std::any_of(solutions.begin(), solutions.end(),
                      [&](const MorphSolution& s) { return solution_matches(s, term); });
  }
  return hit != term.negated;
}

bool eval_formula(const BoolFormula& formula, std::span<const MorphSolution> solutions,
                  const SynClosureCache* syn) {
  return std::any_of(formula.terms.begin(), formula.terms.end(),
                     [&](const AtomicTerm& t) { return eval_term(t, solutions, syn); });
}

bool is_hex_color(std::string_view s) {
  if (s.size() != 7 || s[0] != '#') return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; });
}

void validate_tag_types(std::span<const TagType> tagTypes, const std::string& path) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < tagTypes.size(); ++i) {
    const auto& tt = tagTypes[i];
    const auto tpath = path + "[" + std::to_string(i) + "]";
    if (tt.label.empty()) throw ValidationError(tpath + ".label", "empty label");
    if (is_other_alias(tt.label))
      throw ValidationError(tpath + ".label", "'" + tt.label + "' is reserved for the other formula");
    if (!seen.insert(tt.label).second)
      throw ValidationError(tpath + ".label", "duplicate tag type '" + tt.label + "'");
    if (!is_hex_color(tt.legend.color))
      throw ValidationError(tpath + ".legend.color", "'" + tt.legend.color + "' is not #RRGGBB");
    if (tt.formula.terms.empty())
      throw ValidationError(tpath + ".formula.terms", "a formula needs at least one term");
    for (std::size_t t = 0; t < tt.formula.terms.size(); ++t)
      tt.formula.terms[t].validate(tpath + ".formula.terms[" + std::to_string(t) + "]");
  }
}

TagSetSequence compute_tag_sequence(const AnalyzedText& doc, std::span<const TagType> tagTypes,
                                    const SynClosureCache* syn) {
  validate_tag_types(tagTypes, "tagTypes");
  TagSetSequence seq;
  seq.words.reserve(doc.size());
  seq.perWord.reserve(doc.size());
  for (const auto& record : doc) {
    std::set<std::string> tags;
    for (const auto& tt : tagTypes) {
      if (eval_formula(tt.formula, record.solutions, syn)) tags.insert(tt.label);
    }
    if (tags.empty()) tags.insert(std::string(kNoneLabel));
    seq.words.push_back(record.word);
    seq.perWord.push_back(std::move(tags));
  }
  return seq;
}

}  // namespace morphex
