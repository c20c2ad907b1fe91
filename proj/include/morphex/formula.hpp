#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphex/morphology.hpp"
#include "morphex/synk.hpp"

namespace morphex {

/// Tag of words no user formula matches.
inline constexpr std::string_view kNoneLabel = "NONE";

/// Spellings of the default "other" formula accepted in rules and reserved
/// as tag-type labels.
bool is_other_alias(std::string_view label);

enum class Feature { Prefix, Stem, Suffix, Pos, Gloss, Category };
enum class Predicate { IsA, Contains };

std::string_view to_string(Feature f);
std::string_view to_string(Predicate p);
std::optional<Feature> feature_from(std::string_view name);
std::optional<Predicate> predicate_from(std::string_view name);

/// A possibly negated test of one morphological feature against a constant.
/// With `synK` set the predicate is ignored and the term tests extended
/// synonymy (feature stem: value is a stem; feature gloss: value is a gloss).
struct AtomicTerm {
  Feature feature = Feature::Stem;
  Predicate predicate = Predicate::IsA;
  std::string value;
  bool negated = false;
  std::optional<int> synK;

  bool operator==(const AtomicTerm&) const = default;

  void validate(const std::string& path) const;
};

/// Disjunction of atomic terms.
struct BoolFormula {
  std::vector<AtomicTerm> terms;

  bool operator==(const BoolFormula&) const = default;
};

struct Legend {
  std::string color = "#000000";
  bool bold = false;
  bool italic = false;
  bool underline = false;

  bool operator==(const Legend&) const = default;
};

/// A formula-backed tag type.
struct TagType {
  std::string label;
  std::string description;
  Legend legend;
  BoolFormula formula;

  bool operator==(const TagType&) const = default;
};

/// Per-word tag sets in document order; a word no formula matches has {NONE}.
struct TagSetSequence {
  std::vector<Word> words;
  std::vector<std::set<std::string>> perWord;

  std::size_t size() const { return perWord.size(); }
  bool is_other(std::size_t i) const;
  bool operator==(const TagSetSequence&) const = default;
};

bool eval_term(const AtomicTerm& term, std::span<const MorphSolution> solutions,
               const SynClosureCache* syn);
bool eval_formula(const BoolFormula& formula, std::span<const MorphSolution> solutions,
                  const SynClosureCache* syn);

/// `syn` may be null when no term uses synonymy.
TagSetSequence compute_tag_sequence(const AnalyzedText& doc, std::span<const TagType> tagTypes,
                                    const SynClosureCache* syn);

/// Labels must be unique, non-empty, not an "other" alias; legend colors #RRGGBB.
void validate_tag_types(std::span<const TagType> tagTypes, const std::string& path);

bool is_hex_color(std::string_view s);

}  // namespace morphex
