#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace morphex {

/// A token of the document. `index` and `length` count code points.
struct Word {
  std::string surface;
  std::size_t index = 0;
  std::size_t length = 0;

  auto operator<=>(const Word&) const = default;
};

enum class MorphemeKind { Prefix, Stem, Suffix };

std::string_view to_string(MorphemeKind kind);
std::optional<MorphemeKind> morpheme_kind_from(std::string_view name);

struct Morpheme {
  std::string form;
  MorphemeKind kind = MorphemeKind::Stem;
  std::string pos;
  std::vector<std::string> gloss;
  std::vector<std::string> category;
  std::size_t index = 0;  // absolute offset in the document
  std::size_t length = 0;

  auto operator<=>(const Morpheme&) const = default;
};

/// One segmentation of a word: prefix* stem suffix*, each morpheme tagged.
struct MorphSolution {
  std::vector<Morpheme> prefixes;
  Morpheme stem;
  std::vector<Morpheme> suffixes;
  std::optional<double> numericValue;

  auto operator<=>(const MorphSolution&) const = default;

  /// Calls `fn` on every morpheme in surface order.
  template <typename Fn>
  void for_each_morpheme(Fn&& fn) const {
    for (const auto& m : prefixes) fn(m);
    fn(stem);
    for (const auto& m : suffixes) fn(m);
  }

  std::string prefix_string() const;
  std::string suffix_string() const;
  /// POS tags joined with '+' in prefix, stem, suffix order.
  std::string pos_string() const;
  std::vector<std::string> glosses() const;
  std::vector<std::string> categories() const;
  std::size_t total_length() const;
};

struct AnalyzedWord {
  Word word;
  std::vector<MorphSolution> solutions;

  bool operator==(const AnalyzedWord&) const = default;
};

using AnalyzedText = std::vector<AnalyzedWord>;

struct StemEntry {
  std::string form;
  std::string pos;
  std::vector<std::string> gloss;
  std::vector<std::string> category;
  std::optional<double> numericValue;

  bool operator==(const StemEntry&) const = default;
};

struct AffixEntry {
  std::string form;
  std::string pos;
  std::vector<std::string> gloss;
  std::vector<std::string> category;

  bool operator==(const AffixEntry&) const = default;
};

/// Stems, affixes and user categories. `words` optionally maps lexicon words
/// to the stems they stand for; every stem implicitly maps to itself.
struct Lexicon {
  std::vector<std::string> categories;
  std::vector<StemEntry> stems;
  std::vector<AffixEntry> prefixes;
  std::vector<AffixEntry> suffixes;
  std::map<std::string, std::vector<std::string>> words;

  bool operator==(const Lexicon&) const = default;

  /// Throws ValidationError on undeclared categories, duplicate category
  /// names, empty forms, or `words` entries naming unknown stems.
  void validate() const;
};

class Analyzer {
public:
  virtual ~Analyzer() = default;
  virtual std::vector<MorphSolution> analyze(const Word& word) const = 0;
};

/// Enumerates every prefix* stem suffix* decomposition known to a lexicon.
class LexiconAnalyzer final : public Analyzer {
public:
  explicit LexiconAnalyzer(Lexicon lexicon);

  std::vector<MorphSolution> analyze(const Word& word) const override;
  const Lexicon& lexicon() const noexcept { return lexicon_; }

private:
  Lexicon lexicon_;
  std::unordered_map<std::string, std::vector<std::size_t>> stems_;
  std::unordered_map<std::string, std::vector<std::size_t>> prefixes_;
  std::unordered_map<std::string, std::vector<std::size_t>> suffixes_;
};

/// Serves solutions recorded in a solutions file. Lookup is by offset first,
/// then by surface form with morpheme offsets rebased onto the queried word.
class PrecomputedAnalyzer final : public Analyzer {
public:
  explicit PrecomputedAnalyzer(const AnalyzedText& records);

  std::vector<MorphSolution> analyze(const Word& word) const override;

private:
  std::map<std::pair<std::size_t, std::string>, std::vector<MorphSolution>> by_offset_;
  std::map<std::string, AnalyzedWord> by_surface_;
};

/// Whitespace and punctuation tokenization with code-point offsets.
std::vector<Word> tokenize(std::string_view document);

std::vector<MorphSolution> analyze_word(const Word& word, const Lexicon& lexicon);
AnalyzedText analyze_text(std::string_view document, const Analyzer& analyzer);
AnalyzedText analyze_text(std::string_view document, const Lexicon& lexicon);

/// Checks the per-solution invariants: morphemes tile the word in order,
/// kinds are in their slots, lengths are positive.
void validate_analysis(const AnalyzedText& words, std::string_view path = "");

}  // namespace morphex
