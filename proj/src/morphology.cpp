#include "morphex/morphology.hpp"

#include <algorithm>
#include <set>

#include "morphex/error.hpp"
#include "morphex/text.hpp"

namespace morphex {

std::string_view to_string(MorphemeKind kind) {
  switch (kind) {
    case MorphemeKind::Prefix:
      return "prefix";
    case MorphemeKind::Stem:
      return "stem";
    case MorphemeKind::Suffix:
      return "suffix";
  }
  return "stem";
}

std::optional<MorphemeKind> morpheme_kind_from(std::string_view name) {
  if (name == "prefix") return MorphemeKind::Prefix;
  if (name == "stem") return MorphemeKind::Stem;
  if (name == "suffix") return MorphemeKind::Suffix;
  return std::nullopt;
}

std::string MorphSolution::prefix_string() const {
  std::string out;
  for (const auto& m : prefixes) out += m.form;
  return out;
}

std::string MorphSolution::suffix_string() const {
  std::string out;
  for (const auto& m : suffixes) out += m.form;
  return out;
}

std::string MorphSolution::pos_string() const {
  std::string out;
  for_each_morpheme([&](const Morpheme& m) {
    if (m.pos.empty()) return;
    if (!out.empty()) out += '+';
    out += m.pos;
  });
  return out;
}

std::vector<std::string> MorphSolution::glosses() const {
  std::vector<std::string> out;
  for_each_morpheme([&](const Morpheme& m) { out.insert(out.end(), m.gloss.begin(), m.gloss.end()); });
  return out;
}

std::vector<std::string> MorphSolution::categories() const {
  std::vector<std::string> out;
  for_each_morpheme(
      [&](const Morpheme& m) { out.insert(out.end(), m.category.begin(), m.category.end()); });
  return out;
}

std::size_t MorphSolution::total_length() const {
  std::size_t n = 0;
  for_each_morpheme([&](const Morpheme& m) { n += m.length; });
  return n;
}

void Lexicon::validate() const {
  std::set<std::string> declared;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (!declared.insert(categories[i]).second)
      throw ValidationError("categories[" + std::to_string(i) + "]",
                            "duplicate category '" + categories[i] + "'");
  }
  auto check_categories = [&](const std::vector<std::string>& cats, const std::string& path) {
    for (std::size_t i = 0; i < cats.size(); ++i) {
      if (!declared.count(cats[i]))
        throw ValidationError(path + ".category[" + std::to_string(i) + "]",
                              "undeclared category '" + cats[i] + "'");
    }
  };
  std::set<std::string> stem_forms;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    const auto path = "stems[" + std::to_string(i) + "]";
    if (stems[i].form.empty()) throw ValidationError(path + ".form", "empty stem form");
    check_categories(stems[i].category, path);
    stem_forms.insert(stems[i].form);
  }
  auto check_affixes = [&](const std::vector<AffixEntry>& affixes, const std::string& section) {
    for (std::size_t i = 0; i < affixes.size(); ++i) {
      const auto path = section + "[" + std::to_string(i) + "]";
      if (affixes[i].form.empty()) throw ValidationError(path + ".form", "empty affix form");
      check_categories(affixes[i].category, path);
    }
  };
  check_affixes(prefixes, "prefixes");
  check_affixes(suffixes, "suffixes");
  for (const auto& [word, mapped] : words) {
    for (const auto& s : mapped) {
      if (!stem_forms.count(s))
        throw ValidationError("words." + word, "unknown stem '" + s + "'");
    }
  }
}

namespace {

void index_entries(std::unordered_map<std::string, std::vector<std::size_t>>& index,
                   const auto& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) index[entries[i].form].push_back(i);
}

Morpheme make_morpheme(const auto& entry, MorphemeKind kind, std::size_t index,
                       std::size_t length) {
  return Morpheme{entry.form, kind, entry.pos, entry.gloss, entry.category, index, length};
}

}  // namespace

LexiconAnalyzer::LexiconAnalyzer(Lexicon lexicon) : lexicon_(std::move(lexicon)) {
  index_entries(stems_, lexicon_.stems);
  index_entries(prefixes_, lexicon_.prefixes);
  index_entries(suffixes_, lexicon_.suffixes);
}

std::vector<MorphSolution> LexiconAnalyzer::analyze(const Word& word) const {
  const std::u32string cps = text::decode(word.surface);
  const std::size_t n = cps.size();
  std::vector<MorphSolution> out;
  if (n == 0) return out;

  auto piece = [&](std::size_t from, std::size_t to) {
    return text::encode(std::u32string_view(cps).substr(from, to - from));
  };

  MorphSolution partial;

  auto suffixes = [&](auto& self, std::size_t pos) -> void {
    if (pos == n) {
      out.push_back(partial);
      return;
    }
    for (std::size_t end = pos + 1; end <= n; ++end) {
      const auto it = suffixes_.find(piece(pos, end));
      if (it == suffixes_.end()) continue;
      for (std::size_t idx : it->second) {
        partial.suffixes.push_back(make_morpheme(lexicon_.suffixes[idx], MorphemeKind::Suffix,
                                                 word.index + pos, end - pos));
        self(self, end);
        partial.suffixes.pop_back();
      }
    }
  };

  auto prefixes = [&](auto& self, std::size_t pos) -> void {
    for (std::size_t end = pos + 1; end <= n; ++end) {
      const auto it = stems_.find(piece(pos, end));
      if (it == stems_.end()) continue;
      for (std::size_t idx : it->second) {
        const auto& entry = lexicon_.stems[idx];
        partial.stem = make_morpheme(entry, MorphemeKind::Stem, word.index + pos, end - pos);
        partial.numericValue = entry.numericValue;
        suffixes(suffixes, end);
      }
    }
    // a stem must follow, so a prefix never reaches the end of the word
    for (std::size_t end = pos + 1; end < n; ++end) {
      const auto it = prefixes_.find(piece(pos, end));
      if (it == prefixes_.end()) continue;
      for (std::size_t idx : it->second) {
        partial.prefixes.push_back(make_morpheme(lexicon_.prefixes[idx], MorphemeKind::Prefix,
                                                 word.index + pos, end - pos));
        self(self, end);
        partial.prefixes.pop_back();
      }
    }
  };

  prefixes(prefixes, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PrecomputedAnalyzer::PrecomputedAnalyzer(const AnalyzedText& records) {
  for (const auto& record : records) {
    by_offset_[{record.word.index, record.word.surface}] = record.solutions;
    by_surface_.emplace(record.word.surface, record);
  }
}

std::vector<MorphSolution> PrecomputedAnalyzer::analyze(const Word& word) const {
  if (auto it = by_offset_.find({word.index, word.surface}); it != by_offset_.end())
    return it->second;
  const auto it = by_surface_.find(word.surface);
  if (it == by_surface_.end()) return {};
  std::vector<MorphSolution> rebased = it->second.solutions;
  const auto from = static_cast<long long>(it->second.word.index);
  const auto to = static_cast<long long>(word.index);
  for (auto& sol : rebased) {
    auto shift = [&](Morpheme& m) {
      m.index = static_cast<std::size_t>(static_cast<long long>(m.index) - from + to);
    };
    for (auto& m : sol.prefixes) shift(m);
    shift(sol.stem);
    for (auto& m : sol.suffixes) shift(m);
  }
  return rebased;
}

std::vector<Word> tokenize(std::string_view document) {
  const std::u32string cps = text::decode(document);
  std::vector<Word> words;
  std::size_t start = 0;
  bool in_token = false;

  auto breaks = [&](std::size_t i) {
    const char32_t c = cps[i];
    if (text::is_space(c) || text::is_separator(c)) return true;
    if (c != U'.') return false;
    // '.' is a word character only between two word characters
    if (!in_token) return true;
    if (i + 1 >= cps.size()) return true;
    const char32_t next = cps[i + 1];
    return text::is_space(next) || text::is_separator(next) || next == U'.';
  };

  for (std::size_t i = 0; i <= cps.size(); ++i) {
    const bool boundary = i == cps.size() || breaks(i);
    if (boundary) {
      if (in_token) {
        words.push_back(Word{text::encode(std::u32string_view(cps).substr(start, i - start)), start,
                             i - start});
        in_token = false;
      }
    } else if (!in_token) {
      in_token = true;
      start = i;
    }
  }
  return words;
}

std::vector<MorphSolution> analyze_word(const Word& word, const Lexicon& lexicon) {
  return LexiconAnalyzer(lexicon).analyze(word);
}

AnalyzedText analyze_text(std::string_view document, const Analyzer& analyzer) {
  AnalyzedText out;
  for (auto& word : tokenize(document)) {
    auto solutions = analyzer.analyze(word);
    out.push_back(AnalyzedWord{std::move(word), std::move(solutions)});
  }
  return out;
}

AnalyzedText analyze_text(std::string_view document, const Lexicon& lexicon) {
  return analyze_text(document, LexiconAnalyzer(lexicon));
}

void validate_analysis(const AnalyzedText& words, std::string_view path) {
  const std::string base(path);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto& record = words[w];
    const auto wpath = base + "[" + std::to_string(w) + "]";
    if (record.word.surface.empty()) throw ValidationError(wpath + ".word", "empty word");
    if (text::length(record.word.surface) != record.word.length)
      throw ValidationError(wpath + ".length", "length does not match the word's code points");
    for (std::size_t s = 0; s < record.solutions.size(); ++s) {
      const auto& sol = record.solutions[s];
      const auto spath = wpath + ".solutions[" + std::to_string(s) + "]";
      std::size_t cursor = record.word.index;
      std::string problem;
      auto check = [&](const Morpheme& m, MorphemeKind expected) {
        if (!problem.empty()) return;
        if (m.kind != expected)
          problem = "morpheme '" + m.form + "' has kind " + std::string(to_string(m.kind)) +
                    " in the " + std::string(to_string(expected)) + " slot";
        else if (m.length == 0)
          problem = "morpheme '" + m.form + "' has zero length";
        else if (m.index != cursor)
          problem = "morpheme '" + m.form + "' does not start where the previous one ended";
        cursor += m.length;
      };
      for (const auto& m : sol.prefixes) check(m, MorphemeKind::Prefix);
      check(sol.stem, MorphemeKind::Stem);
      for (const auto& m : sol.suffixes) check(m, MorphemeKind::Suffix);
      if (!problem.empty()) throw ValidationError(spath, problem);
      if (sol.total_length() != record.word.length)
        throw ValidationError(spath, "morpheme lengths sum to " +
                                         std::to_string(sol.total_length()) + ", word '" +
                                         record.word.surface + "' has length " +
                                         std::to_string(record.word.length));
    }
  }
}

}  // namespace morphex
