#include <random>

#include "doctest.h"
#include "morphex/error.hpp"
#include "morphex/io.hpp"
#include "morphex/morphology.hpp"
#include "morphex/text.hpp"
#include "support.hpp"

using namespace morphex;

namespace {

// The sample solution vector: prefixes fa, sa, ya; stem 'kl; suffix hA.
Lexicon table_lexicon() {
  Lexicon lex;
  lex.stems.push_back({"أكل", "VERB_IMPERFECT", {"eat", "consume"}, {}, std::nullopt});
  lex.stems.push_back({"قال", "VERB_PERFECT", {"say"}, {}, std::nullopt});
  lex.prefixes = {{"ف", "CONJ", {"and", "so"}, {}},
                  {"س", "FUT", {"will"}, {}},
                  {"ي", "IV3MS", {"he", "it"}, {}}};
  lex.suffixes = {{"ها", "IVSUFF_DO:3FS", {"it", "them", "her"}, {}}};
  return lex;
}

std::size_t morpheme_total(const MorphSolution& s) {
  std::size_t n = 0;
  s.for_each_morpheme([&](const Morpheme& m) { n += m.length; });
  return n;
}

}  // namespace

TEST_CASE("sample solution vector") {
  const auto text = analyze_text("قال الرجل فسيأكلها", table_lexicon());
  REQUIRE(text.size() == 3);
  const auto& w = text[2];
  CHECK(w.word.index == 10);
  REQUIRE(w.solutions.size() == 1);
  const auto& s = w.solutions[0];
  REQUIRE(s.prefixes.size() == 3);
  CHECK(s.prefixes[0].index == 10);
  CHECK(s.prefix_string() == "فسي");
  CHECK(s.prefixes.back().index + s.prefixes.back().length - s.prefixes[0].index == 3);
  CHECK(s.stem.form == "أكل");
  CHECK(s.stem.index == 13);
  CHECK(s.stem.length == 3);
  REQUIRE(s.suffixes.size() == 1);
  CHECK(s.suffixes[0].index == 16);
  CHECK(s.suffixes[0].length == 2);
  CHECK(s.pos_string() == "CONJ+FUT+IV3MS+VERB_IMPERFECT+IVSUFF_DO:3FS");
  CHECK(text[1].solutions.empty());
}

TEST_CASE("bare stem gives one solution without affixes") {
  const auto s = analyze_word(Word{"قال", 0, 3}, table_lexicon());
  REQUIRE(s.size() == 1);
  CHECK(s[0].prefixes.empty());
  CHECK(s[0].suffixes.empty());
}

TEST_CASE("unknown word has no solutions") {
  CHECK(analyze_word(Word{"xyz", 0, 3}, table_lexicon()).empty());
}

TEST_CASE("all segmentations are enumerated") {
  Lexicon lex;
  lex.stems = {{"ab", "", {}, {}, std::nullopt}, {"b", "", {}, {}, std::nullopt}};
  lex.prefixes = {{"a", "", {}, {}}};
  const auto s = analyze_word(Word{"ab", 0, 2}, lex);
  CHECK(s.size() == 2);
}

TEST_CASE("numeric values come from the stem entry") {
  Lexicon lex;
  lex.categories = {"DT"};
  lex.stems = {{"xmsp", "num", {"five"}, {"DT"}, 5.0}};
  lex.prefixes = {{"w", "conj", {"and"}, {}}};
  const auto s = analyze_word(Word{"wxmsp", 0, 5}, lex);
  REQUIRE(s.size() == 1);
  REQUIRE(s[0].numericValue);
  CHECK(*s[0].numericValue == 5.0);
}

TEST_CASE("lexicon validation") {
  Lexicon lex;
  lex.categories = {"A", "A"};
  CHECK_THROWS_AS(lex.validate(), ValidationError);
  lex.categories = {"A"};
  lex.stems = {{"x", "", {}, {"B"}, std::nullopt}};
  try {
    lex.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.path() == "stems[0].category[0]");
  }
  lex.stems = {{"x", "", {}, {"A"}, std::nullopt}};
  lex.words["y"] = {"missing"};
  CHECK_THROWS_AS(lex.validate(), ValidationError);
}

TEST_CASE("property: morphemes tile the word and analysis is deterministic") {
  std::mt19937 rng(7);
  Lexicon lex;
  const char* pieces[] = {"a", "b", "ab", "ba", "aa"};
  for (const char* p : pieces) {
    lex.stems.push_back({p, "", {}, {}, std::nullopt});
    lex.prefixes.push_back({p, "", {}, {}});
    lex.suffixes.push_back({p, "", {}, {}});
  }
  std::uniform_int_distribution<int> len(1, 6), bit(0, 1);
  for (int i = 0; i < 300; ++i) {
    std::string w;
    for (int k = len(rng); k > 0; --k) w += bit(rng) ? 'a' : 'b';
    const Word word{w, 5, w.size()};
    const auto a = analyze_word(word, lex);
    CHECK(a == analyze_word(word, lex));
    for (const auto& s : a) {
      CHECK(morpheme_total(s) == w.size());
      std::size_t pos = 5;
      s.for_each_morpheme([&](const Morpheme& m) {
        CHECK(m.index == pos);
        pos += m.length;
      });
    }
    CHECK_NOTHROW(validate_analysis({AnalyzedWord{word, a}}));
  }
}

TEST_CASE("solutions file round trip") {
  const auto text = analyze_text("قال الرجل فسيأكلها", table_lexicon());
  const auto j = io::to_json(text);
  const auto back = io::solutions_from_json(io::parse(io::canonical(j), "mem"));
  CHECK(back == text);
  CHECK(io::canonical(io::to_json(back)) == io::canonical(j));
  CHECK(io::solutions_from_json(io::json::array()).empty());
}

TEST_CASE("solutions file rejects morphemes that do not tile the word") {
  const auto text = analyze_text("فسيأكلها", table_lexicon());
  auto j = io::to_json(text);
  j[0]["solutions"][0]["stem"]["length"] = 4;
  CHECK_THROWS_AS(io::solutions_from_json(j), ValidationError);
}

TEST_CASE("precomputed analyzer serves recorded solutions") {
  const auto text = analyze_text("قال فسيأكلها", table_lexicon());
  PrecomputedAnalyzer pre(text);
  CHECK(analyze_text("قال فسيأكلها", pre) == text);
  // same surface at another offset: morphemes are rebased
  const auto moved = analyze_text("xx فسيأكلها", pre);
  REQUIRE(moved[1].solutions.size() == 1);
  CHECK(moved[1].solutions[0].stem.index == 6);
}

TEST_CASE("direction fixture tags brj as a place") {
  const auto lex = io::read_lexicon(support::fixture("direction/lexicon.json"));
  const auto text = analyze_text(support::read_fixture("direction/document.txt"), lex);
  CHECK(text.size() == 41);
  CHECK(text[4].word.surface == "brj");
  REQUIRE(!text[4].solutions.empty());
  CHECK(text[4].solutions[0].categories() == std::vector<std::string>{"Name_of_Place"});
}
