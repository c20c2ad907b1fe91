#include "doctest.h"
#include "morphex/morphology.hpp"
#include "morphex/text.hpp"

using namespace morphex;

TEST_CASE("utf-8 round trip and code point counts") {
  const std::string s = "brj فسيأكلها";
  CHECK(text::length(s) == 12);
  CHECK(text::encode(text::decode(s)) == s);
  CHECK(text::slice(s, 4, 3) == "فسي");
  CHECK(text::length("") == 0);
}

TEST_CASE("malformed bytes decode to the replacement character") {
  const auto cps = text::decode(std::string("a\xff" "b"));
  REQUIRE(cps.size() == 3);
  CHECK(cps[1] == 0xFFFD);
}

TEST_CASE("sha256 of published test vectors") {
  CHECK(text::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(text::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("tokenize keeps transliteration symbols inside words") {
  const auto words = tokenize("tlA.h.z AltqA.t` Al-'wl, ^sAr`; end.");
  REQUIRE(words.size() == 5);
  CHECK(words[0].surface == "tlA.h.z");
  CHECK(words[1].surface == "AltqA.t`");
  CHECK(words[2].surface == "Al-'wl");
  CHECK(words[3].surface == "^sAr`");
  CHECK(words[4].surface == "end");
}

TEST_CASE("tokenize offsets are code points") {
  const std::string doc = "قال  الرجل\tفسيأكلها";
  const auto words = tokenize(doc);
  REQUIRE(words.size() == 3);
  for (const auto& w : words) {
    CHECK(text::slice(doc, w.index, w.length) == w.surface);
    CHECK(text::length(w.surface) == w.length);
  }
  CHECK(words[1].index == 5);
  CHECK(words[2].index == 11);
}

TEST_CASE("tokenize edge cases") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("  ,;  ").empty());
  const auto two = tokenize("ab cd");
  REQUIRE(two.size() == 2);
  CHECK(two[1].index == 3);
  // a leading dot is punctuation, an interior one is not
  const auto dots = tokenize(".htY a..b");
  REQUIRE(dots.size() == 3);
  CHECK(dots[0].surface == "htY");
  CHECK(dots[1].surface == "a");
  CHECK(dots[2].surface == "b");
}
