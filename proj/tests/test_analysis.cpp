#include <functional>
#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "morphex/analysis.hpp"
#include "morphex/error.hpp"

using namespace morphex;

namespace {

Tag tag(std::size_t i, std::size_t l, std::string label = "X") { return Tag{i, l, std::move(label), TagSource::Auto}; }

bool pair_ok(OverlapPredicate p, const Tag& a, const Tag& b) {
  return a.label == b.label && spans_match(p, a, b);
}

// Largest one-to-one matching by trying every assignment of A to B.
std::size_t brute_matching(const std::vector<Tag>& a, const std::vector<Tag>& b, OverlapPredicate p) {
  std::size_t best = 0;
  std::vector<bool> used(b.size());
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t n) {
    best = std::max(best, n);
    if (i == a.size()) return;
    go(i + 1, n);
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && pair_ok(p, a[i], b[j])) {
        used[j] = true;
        go(i + 1, n + 1);
        used[j] = false;
      }
  };
  go(0, 0);
  return best;
}

std::vector<Tag> random_tags(std::mt19937& rng, int max) {
  std::uniform_int_distribution<int> n(0, max), idx(0, 20), len(1, 6), lab(0, 1);
  std::vector<Tag> out;
  for (int i = n(rng); i > 0; --i) out.push_back(tag(idx(rng), len(rng), lab(rng) ? "X" : "Y"));
  return out;
}

}  // namespace

TEST_CASE("identical single tags") {
  const std::vector<Tag> a{tag(0, 4)};
  const auto r = diff_tags(a, a, OverlapPredicate::Exact);
  CHECK(r.precision == Rational(1, 1));
  CHECK(r.recall == Rational(1, 1));
  CHECK(r.fMeasure == Rational(1, 1));
}

TEST_CASE("one of two matches on each side") {
  const std::vector<Tag> a{tag(0, 4), tag(10, 3)}, b{tag(0, 4), tag(20, 2)};
  const auto r = diff_tags(a, b, OverlapPredicate::Exact);
  CHECK(r.precision == Rational(1, 2));
  CHECK(r.recall == Rational(1, 2));
  CHECK(r.fMeasure == Rational(1, 2));
  CHECK(r.common == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(r.onlyA == std::vector<std::size_t>{1});
  CHECK(r.onlyB == std::vector<std::size_t>{1});
}

TEST_CASE("containment predicates") {
  const std::vector<Tag> a{tag(0, 6)}, b{tag(2, 2)};
  CHECK(diff_tags(a, b, OverlapPredicate::AIncludesB).common.size() == 1);
  CHECK(diff_tags(a, b, OverlapPredicate::BIncludesA).common.empty());
  CHECK(diff_tags(a, b, OverlapPredicate::Exact).common.empty());
  CHECK(diff_tags(a, b, OverlapPredicate::Intersection).common.size() == 1);
  CHECK_FALSE(spans_match(OverlapPredicate::Intersection, tag(0, 2), tag(2, 2)));
}

TEST_CASE("labels must agree") {
  const std::vector<Tag> a{tag(0, 4, "P")}, b{tag(0, 4, "N")};
  const auto r = diff_tags(a, b, OverlapPredicate::Intersection);
  CHECK(r.common.empty());
  CHECK(r.fMeasure == Rational(0, 1));
}

TEST_CASE("empty sets and unequal rates") {
  const std::vector<Tag> none;
  const auto r = diff_tags(none, none, OverlapPredicate::Exact);
  CHECK(r.precision == Rational(1, 1));
  CHECK(r.recall == Rational(1, 1));
  const std::vector<Tag> a{tag(0, 2), tag(3, 2), tag(6, 2)}, b{tag(0, 2)};
  const auto q = diff_tags(a, b, OverlapPredicate::Exact);
  CHECK(q.precision == Rational(1, 1));
  CHECK(q.recall == Rational(1, 3));
  CHECK(q.fMeasure == Rational(1, 2));
  const auto z = diff_tags(a, none, OverlapPredicate::Exact);
  CHECK(z.precision == Rational(1, 1));
  CHECK(z.recall == Rational(0, 1));
  CHECK(z.fMeasure == Rational(0, 1));
}

TEST_CASE("matching is one-to-one and maximum") {
  // a greedy pass in start order would pair a0 with b0 and strand a1
  const std::vector<Tag> a{tag(0, 10), tag(4, 2)}, b{tag(3, 4), tag(8, 4)};
  const auto r = diff_tags(a, b, OverlapPredicate::Intersection);
  CHECK(r.common.size() == 2);
  const std::vector<Tag> many{tag(0, 4), tag(0, 4)}, one{tag(0, 4)};
  CHECK(diff_tags(many, one, OverlapPredicate::Exact).common.size() == 1);
}

TEST_CASE("bounds are validated") {
  const std::vector<Tag> a{tag(0, 4)}, empty{tag(1, 0)};
  CHECK_THROWS_AS(diff_tags(a, a, OverlapPredicate::Exact, 3), ValidationError);
  CHECK_NOTHROW(diff_tags(a, a, OverlapPredicate::Exact, 4));
  CHECK_THROWS_AS(diff_tags(empty, a, OverlapPredicate::Exact), ValidationError);
}

TEST_CASE("rationals") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(0, 5) == Rational(0, 1));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("predicate names") {
  for (auto p : {OverlapPredicate::Intersection, OverlapPredicate::Exact, OverlapPredicate::AIncludesB,
                 OverlapPredicate::BIncludesA})
    CHECK(overlap_predicate_from(to_string(p)) == p);
  CHECK_FALSE(overlap_predicate_from("overlap"));
}

TEST_CASE("tag type differences") {
  CHECK(diff_tagtypes({"N", "P"}, {"P", "R"}) == TagTypeDiff{{"P"}, {"N"}, {"R"}});
  CHECK(diff_tagtypes({"A"}, {"A"}) == TagTypeDiff{{"A"}, {}, {}});
  CHECK(diff_tagtypes({"A"}, {"B"}).common.empty());
}

TEST_CASE("report rendering mentions the rates") {
  const std::vector<Tag> a{tag(0, 4), tag(10, 3)}, b{tag(0, 4), tag(20, 2)};
  const auto text = render_report(diff_tags(a, b, OverlapPredicate::Exact), OverlapPredicate::Exact);
  CHECK(text.find("exact") != std::string::npos);
  CHECK(text.find("1/2") != std::string::npos);
}

TEST_CASE("property: counts against brute force, monotone predicates, swap symmetry") {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_tags(rng, 6), b = random_tags(rng, 6);
    std::size_t prev = 0;
    for (auto p : {OverlapPredicate::Exact, OverlapPredicate::AIncludesB,
                   OverlapPredicate::Intersection}) {
      const auto r = diff_tags(a, b, p);
      CHECK(r.common.size() == brute_matching(a, b, p));
      CHECK(r.common.size() >= prev);
      prev = r.common.size();
      CHECK(r.common.size() + r.onlyA.size() == a.size());
      CHECK(r.common.size() + r.onlyB.size() == b.size());
      CHECK_FALSE(Rational(1, 1) < r.precision);
      CHECK_FALSE(Rational(1, 1) < r.recall);
      const double pr = r.precision.value(), rc = r.recall.value();
      CHECK(r.fMeasure.value() == doctest::Approx(pr + rc == 0 ? 0 : 2 * pr * rc / (pr + rc)));
    }
    const auto ab = diff_tags(a, b, OverlapPredicate::Intersection);
    const auto ba = diff_tags(b, a, OverlapPredicate::Intersection);
    CHECK(ab.precision == ba.recall);
    CHECK(ab.recall == ba.precision);
    CHECK(diff_tags(a, b, OverlapPredicate::AIncludesB).common.size() ==
          diff_tags(b, a, OverlapPredicate::BIncludesA).common.size());
  }
}
