#include "morphex/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "morphex/error.hpp"

namespace morphex {

std::string_view to_string(TagSource s) { return s == TagSource::Auto ? "auto" : "manual"; }

std::optional<TagSource> tag_source_from(std::string_view name) {
  if (name == "auto") return TagSource::Auto;
  if (name == "manual") return TagSource::Manual;
  return std::nullopt;
}

std::string_view to_string(OverlapPredicate p) {
  switch (p) {
    case OverlapPredicate::Intersection: return "intersection";
    case OverlapPredicate::Exact: return "exact";
    case OverlapPredicate::AIncludesB: return "a-includes-b";
    case OverlapPredicate::BIncludesA: return "b-includes-a";
  }
  return "";
}

std::optional<OverlapPredicate> overlap_predicate_from(std::string_view name) {
  for (auto p : {OverlapPredicate::Intersection, OverlapPredicate::Exact,
                 OverlapPredicate::AIncludesB, OverlapPredicate::BIncludesA})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

bool spans_match(OverlapPredicate p, const Tag& a, const Tag& b) {
  switch (p) {
    case OverlapPredicate::Intersection:
      return a.index < b.end() && b.index < a.end();
    case OverlapPredicate::Exact:
      return a.index == b.index && a.length == b.length;
    case OverlapPredicate::AIncludesB:
      return a.index <= b.index && b.end() <= a.end();
    case OverlapPredicate::BIncludesA:
      return b.index <= a.index && a.end() <= b.end();
  }
  return false;
}

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error("rational with zero denominator");
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<unsigned __int128>(a.num_) * b.den_ <
         static_cast<unsigned __int128>(b.num_) * a.den_;
}

namespace {

void check_tags(std::span<const Tag> tags, std::optional<std::size_t> documentLength,
                const char* side) {
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto where = std::string(side) + "[" + std::to_string(i) + "]";
    if (tags[i].length == 0) throw ValidationError(where + ".length", "empty tag");
    if (tags[i].label.empty()) throw ValidationError(where + ".label", "tag without label");
    if (documentLength && tags[i].end() > *documentLength)
      throw ValidationError(where, "tag [" + std::to_string(tags[i].index) + ", " +
                                       std::to_string(tags[i].end()) +
                                       ") runs past the document length " +
                                       std::to_string(*documentLength));
  }
}

std::vector<std::size_t> start_order(std::span<const Tag> tags) {
  std::vector<std::size_t> order(tags.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(tags[x].index, tags[x].length) < std::tie(tags[y].index, tags[y].length);
  });
  return order;
}

// Kuhn's augmenting paths.
class Matcher {
public:
  explicit Matcher(std::vector<std::vector<std::size_t>> adj, std::size_t right)
      : adj_(std::move(adj)), owner_(right, kFree) {}

  void run(const std::vector<std::size_t>& order) {
    for (auto a : order) {
      seen_.assign(owner_.size(), false);
      augment(a);
    }
  }

  const std::vector<std::size_t>& owner() const { return owner_; }
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

private:
  bool augment(std::size_t a) {
    for (auto b : adj_[a]) {
      if (seen_[b]) continue;
      seen_[b] = true;
      if (owner_[b] == kFree || augment(owner_[b])) {
        owner_[b] = a;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> owner_;
  std::vector<bool> seen_;
};

}  // namespace

DiffReport diff_tags(std::span<const Tag> a, std::span<const Tag> b, OverlapPredicate predicate,
                     std::optional<std::size_t> documentLength) {
  check_tags(a, documentLength, "reference");
  check_tags(b, documentLength, "candidate");

  const auto orderA = start_order(a);
  const auto orderB = start_order(b);
  std::vector<std::vector<std::size_t>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto j : orderB)
      if (a[i].label == b[j].label && spans_match(predicate, a[i], b[j])) adj[i].push_back(j);

  Matcher matcher(std::move(adj), b.size());
  matcher.run(orderA);

  DiffReport r;
  std::vector<bool> matchedA(a.size(), false);
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto i = matcher.owner()[j];
    if (i == Matcher::kFree) {
      r.onlyB.push_back(j);
    } else {
      matchedA[i] = true;
      r.common.emplace_back(i, j);
    }
  }
  std::sort(r.common.begin(), r.common.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!matchedA[i]) r.onlyA.push_back(i);

  const auto m = r.common.size();
  r.precision = b.empty() ? Rational(1, 1) : Rational(m, b.size());
  r.recall = a.empty() ? Rational(1, 1) : Rational(m, a.size());
  // F = 2PR / (P + R) with P = p1/p2, R = r1/r2.
  const auto p1 = r.precision.num(), p2 = r.precision.den();
  const auto r1 = r.recall.num(), r2 = r.recall.den();
  if (p1 == 0 && r1 == 0)
    r.fMeasure = Rational(0, 1);
  else
    r.fMeasure = Rational(2 * p1 * r1, p1 * r2 + r1 * p2);
  return r;
}

TagTypeDiff diff_tagtypes(const std::set<std::string>& first, const std::set<std::string>& second) {
  TagTypeDiff d;
  std::set_intersection(first.begin(), first.end(), second.begin(), second.end(),
                        std::inserter(d.common, d.common.end()));
  std::set_difference(first.begin(), first.end(), second.begin(), second.end(),
                      std::inserter(d.onlyFirst, d.onlyFirst.end()));
  std::set_difference(second.begin(), second.end(), first.begin(), first.end(),
                      std::inserter(d.onlySecond, d.onlySecond.end()));
  return d;
}

std::string render_report(const DiffReport& report, OverlapPredicate predicate) {
  char buf[256];
  std::string out = "predicate  " + std::string(to_string(predicate)) + "\n";
  std::snprintf(buf, sizeof buf, "common     %zu\nonly A     %zu\nonly B     %zu\n",
                report.common.size(), report.onlyA.size(), report.onlyB.size());
  out += buf;
  const std::pair<const char*, const Rational*> rows[] = {
      {"precision", &report.precision}, {"recall", &report.recall}, {"F", &report.fMeasure}};
  for (const auto& [name, v] : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %.4f  (%s)\n", name, v->value(), v->str().c_str());
    out += buf;
  }
  return out;
}

}  // namespace morphex
