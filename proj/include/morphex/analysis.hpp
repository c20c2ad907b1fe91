#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace morphex {

enum class TagSource { Auto, Manual };

std::string_view to_string(TagSource s);
std::optional<TagSource> tag_source_from(std::string_view name);

/// A labeled character span.
struct Tag {
  std::size_t index = 0;
  std::size_t length = 0;
  std::string label;
  TagSource source = TagSource::Auto;

  std::size_t end() const { return index + length; }
  auto operator<=>(const Tag&) const = default;
};

enum class OverlapPredicate { Intersection, Exact, AIncludesB, BIncludesA };

std::string_view to_string(OverlapPredicate p);
/// Accepts intersection, exact, a-includes-b and b-includes-a.
std::optional<OverlapPredicate> overlap_predicate_from(std::string_view name);

/// Span test only; labels are compared by the caller.
bool spans_match(OverlapPredicate p, const Tag& a, const Tag& b);

/// Exact non-negative fraction in lowest terms.
class Rational {
public:
  Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  bool operator==(const Rational&) const = default;
  friend bool operator<(const Rational& a, const Rational& b);

private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

struct DiffReport {
  /// Matched (reference index, candidate index) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> common;
  std::vector<std::size_t> onlyA;
  std::vector<std::size_t> onlyB;
  Rational precision;
  Rational recall;
  Rational fMeasure;
};

/// One-to-one matching of reference tags `a` against candidate tags `b`.
/// A pair may match when labels are equal and the span predicate holds; the
/// matching is maximum, searched in start order. Empty sets count as perfect
/// agreement; F is 0 when P + R is 0. Throws ValidationError when a tag
/// is empty or, given `documentLength`, runs past the document.
DiffReport diff_tags(std::span<const Tag> a, std::span<const Tag> b, OverlapPredicate predicate,
                     std::optional<std::size_t> documentLength = std::nullopt);

struct TagTypeDiff {
  std::set<std::string> common;
  std::set<std::string> onlyFirst;
  std::set<std::string> onlySecond;

  bool operator==(const TagTypeDiff&) const = default;
};

TagTypeDiff diff_tagtypes(const std::set<std::string>& first, const std::set<std::string>& second);

/// Plain-text P/R/F table.
std::string render_report(const DiffReport& report, OverlapPredicate predicate);

}  // namespace morphex
