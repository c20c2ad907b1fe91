#pragma once

// Helpers shared by the unit tests and the acceptance binary: fixture
// loading and independent oracles.

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "morphex/formula.hpp"
#include "morphex/io.hpp"
#include "morphex/match.hpp"
#include "morphex/project.hpp"
#include "morphex/rules.hpp"
#include "morphex/synk.hpp"

namespace support {

using namespace morphex;

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(MORPHEX_FIXTURES) / rel;
}

inline std::unique_ptr<Engine> load_engine(const std::string& dir) {
  return std::make_unique<Engine>(io::read_project(fixture(dir + "/project.json")));
}

inline std::string read_fixture(const std::string& rel) { return io::read_file(fixture(rel)); }

// ---------------------------------------------------------------------------
// Regex oracle: set semantics by direct recursion over the expression.

inline TagSetSequence make_sequence(const std::vector<std::set<std::string>>& tags) {
  TagSetSequence seq;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    seq.words.push_back(Word{"w" + std::to_string(i), i * 4, 3});
    seq.perWord.push_back(tags[i].empty() ? std::set<std::string>{std::string(kNoneLabel)}
                                          : tags[i]);
  }
  return seq;
}

class BruteMatcher {
public:
  explicit BruteMatcher(const TagSetSequence& seq) : seq_(seq) {}

  // Every end position of a match of `n` starting at `i`.
  std::set<std::size_t> ends(const RuleNode& n, std::size_t i) const {
    std::set<std::size_t> out;
    switch (n.kind) {
      case NodeKind::Label:
        if (i < seq_.size() && accepts(n.symbol, i)) out.insert(i + 1);
        break;
      case NodeKind::Concat: {
        std::set<std::size_t> cur{i};
        for (const auto& c : n.children) {
          std::set<std::size_t> next;
          for (auto p : cur)
            for (auto e : ends(c, p)) next.insert(e);
          cur = std::move(next);
        }
        out = std::move(cur);
        break;
      }
      case NodeKind::Or:
        for (const auto& c : n.children)
          for (auto e : ends(c, i)) out.insert(e);
        break;
      case NodeKind::And: {
        const auto l = ends(n.children[0], i), r = ends(n.children[1], i);
        std::set_intersection(l.begin(), l.end(), r.begin(), r.end(),
                              std::inserter(out, out.end()));
        break;
      }
      case NodeKind::Optional:
        out = ends(n.children[0], i);
        out.insert(i);
        break;
      case NodeKind::Star:
        out = repeat(n.children[0], i, seq_.size() + 1);
        break;
      case NodeKind::Plus: {
        for (auto p : ends(n.children[0], i))
          for (auto e : repeat(n.children[0], p, seq_.size() + 1)) out.insert(e);
        break;
      }
      case NodeKind::UpTo:
        out = repeat(n.children[0], i, n.count);
        break;
      case NodeKind::RuleRef:
        out = ends(n.children.at(0), i);
        break;
    }
    return out;
  }

  // Leftmost-longest, non-overlapping, non-empty spans.
  std::vector<std::pair<std::size_t, std::size_t>> scan(const RuleNode& root) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t pos = 0;
    while (pos < seq_.size()) {
      auto e = ends(root, pos);
      e.erase(pos);
      if (e.empty()) {
        ++pos;
        continue;
      }
      out.emplace_back(pos, *e.rbegin());
      pos = *e.rbegin();
    }
    return out;
  }

private:
  bool accepts(const std::string& symbol, std::size_t i) const {
    if (is_other_alias(symbol)) return seq_.is_other(i);
    return seq_.perWord[i].count(symbol) != 0;
  }

  // Ends after at most `times` iterations of `c` (zero iterations included).
  std::set<std::size_t> repeat(const RuleNode& c, std::size_t i, std::size_t times) const {
    std::set<std::size_t> all{i}, frontier{i};
    for (std::size_t k = 0; k < times && !frontier.empty(); ++k) {
      std::set<std::size_t> next;
      for (auto p : frontier)
        for (auto e : ends(c, p))
          if (all.insert(e).second) next.insert(e);
      frontier = std::move(next);
    }
    return all;
  }

  const TagSetSequence& seq_;
};

inline RuleNode random_expr(std::mt19937& rng, int depth, const std::vector<std::string>& alphabet) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 8);
  auto leaf = [&] {
    std::uniform_int_distribution<std::size_t> a(0, alphabet.size());
    const auto i = a(rng);
    return label(i == alphabet.size() ? std::string(kNoneLabel) : alphabet[i]);
  };
  switch (pick(rng)) {
    case 0:
      return leaf();
    case 1:
    case 2: {
      std::vector<RuleNode> cs;
      const int n = std::uniform_int_distribution<int>(2, 3)(rng);
      for (int i = 0; i < n; ++i) cs.push_back(random_expr(rng, depth - 1, alphabet));
      return concat(std::move(cs));
    }
    case 3: {
      std::vector<RuleNode> cs;
      const int n = std::uniform_int_distribution<int>(2, 3)(rng);
      for (int i = 0; i < n; ++i) cs.push_back(random_expr(rng, depth - 1, alphabet));
      return alt(std::move(cs));
    }
    case 4:
      return star(random_expr(rng, depth - 1, alphabet));
    case 5:
      return plus(random_expr(rng, depth - 1, alphabet));
    case 6:
      return optional(random_expr(rng, depth - 1, alphabet));
    case 7:
      return upto(random_expr(rng, depth - 1, alphabet),
                  std::uniform_int_distribution<unsigned>(1, 3)(rng));
    default:
      return conj(random_expr(rng, depth - 1, alphabet), random_expr(rng, depth - 1, alphabet));
  }
}

inline std::vector<std::set<std::string>> random_tags(std::mt19937& rng, std::size_t len,
                                                      const std::vector<std::string>& alphabet) {
  std::vector<std::set<std::string>> out(len);
  std::bernoulli_distribution coin(0.4);
  for (auto& s : out)
    for (const auto& a : alphabet)
      if (coin(rng)) s.insert(a);
  return out;
}

inline CompiledRule compile_expr(const RuleNode& root, const std::string& name = "r") {
  RuleSet set;
  set.rules.push_back(Rule{name, root, 1});
  return compile_rule(set.rules.back(), set);
}

inline std::vector<std::pair<std::size_t, std::size_t>> spans(const std::vector<MatchTree>& ts) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : ts) out.emplace_back(t.begin(), t.end());
  return out;
}

// ---------------------------------------------------------------------------
// Naive Syn^k straight from the set definition: Sy^1 are stems sharing a gloss
// with a seed, Sy^{i+1} those sharing a gloss with a member of Sy^i.

inline StemSet naive_syn(const std::map<std::string, std::set<std::string>>& alpha,
                         const StemSet& seeds, int k) {
  auto shares = [&](const std::string& u, const std::string& s) {
    const auto& a = alpha.at(u);
    const auto& b = alpha.at(s);
    for (const auto& g : a)
      if (b.count(g)) return true;
    return false;
  };
  StemSet level = seeds, all;
  for (int i = 1; i <= k; ++i) {
    StemSet next;
    for (const auto& [u, _] : alpha)
      for (const auto& s : level)
        if (alpha.count(s) && shares(u, s)) {
          next.insert(u);
          break;
        }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

inline std::map<std::string, std::set<std::string>> random_alpha(std::mt19937& rng, int stems,
                                                                 int glosses) {
  std::map<std::string, std::set<std::string>> alpha;
  std::uniform_int_distribution<int> g(0, glosses - 1), n(1, 3);
  for (int s = 0; s < stems; ++s) {
    auto& set = alpha["s" + std::to_string(s)];
    for (int i = n(rng); i > 0; --i) set.insert("g" + std::to_string(g(rng)));
  }
  return alpha;
}

inline GlossGraph graph_of(const std::map<std::string, std::set<std::string>>& alpha) {
  GlossGraph graph;
  for (const auto& [s, gs] : alpha) graph.add_stem(s, gs);
  return graph;
}

// The stem/gloss graph drawn for Syn^2 of mA'.
inline GlossGraph water_graph() {
  GlossGraph g;
  g.add_stem("mA'", {"water"});
  g.add_stem("n.d.h", {"water", "leak", "spray"});
  g.add_stem("r^s^s", {"spray", "splatter"});
  return g;
}

// ---------------------------------------------------------------------------
// Numerals in the toy transliterated lexicon of fixtures/numbers.

inline std::string unit_word(int u) {
  static const char* const words[] = {"",     "wAHd", "AvnAn",  "vlAvp", "ArbEp", "xmsp",
                                      "stp",  "sbEp", "vmAnyp", "tsEp",  "E$rp"};
  return words[u];
}

inline std::string tens_word(int t) {
  static const char* const words[] = {"",      "",      "E$rwn", "vlAvwn", "ArbEwn",
                                      "xmswn", "stwn",  "sbEwn", "vmAnwn", "tsEwn"};
  return words[t];
}

// Words of 1..999 with hundreds first, then units, then tens.
inline std::vector<std::string> group_words(int g) {
  std::vector<std::string> w;
  const int h = g / 100, r = g % 100;
  if (h == 1) w.push_back("mA}p");
  if (h == 2) w.push_back("mA}tAn");
  if (h >= 3) {
    w.push_back(unit_word(h));
    w.push_back("mA}p");
  }
  if (r == 0) return w;
  if (r <= 10) {
    w.push_back(unit_word(r));
  } else if (r == 11) {
    w.insert(w.end(), {"AHd", "E$r"});
  } else if (r == 12) {
    w.insert(w.end(), {"AvnA", "E$r"});
  } else if (r < 20) {
    w.push_back(unit_word(r - 10));
    w.push_back("E$r");
  } else {
    if (r % 10) w.push_back(unit_word(r % 10));
    w.push_back(tens_word(r / 10));
  }
  return w;
}

inline std::vector<std::string> numeral_words(int n) {
  std::vector<std::string> w;
  const int a = n / 1000, b = n % 1000;
  if (a == 1) {
    w.push_back("Alf");
  } else if (a == 2) {
    w.insert(w.end(), {"AvnAn", "Alf"});
  } else if (a >= 3 && a <= 10) {
    w = group_words(a);
    w.push_back("AlAf");
  } else if (a > 10) {
    w = group_words(a);
    w.push_back("Alf");
  }
  if (b) {
    auto rest = group_words(b);
    w.insert(w.end(), rest.begin(), rest.end());
  }
  return w;
}

// Prefixes the conjunction "w" to every word after the first.
inline std::string render_numeral(int n) {
  std::string out;
  for (const auto& word : numeral_words(n)) out += out.empty() ? word : " w" + word;
  return out;
}

// Reads a rendered numeral back with a group multiplier: values below 1000
// accumulate, a thousands word multiplies the pending group.
inline long long parse_numeral(const std::string& text) {
  static const std::map<std::string, int> value = [] {
    std::map<std::string, int> m;
    for (int u = 1; u <= 10; ++u) m[unit_word(u)] = u;
    m["AHd"] = 1;
    m["AvnA"] = 2;
    m["E$r"] = 10;
    for (int t = 2; t <= 9; ++t) m[tens_word(t)] = t * 10;
    return m;
  }();
  long long total = 0, group = 0;
  std::string word;
  std::vector<std::string> words;
  for (char c : text + " ") {
    if (c == ' ') {
      if (!word.empty()) words.push_back(word);
      word.clear();
    } else {
      word += c;
    }
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string w = words[i];
    if (i > 0 && w.size() > 1 && w[0] == 'w') w = w.substr(1);
    if (w == "Alf" || w == "AlAf") {
      total += (group == 0 ? 1 : group) * 1000;
      group = 0;
    } else if (w == "mA}p") {
      // "unit mA}p": the unit just read becomes the hundreds digit
      group = group == 0 ? 100 : (group - group % 100) + (group % 100) * 100;
    } else if (w == "mA}tAn") {
      group += 200;
    } else {
      group += value.at(w);
    }
  }
  return total + group;
}

}  // namespace support
