#include "morphex/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "morphex/text.hpp"

namespace morphex::io {

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write " + path.string());
}

json parse(std::string_view text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(where, std::string("malformed JSON: ") + e.what());
  }
}

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Field access on a JSON object that rejects unknown keys.
class Obj {
public:
  Obj(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ValidationError(path_, "expected an object");
    const std::set<std::string_view> ok(allowed);
    for (const auto& [k, v] : j.items())
      if (!ok.count(k)) throw ValidationError(join(path_, k), "unknown field");
  }

  std::string at(std::string_view key) const { return join(path_, key); }
  const json* opt(std::string_view key) const {
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }
  const json& req(std::string_view key) const {
    const json* v = opt(key);
    if (!v) throw ValidationError(at(key), "missing field");
    return *v;
  }

  std::string str(std::string_view key) const { return as_str(req(key), at(key)); }
  std::string str(std::string_view key, const std::string& fallback) const {
    const json* v = opt(key);
    return v ? as_str(*v, at(key)) : fallback;
  }
  bool flag(std::string_view key, bool fallback = false) const {
    const json* v = opt(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ValidationError(at(key), "expected a boolean");
    return v->get<bool>();
  }
  std::size_t count(std::string_view key) const { return as_count(req(key), at(key)); }
  std::optional<double> number(std::string_view key) const {
    const json* v = opt(key);
    if (!v || v->is_null()) return std::nullopt;
    if (!v->is_number()) throw ValidationError(at(key), "expected a number");
    return v->get<double>();
  }
  const json& array(std::string_view key, bool required = true) const {
    static const json empty = json::array();
    const json* v = required ? &req(key) : opt(key);
    if (!v) return empty;
    if (!v->is_array()) throw ValidationError(at(key), "expected an array");
    return *v;
  }
  std::vector<std::string> strings(std::string_view key, bool required = false) const {
    std::vector<std::string> out;
    const json& a = array(key, required);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_str(a[i], item(at(key), i)));
    return out;
  }

  static std::string as_str(const json& v, const std::string& where) {
    if (!v.is_string()) throw ValidationError(where, "expected a string");
    return v.get<std::string>();
  }
  static std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ValidationError(where, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

private:
  const json& j_;
  std::string path_;
};

// Integral values are written without a fraction.
json number_json(double d) {
  if (std::trunc(d) == d && std::fabs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  return d;
}

void check_version(const Obj& o) {
  const json& v = o.req("version");
  if (!v.is_number_integer()) throw ValidationError(o.at("version"), "expected an integer");
  if (v.get<std::int64_t>() != kFormatVersion)
    throw ValidationError(o.at("version"), "unsupported version " + v.dump() + " (expected " +
                                               std::to_string(kFormatVersion) + ")");
}

json affix_json(const AffixEntry& a) {
  return {{"form", a.form}, {"pos", a.pos}, {"gloss", a.gloss}, {"category", a.category}};
}

AffixEntry affix_from(const json& j, const std::string& path) {
  Obj o(j, path, {"form", "pos", "gloss", "category"});
  return {o.str("form"), o.str("pos", ""), o.strings("gloss"), o.strings("category")};
}

json morpheme_json(const Morpheme& m) {
  return {{"form", m.form},   {"kind", to_string(m.kind)}, {"pos", m.pos},
          {"gloss", m.gloss}, {"category", m.category},    {"index", m.index},
          {"length", m.length}};
}

Morpheme morpheme_from(const json& j, const std::string& path) {
  Obj o(j, path, {"form", "kind", "pos", "gloss", "category", "index", "length"});
  Morpheme m;
  m.form = o.str("form");
  const auto kind = morpheme_kind_from(o.str("kind"));
  if (!kind) throw ValidationError(o.at("kind"), "expected prefix, stem or suffix");
  m.kind = *kind;
  m.pos = o.str("pos", "");
  m.gloss = o.strings("gloss");
  m.category = o.strings("category");
  m.index = o.count("index");
  m.length = o.count("length");
  return m;
}

json legend_json(const Legend& l) {
  return {{"color", l.color}, {"bold", l.bold}, {"italic", l.italic}, {"underline", l.underline}};
}

Legend legend_from(const json* j, const std::string& path) {
  Legend l;
  if (!j) return l;
  Obj o(*j, path, {"color", "bold", "italic", "underline"});
  l.color = o.str("color", l.color);
  l.bold = o.flag("bold");
  l.italic = o.flag("italic");
  l.underline = o.flag("underline");
  return l;
}

}  // namespace

json to_json(const Lexicon& lex) {
  json stems = json::array();
  for (const auto& s : lex.stems) {
    json e = {{"form", s.form}, {"pos", s.pos}, {"gloss", s.gloss}, {"category", s.category}};
    if (s.numericValue) e["numericValue"] = number_json(*s.numericValue);
    stems.push_back(std::move(e));
  }
  json prefixes = json::array(), suffixes = json::array();
  for (const auto& a : lex.prefixes) prefixes.push_back(affix_json(a));
  for (const auto& a : lex.suffixes) suffixes.push_back(affix_json(a));
  json words = json::object();
  for (const auto& [w, s] : lex.words) words[w] = s;
  return {{"version", kFormatVersion}, {"categories", lex.categories},
          {"stems", std::move(stems)}, {"prefixes", std::move(prefixes)},
          {"suffixes", std::move(suffixes)}, {"words", std::move(words)}};
}

Lexicon lexicon_from_json(const json& j, const std::string& path) {
  Obj o(j, path, {"version", "categories", "stems", "prefixes", "suffixes", "words"});
  check_version(o);
  Lexicon lex;
  lex.categories = o.strings("categories");
  const json& stems = o.array("stems");
  for (std::size_t i = 0; i < stems.size(); ++i) {
    Obj s(stems[i], item(o.at("stems"), i), {"form", "pos", "gloss", "category", "numericValue"});
    lex.stems.push_back(
        {s.str("form"), s.str("pos", ""), s.strings("gloss"), s.strings("category"), s.number("numericValue")});
  }
  const json& prefixes = o.array("prefixes", false);
  for (std::size_t i = 0; i < prefixes.size(); ++i)
    lex.prefixes.push_back(affix_from(prefixes[i], item(o.at("prefixes"), i)));
  const json& suffixes = o.array("suffixes", false);
  for (std::size_t i = 0; i < suffixes.size(); ++i)
    lex.suffixes.push_back(affix_from(suffixes[i], item(o.at("suffixes"), i)));
  if (const json* w = o.opt("words")) {
    if (!w->is_object()) throw ValidationError(o.at("words"), "expected an object");
    for (const auto& [k, v] : w->items()) {
      const auto where = join(o.at("words"), k);
      if (!v.is_array()) throw ValidationError(where, "expected an array of stems");
      std::vector<std::string> s;
      for (std::size_t i = 0; i < v.size(); ++i) s.push_back(Obj::as_str(v[i], item(where, i)));
      lex.words[k] = std::move(s);
    }
  }
  try {
    lex.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(join(path, e.path()), e.what());
  }
  return lex;
}

json to_json(const AnalyzedText& words) {
  json out = json::array();
  for (const auto& w : words) {
    json sols = json::array();
    for (const auto& s : w.solutions) {
      json prefixes = json::array(), suffixes = json::array();
      for (const auto& m : s.prefixes) prefixes.push_back(morpheme_json(m));
      for (const auto& m : s.suffixes) suffixes.push_back(morpheme_json(m));
      json e = {{"prefixes", std::move(prefixes)},
                {"stem", morpheme_json(s.stem)},
                {"suffixes", std::move(suffixes)}};
      if (s.numericValue) e["numericValue"] = number_json(*s.numericValue);
      sols.push_back(std::move(e));
    }
    out.push_back({{"word", w.word.surface},
                   {"index", w.word.index},
                   {"length", w.word.length},
                   {"solutions", std::move(sols)}});
  }
  return out;
}

AnalyzedText solutions_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array of word records");
  AnalyzedText out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto where = item(path, i);
    Obj o(j[i], where, {"word", "index", "length", "solutions"});
    AnalyzedWord w;
    w.word.surface = o.str("word");
    w.word.index = o.count("index");
    w.word.length = o.count("length");
    if (text::length(w.word.surface) != w.word.length)
      throw ValidationError(o.at("length"), "does not match the word '" + w.word.surface + "'");
    const json& sols = o.array("solutions");
    for (std::size_t k = 0; k < sols.size(); ++k) {
      const auto sw = item(o.at("solutions"), k);
      Obj s(sols[k], sw, {"prefixes", "stem", "suffixes", "numericValue"});
      MorphSolution sol;
      const json& pre = s.array("prefixes", false);
      for (std::size_t m = 0; m < pre.size(); ++m)
        sol.prefixes.push_back(morpheme_from(pre[m], item(s.at("prefixes"), m)));
      sol.stem = morpheme_from(s.req("stem"), s.at("stem"));
      const json& suf = s.array("suffixes", false);
      for (std::size_t m = 0; m < suf.size(); ++m)
        sol.suffixes.push_back(morpheme_from(suf[m], item(s.at("suffixes"), m)));
      sol.numericValue = s.number("numericValue");
      w.solutions.push_back(std::move(sol));
    }
    out.push_back(std::move(w));
  }
  validate_analysis(out, path);
  return out;
}

json to_json(const TagType& t) {
  json terms = json::array();
  for (const auto& term : t.formula.terms) {
    json e = {{"feature", to_string(term.feature)},
              {"predicate", to_string(term.predicate)},
              {"value", term.value},
              {"negated", term.negated}};
    if (term.synK) e["synK"] = *term.synK;
    terms.push_back(std::move(e));
  }
  return {{"label", t.label},
          {"description", t.description},
          {"legend", legend_json(t.legend)},
          {"formula", {{"terms", std::move(terms)}}}};
}

TagType tag_type_from_json(const json& j, const std::string& path) {
  Obj o(j, path, {"label", "description", "legend", "formula"});
  TagType t;
  t.label = o.str("label");
  t.description = o.str("description", "");
  t.legend = legend_from(o.opt("legend"), o.at("legend"));
  Obj f(o.req("formula"), o.at("formula"), {"terms"});
  const json& terms = f.array("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto where = item(f.at("terms"), i);
    Obj a(terms[i], where, {"feature", "predicate", "value", "negated", "synK"});
    AtomicTerm term;
    const auto feature = feature_from(a.str("feature"));
    if (!feature) throw ValidationError(a.at("feature"), "unknown feature '" + a.str("feature") + "'");
    term.feature = *feature;
    const auto pred = predicate_from(a.str("predicate", "isA"));
    if (!pred) throw ValidationError(a.at("predicate"), "expected isA or contains");
    term.predicate = *pred;
    term.value = a.str("value");
    term.negated = a.flag("negated");
    if (const json* k = a.opt("synK")) {
      if (!k->is_number_integer()) throw ValidationError(a.at("synK"), "expected an integer");
      term.synK = k->get<int>();
    }
    term.validate(where);
    t.formula.terms.push_back(std::move(term));
  }
  return t;
}

json to_json(const Project& p) {
  json tagTypes = json::array();
  for (const auto& t : p.tagTypes) tagTypes.push_back(to_json(t));
  json mre = json::array();
  for (const auto& t : p.mreTagTypes)
    mre.push_back({{"label", t.label}, {"description", t.description}, {"legend", legend_json(t.legend)}});
  json relations = json::array();
  for (const auto& r : p.relations)
    relations.push_back({{"name", r.name},
                         {"rule", r.rule},
                         {"source", r.source},
                         {"destination", r.destination},
                         {"label", r.label},
                         {"next", r.next}});
  json actions = json::array();
  for (const auto& a : p.actions)
    actions.push_back({{"rule", a.rule},
                       {"binding", a.binding},
                       {"phase", to_string(a.phase)},
                       {"source", a.source}});
  json lexicon = p.lexiconPath ? json(*p.lexiconPath) : to_json(p.lexicon);
  return {{"version", kFormatVersion},      {"lexicon", std::move(lexicon)},
          {"tagTypes", std::move(tagTypes)}, {"rules", p.rules},
          {"mreTagTypes", std::move(mre)},   {"relations", std::move(relations)},
          {"actions", std::move(actions)}};
}

Project project_from_json(const json& j, const std::filesystem::path& baseDir,
                          const std::string& path) {
  Obj o(j, path, {"version", "lexicon", "tagTypes", "rules", "mreTagTypes", "relations", "actions"});
  check_version(o);
  Project p;
  const json& lex = o.req("lexicon");
  if (lex.is_string()) {
    p.lexiconPath = lex.get<std::string>();
    const auto file = baseDir / *p.lexiconPath;
    std::string bytes;
    try {
      bytes = read_file(file);
    } catch (const Error& e) {
      throw ValidationError(o.at("lexicon"), std::string("lexicon not found: ") + e.what());
    }
    p.lexicon = lexicon_from_json(parse(bytes, file.string()), file.string());
  } else {
    p.lexicon = lexicon_from_json(lex, o.at("lexicon"));
  }
  const json& tagTypes = o.array("tagTypes", false);
  for (std::size_t i = 0; i < tagTypes.size(); ++i)
    p.tagTypes.push_back(tag_type_from_json(tagTypes[i], item(o.at("tagTypes"), i)));
  p.rules = o.str("rules", "");
  const json& mre = o.array("mreTagTypes", false);
  for (std::size_t i = 0; i < mre.size(); ++i) {
    Obj m(mre[i], item(o.at("mreTagTypes"), i), {"label", "description", "legend"});
    p.mreTagTypes.push_back(
        {m.str("label"), m.str("description", ""), legend_from(m.opt("legend"), m.at("legend"))});
  }
  const json& rel = o.array("relations", false);
  for (std::size_t i = 0; i < rel.size(); ++i) {
    Obj r(rel[i], item(o.at("relations"), i),
          {"name", "rule", "source", "destination", "label", "next"});
    p.relations.push_back({r.str("name"), r.str("rule"), r.str("source"), r.str("destination"),
                           r.str("label"), r.flag("next")});
  }
  const json& act = o.array("actions", false);
  for (std::size_t i = 0; i < act.size(); ++i) {
    Obj a(act[i], item(o.at("actions"), i), {"rule", "binding", "phase", "source"});
    const auto phase = action_phase_from(a.str("phase"));
    if (!phase) throw ValidationError(a.at("phase"), "expected preMatch or onMatch");
    p.actions.push_back({a.str("rule"), a.str("binding"), *phase, a.str("source")});
  }
  try {
    validate_project(p);
  } catch (const ValidationError& e) {
    if (path.empty()) throw;
    const std::string msg = e.what();
    throw ValidationError(join(path, e.path()),
                          e.path().empty() ? msg : msg.substr(e.path().size() + 2));
  }
  return p;
}

json to_json(const MatchNode& n) {
  json children = json::array();
  for (const auto& c : n.children) children.push_back(to_json(c));
  json out = {{"kind", to_string(n.kind)}, {"node", n.node},  {"begin", n.begin},
              {"end", n.end},              {"children", std::move(children)}};
  if (!n.symbol.empty()) out["symbol"] = n.symbol;
  if (!n.path.empty()) out["path"] = n.path;
  if (n.repetition) out["repetition"] = true;
  if (!n.leafLabel.empty()) out["leafLabel"] = n.leafLabel;
  return out;
}

MatchNode match_node_from_json(const json& j, const std::string& path) {
  Obj o(j, path,
        {"kind", "node", "begin", "end", "children", "symbol", "path", "repetition", "leafLabel"});
  MatchNode n;
  try {
    n.kind = node_kind_from(o.str("kind"));
  } catch (const Error&) {
    throw ValidationError(o.at("kind"), "unknown node kind '" + o.str("kind") + "'");
  }
  n.node = static_cast<std::uint32_t>(o.count("node"));
  n.begin = o.count("begin");
  n.end = o.count("end");
  n.symbol = o.str("symbol", "");
  n.path = o.str("path", "");
  n.repetition = o.flag("repetition");
  n.leafLabel = o.str("leafLabel", "");
  const json& children = o.array("children", false);
  for (std::size_t i = 0; i < children.size(); ++i)
    n.children.push_back(match_node_from_json(children[i], item(o.at("children"), i)));
  return n;
}

json to_json(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return number_json(*d);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return nullptr;
}

Value value_from_json(const json& j, const std::string& path) {
  if (j.is_null()) return {};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ValidationError(path, "expected a number, string, boolean or null");
}

json to_json(const Tag& t) {
  return {{"index", t.index}, {"length", t.length}, {"label", t.label},
          {"source", to_string(t.source)}};
}

Tag tag_from_json(const json& j, const std::string& path) {
  Obj o(j, path, {"index", "length", "label", "source"});
  Tag t;
  t.index = o.count("index");
  t.length = o.count("length");
  t.label = o.str("label");
  const auto source = tag_source_from(o.str("source", "auto"));
  if (!source) throw ValidationError(o.at("source"), "expected auto or manual");
  t.source = *source;
  return t;
}

std::vector<Tag> tags_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array of tags");
  std::vector<Tag> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(tag_from_json(j[i], item(path, i)));
  return out;
}

json to_json(const EntityGraph& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes())
    nodes.push_back({{"id", n.id},
                     {"text", n.text},
                     {"begin", n.begin},
                     {"end", n.end},
                     {"index", n.index},
                     {"length", n.length},
                     {"headStem", n.headStem},
                     {"matches", n.matches},
                     {"attributes", n.attributes}});
  for (const auto& e : g.edges())
    edges.push_back({{"source", e.source},
                     {"destination", e.destination},
                     {"label", e.label},
                     {"relation", e.relation},
                     {"gloss", e.gloss}});
  return {{"version", kFormatVersion}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

EntityGraph graph_from_json(const json& j, const std::string& path) {
  Obj o(j, path, {"version", "nodes", "edges"});
  check_version(o);
  EntityGraph g;
  const json& nodes = o.array("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto where = item(o.at("nodes"), i);
    Obj n(nodes[i], where,
          {"id", "text", "begin", "end", "index", "length", "headStem", "matches", "attributes"});
    EntityNode node;
    node.begin = n.count("begin");
    node.end = n.count("end");
    const auto id = n.str("id");
    if (id != EntityGraph::node_id(node.begin, node.end))
      throw ValidationError(n.at("id"), "id '" + id + "' does not match the node's word range");
    if (g.find(id)) throw ValidationError(n.at("id"), "duplicate node id " + id);
    node.text = n.str("text", "");
    node.index = n.count("index");
    node.length = n.count("length");
    node.headStem = n.str("headStem", "");
    node.matches = n.strings("matches");
    if (const json* a = n.opt("attributes")) {
      if (!a->is_object()) throw ValidationError(n.at("attributes"), "expected an object");
      for (const auto& [k, v] : a->items())
        node.attributes[k] = Obj::as_str(v, join(n.at("attributes"), k));
    }
    g.add_node(std::move(node));
  }
  const json& edges = o.array("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Obj e(edges[i], item(o.at("edges"), i),
          {"source", "destination", "label", "relation", "gloss"});
    g.add_edge({e.str("source"), e.str("destination"), e.str("label"), e.str("relation"),
                e.str("gloss", "")});
  }
  g.validate(path);
  return g;
}

json to_json(const DiffReport& r, OverlapPredicate predicate) {
  auto rational = [](const Rational& q) {
    return json{{"num", q.num()}, {"den", q.den()}, {"value", q.value()}};
  };
  json common = json::array();
  for (const auto& [a, b] : r.common) common.push_back({a, b});
  return {{"predicate", to_string(predicate)}, {"common", std::move(common)},
          {"onlyA", r.onlyA},                  {"onlyB", r.onlyB},
          {"precision", rational(r.precision)}, {"recall", rational(r.recall)},
          {"fMeasure", rational(r.fMeasure)}};
}

json to_json(const TagSetSequence& seq) {
  json words = json::array();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    json w = {{"tags", seq.perWord[i]}};
    if (i < seq.words.size()) {
      w["word"] = seq.words[i].surface;
      w["index"] = seq.words[i].index;
      w["length"] = seq.words[i].length;
    }
    words.push_back(std::move(w));
  }
  return words;
}

std::vector<Tag> TagsFile::all_tags() const {
  std::vector<Tag> out = mbfTags;
  for (const auto& m : matches) out.push_back({m.index, m.length, m.rule, TagSource::Auto});
  out.insert(out.end(), manualTags.begin(), manualTags.end());
  return out;
}

TagsFile make_tags_file(const RunResult& r, std::optional<std::string> graphRef) {
  TagsFile t;
  t.documentSha256 = r.documentSha256;
  t.documentLength = r.documentLength;
  for (std::size_t i = 0; i < r.sequence.size(); ++i) {
    if (r.sequence.is_other(i)) continue;
    const auto& w = r.doc[i].word;
    for (const auto& label : r.sequence.perWord[i])
      t.mbfTags.push_back({w.index, w.length, label, TagSource::Auto});
  }
  for (const auto& m : r.matches) {
    TagsMatch tm;
    tm.rule = m.rule;
    const auto& first = r.doc[m.begin()].word;
    const auto& last = r.doc[m.end() - 1].word;
    tm.index = first.index;
    tm.length = last.index + last.length - first.index;
    tm.tree = m.root;
    t.matches.push_back(std::move(tm));
  }
  t.graph = std::move(graphRef);
  t.annotations = r.env.emitted;
  return t;
}

json to_json(const TagsFile& t) {
  json mbf = json::array(), manual = json::array(), matches = json::array(),
       annotations = json::array();
  for (const auto& tag : t.mbfTags) mbf.push_back(to_json(tag));
  for (const auto& tag : t.manualTags) manual.push_back(to_json(tag));
  for (const auto& m : t.matches)
    matches.push_back(
        {{"rule", m.rule}, {"index", m.index}, {"length", m.length}, {"tree", to_json(m.tree)}});
  for (const auto& a : t.annotations)
    annotations.push_back({{"label", a.label},
                           {"value", to_json(a.value)},
                           {"rule", a.rule},
                           {"path", a.path},
                           {"begin", a.begin},
                           {"end", a.end}});
  return {{"version", kFormatVersion},
          {"document", {{"sha256", t.documentSha256}, {"length", t.documentLength}}},
          {"mbfTags", std::move(mbf)},
          {"manualTags", std::move(manual)},
          {"matches", std::move(matches)},
          {"graph", t.graph ? json(*t.graph) : json(nullptr)},
          {"annotations", std::move(annotations)}};
}

TagsFile tags_from_json_file(const json& j, const std::string& path) {
  Obj o(j, path,
        {"version", "document", "mbfTags", "manualTags", "matches", "graph", "annotations"});
  check_version(o);
  TagsFile t;
  Obj d(o.req("document"), o.at("document"), {"sha256", "length"});
  t.documentSha256 = d.str("sha256");
  t.documentLength = d.count("length");
  t.mbfTags = tags_from_json(o.array("mbfTags", false), o.at("mbfTags"));
  t.manualTags = tags_from_json(o.array("manualTags", false), o.at("manualTags"));
  const json& matches = o.array("matches", false);
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const auto where = item(o.at("matches"), i);
    Obj m(matches[i], where, {"rule", "index", "length", "tree"});
    t.matches.push_back({m.str("rule"), m.count("index"), m.count("length"),
                         match_node_from_json(m.req("tree"), m.at("tree"))});
    if (auto problem = check_tree(t.matches.back().tree); !problem.empty())
      throw ValidationError(m.at("tree"), problem);
  }
  if (const json* g = o.opt("graph"); g && !g->is_null()) t.graph = Obj::as_str(*g, o.at("graph"));
  const json& ann = o.array("annotations", false);
  for (std::size_t i = 0; i < ann.size(); ++i) {
    Obj a(ann[i], item(o.at("annotations"), i), {"label", "value", "rule", "path", "begin", "end"});
    Emitted e;
    e.label = a.str("label");
    e.value = value_from_json(a.req("value"), a.at("value"));
    e.rule = a.str("rule");
    e.path = a.str("path", "");
    e.begin = a.count("begin");
    e.end = a.count("end");
    t.annotations.push_back(std::move(e));
  }
  validate_tags(t);
  return t;
}

void validate_tags(const TagsFile& t, std::optional<std::string_view> document) {
  if (document) {
    if (text::sha256_hex(*document) != t.documentSha256)
      throw ValidationError("document.sha256", "tags were computed for a different document");
    if (text::length(*document) != t.documentLength)
      throw ValidationError("document.length", "does not match the document");
  }
  auto check = [&](const std::vector<Tag>& tags, const char* field) {
    for (std::size_t i = 0; i < tags.size(); ++i) {
      const auto where = item(field, i);
      if (tags[i].length == 0) throw ValidationError(where + ".length", "empty span");
      if (tags[i].end() > t.documentLength)
        throw ValidationError(where, "span [" + std::to_string(tags[i].index) + ", " +
                                         std::to_string(tags[i].end()) +
                                         ") runs past the document length " +
                                         std::to_string(t.documentLength));
    }
  };
  check(t.mbfTags, "mbfTags");
  check(t.manualTags, "manualTags");
  for (std::size_t i = 0; i < t.matches.size(); ++i) {
    const auto& m = t.matches[i];
    if (m.length == 0 || m.index + m.length > t.documentLength)
      throw ValidationError(item("matches", i), "span runs past the document length " +
                                                    std::to_string(t.documentLength));
  }
}

Lexicon read_lexicon(const std::filesystem::path& path) {
  return lexicon_from_json(parse(read_file(path), path.string()), path.string());
}

void write_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
  write_file(path, canonical(to_json(lexicon)));
}

AnalyzedText read_solutions(const std::filesystem::path& path) {
  return solutions_from_json(parse(read_file(path), path.string()), path.string());
}

void write_solutions(const AnalyzedText& words, const std::filesystem::path& path) {
  write_file(path, canonical(to_json(words)));
}

Project read_project(const std::filesystem::path& path) {
  return project_from_json(parse(read_file(path), path.string()), path.parent_path(), "");
}

void write_project(const Project& project, const std::filesystem::path& path) {
  write_file(path, canonical(to_json(project)));
}

TagsFile read_tags(const std::filesystem::path& path, std::optional<std::string_view> document) {
  TagsFile t = tags_from_json_file(parse(read_file(path), path.string()), "");
  if (document) validate_tags(t, document);
  return t;
}

void write_tags(const TagsFile& tags, const std::filesystem::path& path) {
  write_file(path, canonical(to_json(tags)));
}

EntityGraph read_graph(const std::filesystem::path& path) {
  return graph_from_json(parse(read_file(path), path.string()), "graph");
}

void write_graph(const EntityGraph& graph, const std::filesystem::path& path) {
  write_file(path, canonical(to_json(graph)));
}

}  // namespace morphex::io
