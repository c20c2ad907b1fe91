#include <filesystem>

#include "doctest.h"
#include "morphex/error.hpp"
#include "morphex/io.hpp"
#include "morphex/text.hpp"
#include "support.hpp"

using namespace morphex;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "morphex_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string error_path(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("project write/read is the identity and byte stable") {
  const auto p = io::read_project(support::fixture("direction/project.json"));
  CHECK(p.lexiconPath == std::optional<std::string>("lexicon.json"));
  const auto out = scratch("project.json");
  fs::copy_file(support::fixture("direction/lexicon.json"), scratch("lexicon.json"),
                fs::copy_options::overwrite_existing);
  io::write_project(p, out);
  const auto bytes = io::read_file(out);
  CHECK(io::read_project(out) == p);
  io::write_project(io::read_project(out), out);
  CHECK(io::read_file(out) == bytes);
  CHECK(bytes == support::read_fixture("direction/project.json"));
}

TEST_CASE("inline lexicon round trip") {
  auto p = io::read_project(support::fixture("narrator/project.json"));
  p.lexiconPath.reset();
  const auto j = io::to_json(p);
  CHECK(j["lexicon"].is_object());
  CHECK(io::project_from_json(j) == p);
}

TEST_CASE("project validation names the offending field") {
  const auto base = io::to_json([] {
    auto p = io::read_project(support::fixture("direction/project.json"));
    p.lexiconPath.reset();
    return p;
  }());
  auto j = base;
  j["relations"][0]["rule"] = "nowhere";
  CHECK(error_path([&] { io::project_from_json(j); }) == "relations[0].rule");
  j = base;
  j["version"] = 2;
  CHECK(error_path([&] { io::project_from_json(j); }) == "version");
  j = base;
  j["colour"] = "red";
  CHECK(error_path([&] { io::project_from_json(j); }) == "colour");
  j = base;
  j["tagTypes"][1]["legend"]["color"] = "green";
  CHECK(error_path([&] { io::project_from_json(j); }) == "tagTypes[1].legend.color");
  j = base;
  j["rules"] = "direction: Q;";
  CHECK(error_path([&] { io::project_from_json(j); }) == "rules");
  j = base;
  j["lexicon"]["stems"][0]["category"] = {"Nowhere"};
  CHECK(error_path([&] { io::project_from_json(j); }) == "lexicon.stems[0].category[0]");
  j = base;
  j["lexicon"] = "missing.json";
  CHECK(error_path([&] { io::project_from_json(j, "/nonexistent"); }) == "lexicon");
  CHECK(error_path([] { io::parse("{", "file.json"); }) == "file.json");
}

TEST_CASE("tags file round trip and validation") {
  const auto engine = support::load_engine("direction");
  const auto doc = support::read_fixture("direction/document.txt");
  const auto r = engine->run(doc);
  const auto tags = io::make_tags_file(r, "graph.json");
  CHECK(tags.matches.size() == 2);
  CHECK(tags.documentSha256 == text::sha256_hex(doc));
  const auto out = scratch("tags.json");
  io::write_tags(tags, out);
  CHECK(io::read_tags(out, doc) == tags);
  CHECK_THROWS_AS(io::read_tags(out, doc + "x"), ValidationError);
  auto bad = tags;
  bad.mbfTags.push_back(Tag{tags.documentLength - 1, 5, "P", TagSource::Auto});
  CHECK_THROWS_AS(io::validate_tags(bad), ValidationError);
  io::TagsFile empty;
  empty.documentSha256 = text::sha256_hex("");
  io::write_tags(empty, out);
  CHECK(io::read_tags(out, std::string_view("")) == empty);
}

TEST_CASE("graph round trip") {
  const auto engine = support::load_engine("direction");
  const auto r = engine->run(support::read_fixture("direction/document.txt"));
  const auto out = scratch("graph.json");
  io::write_graph(r.graph, out);
  CHECK(io::read_graph(out) == r.graph);
  auto j = io::to_json(r.graph);
  j["edges"][0]["source"] = "w99-100";
  CHECK_THROWS_AS(io::graph_from_json(j), ValidationError);
}

TEST_CASE("lexicon and solutions files") {
  const auto lex = io::read_lexicon(support::fixture("numbers/lexicon.json"));
  const auto out = scratch("lexicon.json.out");
  io::write_lexicon(lex, out);
  CHECK(io::read_lexicon(out) == lex);
  CHECK(io::read_file(out) == support::read_fixture("numbers/lexicon.json"));
  const auto words = analyze_text("vlAvp mA}p wxmsp", lex);
  io::write_solutions(words, scratch("solutions.json"));
  CHECK(io::read_solutions(scratch("solutions.json")) == words);
}

TEST_CASE("match trees and values") {
  const auto engine = support::load_engine("narrator");
  const auto r = engine->run(support::read_fixture("narrator/document.txt"));
  const auto& root = r.matches.at(0).root;
  CHECK(io::match_node_from_json(io::to_json(root), "tree") == root);
  for (const Value& v : {Value{}, Value{2.5}, Value{std::string("x")}, Value{true}})
    CHECK(io::value_from_json(io::to_json(v), "v") == v);
}

TEST_CASE("canonical output sorts keys and ends with a newline") {
  CHECK(io::canonical(io::json{{"b", 1}, {"a", 2}}) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}
