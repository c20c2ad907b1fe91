#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "morphex/analysis.hpp"
#include "morphex/project.hpp"

namespace morphex::io {

using json = nlohmann::json;

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string canonical(const json& j);

std::string read_file(const std::filesystem::path& path);
/// Writes bytes as-is, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view bytes);
/// Parses JSON text; syntax errors become ValidationError on `where`.
json parse(std::string_view text, const std::string& where);

// Every from_json throws ValidationError naming the offending field, rooted at `path`.

json to_json(const Lexicon& lexicon);
Lexicon lexicon_from_json(const json& j, const std::string& path = "lexicon");

json to_json(const AnalyzedText& words);
AnalyzedText solutions_from_json(const json& j, const std::string& path = "solutions");

json to_json(const TagType& t);
TagType tag_type_from_json(const json& j, const std::string& path);

/// A project whose lexicon came from a file serializes the path, not the lexicon.
json to_json(const Project& p);
/// A string lexicon is loaded relative to `baseDir`.
Project project_from_json(const json& j, const std::filesystem::path& baseDir = ".",
                          const std::string& path = "");

json to_json(const MatchNode& n);
MatchNode match_node_from_json(const json& j, const std::string& path);

json to_json(const Value& v);
Value value_from_json(const json& j, const std::string& path);

json to_json(const Tag& t);
Tag tag_from_json(const json& j, const std::string& path);
std::vector<Tag> tags_from_json(const json& j, const std::string& path);

json to_json(const EntityGraph& g);
EntityGraph graph_from_json(const json& j, const std::string& path = "graph");

json to_json(const DiffReport& r, OverlapPredicate predicate);
json to_json(const TagSetSequence& seq);

struct TagsMatch {
  std::string rule;
  std::size_t index = 0;  // code-point span of the match
  std::size_t length = 0;
  MatchNode tree;

  bool operator==(const TagsMatch&) const = default;
};

/// Result of running a project over one document.
struct TagsFile {
  std::string documentSha256;
  std::size_t documentLength = 0;
  std::vector<Tag> mbfTags;
  std::vector<Tag> manualTags;
  std::vector<TagsMatch> matches;
  std::optional<std::string> graph;  // graph file name, relative to the tags file
  std::vector<Emitted> annotations;

  bool operator==(const TagsFile&) const = default;

  /// Formula tags, match spans labeled by rule, and manual tags.
  std::vector<Tag> all_tags() const;
};

TagsFile make_tags_file(const RunResult& result, std::optional<std::string> graphRef);

json to_json(const TagsFile& t);
TagsFile tags_from_json_file(const json& j, const std::string& path = "");

/// Checks spans against the recorded length and, given the document text,
/// its hash and length.
void validate_tags(const TagsFile& t, std::optional<std::string_view> document = std::nullopt);

Lexicon read_lexicon(const std::filesystem::path& path);
void write_lexicon(const Lexicon& lexicon, const std::filesystem::path& path);

AnalyzedText read_solutions(const std::filesystem::path& path);
void write_solutions(const AnalyzedText& words, const std::filesystem::path& path);

Project read_project(const std::filesystem::path& path);
void write_project(const Project& project, const std::filesystem::path& path);

TagsFile read_tags(const std::filesystem::path& path,
                   std::optional<std::string_view> document = std::nullopt);
void write_tags(const TagsFile& tags, const std::filesystem::path& path);

EntityGraph read_graph(const std::filesystem::path& path);
void write_graph(const EntityGraph& graph, const std::filesystem::path& path);

}  // namespace morphex::io
