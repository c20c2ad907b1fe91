#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "morphex/io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace morphex;

namespace {

fs::path workdir() {
  const auto dir = fs::temp_directory_path() / "morphex_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& output = workdir() / "stdout.txt") {
  const std::string cmd = std::string("\"") + MORPHEX_CLI + "\" " + args + " > \"" +
                          output.string() + "\" 2> \"" + (workdir() / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("run writes the golden outputs and is byte stable") {
  const auto out = workdir() / "direction";
  fs::remove_all(out);
  CHECK(run("run --project " + q(support::fixture("direction/project.json")) + " --doc " +
            q(support::fixture("direction/document.txt")) + " --out " + q(out)) == 0);
  const auto tags = io::read_file(out / "tags.json");
  CHECK(tags == support::read_fixture("direction/expected_tags.json"));
  CHECK(io::read_file(out / "graph.json") == support::read_fixture("direction/expected_graph.json"));
  CHECK(run("run --project " + q(support::fixture("direction/project.json")) + " --doc " +
            q(support::fixture("direction/document.txt")) + " --out " + q(out)) == 0);
  CHECK(io::read_file(out / "tags.json") == tags);
}

TEST_CASE("empty document gives an empty tags file") {
  const auto doc = workdir() / "empty.txt";
  io::write_file(doc, "");
  const auto out = workdir() / "empty";
  CHECK(run("run --project " + q(support::fixture("direction/project.json")) + " --doc " + q(doc) +
            " --out " + q(out)) == 0);
  const auto t = io::read_tags(out / "tags.json", std::string_view(""));
  CHECK(t.matches.empty());
  CHECK(t.mbfTags.empty());
}

TEST_CASE("missing lexicon fails at load with exit code 2") {
  auto j = io::parse(support::read_fixture("direction/project.json"), "p");
  j["lexicon"] = "no_such_lexicon.json";
  const auto project = workdir() / "broken.json";
  io::write_file(project, io::canonical(j));
  CHECK(run("run --project " + q(project) + " --doc " + q(support::fixture("direction/document.txt")) +
            " --out " + q(workdir() / "broken")) == 2);
  const auto err = io::read_file(workdir() / "stderr.txt");
  CHECK(err.find("load") != std::string::npos);
  CHECK(err.find("lexicon") != std::string::npos);
}

TEST_CASE("budget failures exit with code 3 naming the stage") {
  CHECK(run("run --max-steps 3 --project " + q(support::fixture("narrator/project.json")) +
            " --doc " + q(support::fixture("narrator/document.txt")) + " --out " +
            q(workdir() / "tight")) == 3);
  CHECK(io::read_file(workdir() / "stderr.txt").find("simulate") != std::string::npos);
}

TEST_CASE("analyze prints solutions") {
  const auto out = workdir() / "solutions.json";
  CHECK(run("analyze --project " + q(support::fixture("narrator/project.json")) + " --doc " +
            q(support::fixture("narrator/document.txt")) + " --out " + q(out)) == 0);
  CHECK(io::read_solutions(out).size() == 10);
}

TEST_CASE("diff prints a report") {
  const auto a = workdir() / "direction" / "tags.json";
  fs::create_directories(a.parent_path());
  io::write_file(a, support::read_fixture("direction/expected_tags.json"));
  const auto report = workdir() / "report.txt";
  CHECK(run("diff " + q(a) + " " + q(a) + " --predicate intersection", report) == 0);
  CHECK(io::read_file(report).find("1/1") != std::string::npos);
  CHECK(run("diff " + q(a) + " " + q(a) + " --json", report) == 0);
  CHECK(io::parse(io::read_file(report), "r")["fMeasure"]["value"] == 1.0);
  CHECK(run("diff " + q(a) + " " + q(a) + " --predicate sideways") == 2);
  CHECK(run("diff " + q(a) + " " + q(workdir() / "missing.json")) == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("") != 0);
  CHECK(run("run --project x") != 0);
}
