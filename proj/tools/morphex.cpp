// morphex: run projects over documents, diff tags files, serve the HTTP API.

#include <iostream>

#include "CLI11.hpp"
#include "morphex/io.hpp"
#include "morphex/service.hpp"

namespace {

using namespace morphex;

constexpr int kExitLoad = 2;
constexpr int kExitPipeline = 3;

int fail(const std::string& stage, const std::string& what, int code) {
  std::cerr << "morphex: " << stage << ": " << what << "\n";
  return code;
}

struct Loaded {
  std::unique_ptr<Engine> engine;
  std::string document;
};

// Reads project and document; errors belong to the load stage.
Loaded load(const std::string& projectPath, const std::string& docPath) {
  Loaded l;
  l.engine = std::make_unique<Engine>(io::read_project(projectPath));
  if (!docPath.empty()) l.document = io::read_file(docPath);
  return l;
}

int cmd_run(const std::string& project, const std::string& doc, const std::string& out,
            std::size_t maxSteps) {
  Loaded l;
  try {
    l = load(project, doc);
  } catch (const std::exception& e) {
    return fail("load", e.what(), kExitLoad);
  }
  RunResult r;
  try {
    r = l.engine->run(l.document, SimulationOptions{maxSteps});
  } catch (const PipelineError& e) {
    return fail(e.stage(), e.what(), kExitPipeline);
  }
  try {
    const std::filesystem::path dir(out);
    io::write_tags(io::make_tags_file(r, "graph.json"), dir / "tags.json");
    io::write_graph(r.graph, dir / "graph.json");
  } catch (const std::exception& e) {
    return fail("write", e.what(), kExitPipeline);
  }
  std::cout << r.doc.size() << " words, " << r.matches.size() << " matches, "
            << r.graph.nodes().size() << " nodes, " << r.graph.edges().size() << " edges\n";
  for (const auto& line : r.env.printed) std::cout << line << "\n";
  return 0;
}

int cmd_analyze(const std::string& project, const std::string& doc, const std::string& out) {
  Loaded l;
  try {
    l = load(project, doc);
  } catch (const std::exception& e) {
    return fail("load", e.what(), kExitLoad);
  }
  AnalyzedText words;
  try {
    words = l.engine->analyze(l.document);
  } catch (const std::exception& e) {
    return fail("analyze", e.what(), kExitPipeline);
  }
  if (out.empty()) {
    std::cout << io::canonical(io::to_json(words));
    return 0;
  }
  try {
    io::write_solutions(words, out);
  } catch (const std::exception& e) {
    return fail("write", e.what(), kExitPipeline);
  }
  return 0;
}

int cmd_diff(const std::string& ref, const std::string& cand, const std::string& predicateName,
             bool asJson) {
  const auto predicate = overlap_predicate_from(predicateName);
  if (!predicate)
    return fail("load", "unknown predicate '" + predicateName +
                            "' (intersection, exact, a-includes-b, b-includes-a)",
                kExitLoad);
  io::TagsFile a, b;
  try {
    a = io::read_tags(ref);
    b = io::read_tags(cand);
  } catch (const std::exception& e) {
    return fail("load", e.what(), kExitLoad);
  }
  if (a.documentSha256 != b.documentSha256)
    return fail("load", "tags files refer to different documents", kExitLoad);
  const auto ta = a.all_tags();
  const auto tb = b.all_tags();
  const auto report = diff_tags(ta, tb, *predicate, a.documentLength);
  if (asJson)
    std::cout << io::canonical(io::to_json(report, *predicate));
  else
    std::cout << render_report(report, *predicate);
  return 0;
}

int cmd_serve(const std::string& project, const std::string& host, int port,
              std::size_t maxSteps) {
  std::shared_ptr<const Engine> engine;
  if (!project.empty()) {
    try {
      engine = std::make_shared<const Engine>(io::read_project(project));
    } catch (const std::exception& e) {
      return fail("load", e.what(), kExitLoad);
    }
  }
  Service service(engine, SimulationOptions{maxSteps});
  std::cerr << "morphex: listening on " << host << ":" << port << "\n";
  if (!service.serve(host, port)) return fail("serve", "cannot listen on port " + std::to_string(port), 1);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphology-based tagging, rule matching and relation extraction"};
  app.require_subcommand(1);

  std::string project, doc, out, ref, cand, predicate = "exact", host = "127.0.0.1";
  std::size_t maxSteps = kDefaultMaxSteps;
  int port = 8080;
  bool asJson = false;

  auto* run = app.add_subcommand("run", "Run a project over a document");
  run->add_option("--project", project, "Project file")->required();
  run->add_option("--doc", doc, "Document (UTF-8 text)")->required();
  run->add_option("--out", out, "Output directory for tags.json and graph.json")->required();
  run->add_option("--max-steps", maxSteps, "Simulation step budget per rule and document")
      ->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "Write the morphological solutions of a document");
  analyze->add_option("--project", project, "Project file")->required();
  analyze->add_option("--doc", doc, "Document (UTF-8 text)")->required();
  analyze->add_option("--out", out, "Solutions file (stdout when omitted)");

  auto* diff = app.add_subcommand("diff", "Compare a candidate tags file against a reference");
  diff->add_option("reference", ref, "Reference tags file")->required();
  diff->add_option("candidate", cand, "Candidate tags file")->required();
  diff->add_option("--predicate", predicate, "intersection, exact, a-includes-b or b-includes-a");
  diff->add_flag("--json", asJson, "Print the report as JSON");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--project", project, "Project loaded into the session");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--max-steps", maxSteps, "Simulation step budget")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(project, doc, out, maxSteps);
  if (analyze->parsed()) return cmd_analyze(project, doc, out);
  if (diff->parsed()) return cmd_diff(ref, cand, predicate, asJson);
  return cmd_serve(project, host, port, maxSteps);
}
