#include "doctest.h"
#include "morphex/actions.hpp"
#include "morphex/error.hpp"
#include "support.hpp"

using namespace morphex;

namespace {

Project numbers_like(std::vector<ActionScript> actions, std::string rules = "num: ($s0=DT | $s1=TMB | $s2=H)+;") {
  auto p = io::read_project(support::fixture("numbers/project.json"));
  p.rules = std::move(rules);
  p.actions = std::move(actions);
  return p;
}

double value_of(const Engine& e, const std::string& doc) {
  const auto r = e.run(doc);
  REQUIRE(r.env.emitted.size() == 1);
  return as_number(r.env.emitted[0].value);
}

}  // namespace

TEST_CASE("parsing the thousands script and syntax errors") {
  const auto p = io::read_project(support::fixture("numbers/project.json"));
  for (const auto& a : p.actions) CHECK_NOTHROW(ActionProgram::parse(a.source));
  const auto tmb = ActionProgram::parse(p.actions[2].source);
  CHECK(tmb.bindings() == std::vector<std::string>{"s1"});
  CHECK_NOTHROW(ActionProgram::parse("x = $s0.number + 1;"));
  try {
    ActionProgram::parse("if (");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(ActionProgram::parse("x = ;"), ParseError);
  CHECK_THROWS_AS(ActionProgram::parse("x = $s0.colour;"), ParseError);
  CHECK_THROWS_AS(ActionProgram::parse("while (x) {}"), ParseError);
  CHECK_NOTHROW(ActionProgram::parse(""));
}

TEST_CASE("three hundred forty five") {
  Engine e(io::read_project(support::fixture("numbers/project.json")));
  CHECK(value_of(e, "vlAvp mA}p wxmsp wArbEwn") == 345);
  CHECK(value_of(e, "mA}tAn wxmsp wArbEwn wAlf wvlAvp mA}p wAvnA wE$r") == 245312);
}

TEST_CASE("preMatch runs in pre-order and onMatch in post-order") {
  const std::string log = "print($x.text);";
  auto p = numbers_like({{"r", "r", ActionPhase::PreMatch, "print(\"pre r\");"},
                         {"r", "x", ActionPhase::PreMatch, "print(\"pre \" + $x.text);"},
                         {"r", "x", ActionPhase::OnMatch, "print(\"on \" + $x.text);"},
                         {"r", "r", ActionPhase::OnMatch, "print(\"on r\");"}},
                        "r: ($x=DT)+;");
  p.mreTagTypes = {{"r", "", {}}};
  Engine e(p);
  const auto r = e.run("xmsp wstp");
  CHECK(r.env.printed == std::vector<std::string>{"pre r", "pre xmsp", "on xmsp", "pre wstp",
                                                  "on wstp", "on r"});
}

TEST_CASE("environment is threaded across matches in document order") {
  auto p = numbers_like({{"r", "r", ActionPhase::OnMatch, "count += 1; emit(\"n\", count);"}},
                        "r: DT;");
  p.mreTagTypes = {{"r", "", {}}};
  Engine e(p);
  const auto r = e.run("xmsp stp");
  REQUIRE(r.env.emitted.size() == 2);
  CHECK(as_number(r.env.emitted[1].value) == 2);
  CHECK(as_number(r.env.variables.at("count")) == 2);
}

TEST_CASE("accessors") {
  auto p = numbers_like(
      {{"r", "x", ActionPhase::OnMatch,
        "emit(\"t\", $x.text); emit(\"p\", $x.position); emit(\"l\", $x.length);"
        "emit(\"s\", $x.stem); emit(\"g\", $x.gloss); emit(\"pos\", $x.pos); emit(\"n\", $x.number);"}},
      "r: $x=DT;");
  p.mreTagTypes = {{"r", "", {}}};
  Engine e(p);
  const auto r = e.run("ab wxmsp");
  REQUIRE(r.env.emitted.size() == 7);
  CHECK(as_text(r.env.emitted[0].value) == "wxmsp");
  CHECK(as_number(r.env.emitted[1].value) == 3);
  CHECK(as_number(r.env.emitted[2].value) == 5);
  CHECK(as_text(r.env.emitted[3].value) == "xmsp");
  CHECK(as_text(r.env.emitted[4].value) == "and,five");
  CHECK(as_text(r.env.emitted[5].value) == "conj+noun_num");
  CHECK(as_number(r.env.emitted[6].value) == 5);
  CHECK(r.env.emitted[0].path == "x");
  CHECK(r.env.emitted[0].begin == 1);
}

TEST_CASE("number on a multi-word span is a runtime error") {
  auto p = numbers_like({{"r", "r", ActionPhase::OnMatch, "x = $r.number;"}}, "r: DT DT;");
  p.mreTagTypes = {{"r", "", {}}};
  Engine e(p);
  try {
    e.run("xmsp stp");
    FAIL("expected an error");
  } catch (const PipelineError& err) {
    CHECK(err.stage() == "actions");
  }
}

TEST_CASE("unresolved optional binding skips the script") {
  auto p = numbers_like({{"r", "h", ActionPhase::OnMatch, "emit(\"h\", $h.number);"},
                         {"r", "r", ActionPhase::OnMatch, "emit(\"d\", $d.number);"}},
                        "r: $d=DT $h=H?;");
  p.mreTagTypes = {{"r", "", {}}};
  Engine e(p);
  const auto r = e.run("xmsp");
  REQUIRE(r.env.emitted.size() == 1);
  CHECK(r.env.emitted[0].label == "d");
}

TEST_CASE("uninitialised variables and value formatting") {
  auto p = numbers_like({{"r", "r", ActionPhase::OnMatch,
                          "if (!flag && n == 0 && s == \"\") { print(n + 1, \" \", 7 / 2); }"
                          "cout << \"x\" << 3;"}},
                        "r: DT;");
  p.mreTagTypes = {{"r", "", {}}};
  Engine e(p);
  std::vector<std::string> hooked;
  const auto r = e.run("xmsp");
  CHECK(r.env.printed == std::vector<std::string>{"1 3.5", "x3"});
  CHECK(format_value(Value{2.0}) == "2");
  CHECK(format_value(Value{true}) == "true");
  CHECK(format_value(Value{}) == "");
}

TEST_CASE("host hooks see every record") {
  const auto p = io::read_project(support::fixture("numbers/project.json"));
  Engine e(p);
  const auto doc = e.analyze("mA}p wAlf");
  const auto seq = e.tag(doc);
  const auto trees = e.simulate(seq);
  RunResult rr;
  rr.doc = doc;
  rr.sequence = seq;
  const auto view = e.view(rr);
  const auto actions = compile_actions(p.actions);
  ActionEnv env;
  std::vector<std::string> seen;
  env.onPrint = [&](const std::string& s) { seen.push_back("print " + s); };
  env.onEmit = [&](const Emitted& m) { seen.push_back("emit " + format_value(m.value)); };
  for (const auto& t : trees) run_actions(t, actions, view, env);
  CHECK(seen == std::vector<std::string>{"print wAlf", "emit 100000"});
}

TEST_CASE("compile errors name the script") {
  const std::vector<ActionScript> bad{{"r", "r", ActionPhase::OnMatch, "x = 1;"},
                                      {"r", "r", ActionPhase::OnMatch, "x = ;"}};
  try {
    compile_actions(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.path() == "actions[1].source");
  }
}
