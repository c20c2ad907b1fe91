#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morphex/document.hpp"
#include "morphex/match.hpp"

namespace morphex {

/// Script value. An unset variable reads as 0, "" or false depending on use.
using Value = std::variant<std::monostate, double, std::string, bool>;

double as_number(const Value& v);
std::string as_text(const Value& v);
bool as_bool(const Value& v);

enum class ActionPhase { PreMatch, OnMatch };

std::string_view to_string(ActionPhase p);
std::optional<ActionPhase> action_phase_from(std::string_view name);

/// Script attached to the nodes of `rule` bound at `binding` (the rule name
/// attaches to the match root).
struct ActionScript {
  std::string rule;
  std::string binding;
  ActionPhase phase = ActionPhase::OnMatch;
  std::string source;

  bool operator==(const ActionScript&) const = default;
};

namespace detail {
struct Block;
}

/// Parsed script.
///
///   stmt := 'if' '(' expr ')' stmt ('else' stmt)?
///         | '{' stmt* '}'
///         | ident ('=' | '+=' | '-=' | '*=' | '/=') expr ';'
///         | ('emit' | 'print') '(' args ')' ';'
///         | 'cout' ('<<' expr)+ ';'
///
/// Expressions have numbers, "strings", true/false, variables and
/// $binding.field with field one of text, number, position, length, stem,
/// pos, gloss; operators ! - * / % + - < <= > >= == != && ||.
class ActionProgram {
public:
  ActionProgram() = default;

  /// Throws ParseError.
  static ActionProgram parse(std::string_view source);

  /// Bindings read by the script, in order of first use.
  const std::vector<std::string>& bindings() const { return bindings_; }

  bool empty() const { return !body_; }

private:
  friend class ActionRunner;
  std::shared_ptr<const detail::Block> body_;
  std::vector<std::string> bindings_;
};

struct Emitted {
  std::string label;
  Value value;
  std::string rule;
  std::string path;
  std::size_t begin = 0;  // word range of the node the script ran on
  std::size_t end = 0;

  bool operator==(const Emitted&) const = default;
};

/// Document-scoped script state, threaded through every match in order.
struct ActionEnv {
  std::map<std::string, Value> variables;
  std::vector<Emitted> emitted;
  std::vector<std::string> printed;

  /// Optional host hooks, called after the corresponding record is stored.
  std::function<void(const Emitted&)> onEmit;
  std::function<void(const std::string&)> onPrint;
};

/// A script with its parsed form.
struct CompiledAction {
  ActionScript script;
  ActionProgram program;
};

/// Parses every script; errors name the script index.
std::vector<CompiledAction> compile_actions(std::span<const ActionScript> scripts,
                                            const std::string& path = "actions");

/// Runs preMatch scripts in pre-order and onMatch scripts in post-order over
/// the tree. A script whose bindings do not resolve from its node is skipped.
/// Throws ActionError on runtime failures such as .number on a word without
/// a numeric value.
void run_actions(const MatchTree& tree, std::span<const CompiledAction> actions,
                 const DocumentView& view, ActionEnv& env);

/// Renders a value the way print does: integral numbers without a fraction.
std::string format_value(const Value& v);

}  // namespace morphex
