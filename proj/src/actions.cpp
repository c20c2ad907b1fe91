#include "morphex/actions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "morphex/error.hpp"

namespace morphex {

double as_number(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  if (const auto* s = std::get_if<std::string>(&v)) {
    try {
      std::size_t used = 0;
      const double d = std::stod(*s, &used);
      if (used == s->size()) return d;
    } catch (const std::exception&) {
    }
    return 0.0;
  }
  return 0.0;
}

std::string format_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    char buf[64];
    if (std::isfinite(*d) && std::floor(*d) == *d && std::fabs(*d) < 1e15)
      std::snprintf(buf, sizeof buf, "%.0f", *d);
    else
      std::snprintf(buf, sizeof buf, "%.15g", *d);
    return buf;
  }
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return "";
}

std::string as_text(const Value& v) { return format_value(v); }

bool as_bool(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* d = std::get_if<double>(&v)) return *d != 0.0;
  if (const auto* s = std::get_if<std::string>(&v)) return !s->empty();
  return false;
}

std::string_view to_string(ActionPhase p) {
  return p == ActionPhase::PreMatch ? "preMatch" : "onMatch";
}

std::optional<ActionPhase> action_phase_from(std::string_view name) {
  if (name == "preMatch") return ActionPhase::PreMatch;
  if (name == "onMatch") return ActionPhase::OnMatch;
  return std::nullopt;
}

namespace detail {

struct Expr {
  enum class Kind { Literal, Var, Access, Unary, Binary };
  Kind kind = Kind::Literal;
  Value literal;
  std::string name;   // variable or binding
  std::string field;  // accessor
  std::string op;
  std::vector<std::shared_ptr<const Expr>> args;
  std::size_t line = 0;
  std::size_t column = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

struct Stmt {
  enum class Kind { Assign, If, Block, Emit, Print };
  Kind kind = Kind::Block;
  std::string name;
  std::string op;
  std::vector<ExprPtr> exprs;
  std::shared_ptr<const Block> then;
  std::shared_ptr<const Block> otherwise;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct Block {
  std::vector<Stmt> stmts;
};

}  // namespace detail

namespace {

using detail::Block;
using detail::Expr;
using detail::ExprPtr;
using detail::Stmt;

struct Token {
  enum class Kind { Ident, Binding, Number, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  double number = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (ident_start(c)) {
        t.kind = Token::Kind::Ident;
        t.text = ident();
      } else if (c == '$') {
        advance();
        if (pos_ >= src_.size() || !ident_start(src_[pos_]))
          throw ParseError("expected a binding name after '$'", t.line, t.column);
        t.kind = Token::Kind::Binding;
        t.text = ident();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::Number;
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            advance();
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        t.number = std::stod(t.text);
      } else if (c == '"') {
        t.kind = Token::Kind::String;
        advance();
        for (;;) {
          if (pos_ >= src_.size()) throw ParseError("unterminated string", t.line, t.column);
          char d = src_[pos_];
          advance();
          if (d == '"') break;
          if (d == '\\' && pos_ < src_.size()) {
            d = src_[pos_];
            advance();
            if (d == 'n') d = '\n';
            else if (d == 't') d = '\t';
          }
          t.text += d;
        }
      } else {
        t.kind = Token::Kind::Punct;
        static const char* const two[] = {"+=", "-=", "*=", "/=", "==", "!=", "<=",
                                          ">=", "<<", "&&", "||"};
        for (const char* op : two) {
          if (src_.substr(pos_, 2) == op) t.text = op;
        }
        if (t.text.empty()) {
          if (std::string_view("(){};,.=<>!+-*/%").find(c) == std::string_view::npos)
            throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
          t.text = std::string(1, c);
        }
        for (std::size_t i = 0; i < t.text.size(); ++i) advance();
      }
      out.push_back(std::move(t));
    }
  }

private:
  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        const auto line = line_, col = col_;
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) throw ParseError("unterminated comment", line, col);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::set<std::string> kFields = {"text", "number", "position", "length",
                                       "stem", "pos", "gloss"};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::shared_ptr<const Block> program() {
    auto block = std::make_shared<Block>();
    while (!at_end()) block->stmts.push_back(statement());
    return block;
  }

  std::vector<std::string> bindings;

private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is(std::string_view punct, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == punct;
  }
  bool is_word(std::string_view w) const {
    return peek().kind == Token::Kind::Ident && peek().text == w;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw ParseError(what + (t.kind == Token::Kind::End ? " at end of script"
                                                         : " near '" + t.text + "'"),
                     t.line, t.column);
  }
  const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  void expect(std::string_view punct) {
    if (!is(punct)) fail("expected '" + std::string(punct) + "'");
    take();
  }

  std::shared_ptr<const Block> body() {
    auto block = std::make_shared<Block>();
    if (is("{")) {
      take();
      while (!is("}")) {
        if (at_end()) fail("expected '}'");
        block->stmts.push_back(statement());
      }
      take();
    } else {
      block->stmts.push_back(statement());
    }
    return block;
  }

  Stmt statement() {
    Stmt s;
    s.line = peek().line;
    s.column = peek().column;
    if (is("{")) {
      s.kind = Stmt::Kind::Block;
      s.then = body();
      return s;
    }
    if (is_word("if")) {
      take();
      s.kind = Stmt::Kind::If;
      expect("(");
      s.exprs.push_back(expression());
      expect(")");
      s.then = body();
      if (is_word("else")) {
        take();
        s.otherwise = body();
      }
      return s;
    }
    if (is_word("cout")) {
      take();
      s.kind = Stmt::Kind::Print;
      if (!is("<<")) fail("expected '<<'");
      while (is("<<")) {
        take();
        s.exprs.push_back(expression());
      }
      expect(";");
      return s;
    }
    if ((is_word("emit") || is_word("print")) && is("(", 1)) {
      const bool emit = take().text == "emit";
      s.kind = emit ? Stmt::Kind::Emit : Stmt::Kind::Print;
      take();
      if (!is(")")) {
        s.exprs.push_back(expression());
        while (is(",")) {
          take();
          s.exprs.push_back(expression());
        }
      }
      expect(")");
      expect(";");
      if (emit && s.exprs.size() != 2)
        throw ParseError("emit takes a label and a value", s.line, s.column);
      return s;
    }
    if (peek().kind == Token::Kind::Ident) {
      s.kind = Stmt::Kind::Assign;
      s.name = take().text;
      for (const char* op : {"=", "+=", "-=", "*=", "/="}) {
        if (is(op)) s.op = op;
      }
      if (s.op.empty()) fail("expected an assignment");
      take();
      s.exprs.push_back(expression());
      expect(";");
      return s;
    }
    fail("expected a statement");
  }

  ExprPtr binary(std::string op, ExprPtr l, ExprPtr r, const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = std::move(op);
    e->args = {std::move(l), std::move(r)};
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  using Level = ExprPtr (Parser::*)();

  ExprPtr left_assoc(Level next, std::initializer_list<std::string_view> ops) {
    ExprPtr e = (this->*next)();
    for (;;) {
      bool matched = false;
      for (auto op : ops) {
        if (is(op)) {
          const Token at = take();
          e = binary(std::string(op), e, (this->*next)(), at);
          matched = true;
          break;
        }
      }
      if (!matched) return e;
    }
  }

  ExprPtr expression() { return left_assoc(&Parser::conj, {"||"}); }
  ExprPtr conj() { return left_assoc(&Parser::equality, {"&&"}); }
  ExprPtr equality() { return left_assoc(&Parser::comparison, {"==", "!="}); }
  ExprPtr comparison() { return left_assoc(&Parser::additive, {"<=", ">=", "<", ">"}); }
  ExprPtr additive() { return left_assoc(&Parser::term, {"+", "-"}); }
  ExprPtr term() { return left_assoc(&Parser::unary, {"*", "/", "%"}); }

  ExprPtr unary() {
    if (is("!") || is("-")) {
      const Token at = take();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Unary;
      e->op = at.text;
      e->args = {unary()};
      e->line = at.line;
      e->column = at.column;
      return e;
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    auto e = std::make_shared<Expr>();
    e->line = t.line;
    e->column = t.column;
    switch (t.kind) {
      case Token::Kind::Number:
        e->literal = take().number;
        return e;
      case Token::Kind::String:
        e->literal = take().text;
        return e;
      case Token::Kind::Ident:
        if (t.text == "true" || t.text == "false") {
          e->literal = take().text == "true";
          return e;
        }
        e->kind = Expr::Kind::Var;
        e->name = take().text;
        return e;
      case Token::Kind::Binding: {
        e->kind = Expr::Kind::Access;
        e->name = take().text;
        expect(".");
        if (peek().kind != Token::Kind::Ident || !kFields.count(peek().text))
          fail("expected one of text, number, position, length, stem, pos, gloss");
        e->field = take().text;
        if (std::find(bindings.begin(), bindings.end(), e->name) == bindings.end())
          bindings.push_back(e->name);
        return e;
      }
      case Token::Kind::Punct:
        if (t.text == "(") {
          take();
          ExprPtr inner = expression();
          expect(")");
          return inner;
        }
        break;
      case Token::Kind::End:
        break;
    }
    fail("expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ActionProgram ActionProgram::parse(std::string_view source) {
  Parser parser(Lexer(source).run());
  ActionProgram p;
  p.body_ = parser.program();
  p.bindings_ = std::move(parser.bindings);
  return p;
}

std::vector<CompiledAction> compile_actions(std::span<const ActionScript> scripts,
                                            const std::string& path) {
  std::vector<CompiledAction> out;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    const auto where = path + "[" + std::to_string(i) + "]";
    if (scripts[i].rule.empty()) throw ValidationError(where + ".rule", "action without a rule");
    if (scripts[i].binding.empty())
      throw ValidationError(where + ".binding", "action without a binding");
    try {
      out.push_back({scripts[i], ActionProgram::parse(scripts[i].source)});
    } catch (const ParseError& e) {
      throw ValidationError(where + ".source", e.what());
    }
  }
  return out;
}

class ActionRunner {
public:
  ActionRunner(const MatchTree& tree, const DocumentView& view, ActionEnv& env)
      : tree_(tree), view_(view), env_(env) {}

  void visit(const MatchNode& node, std::span<const CompiledAction> actions) {
    run_phase(node, actions, ActionPhase::PreMatch);
    ancestors_.push_back(&node);
    for (const auto& c : node.children) visit(c, actions);
    ancestors_.pop_back();
    run_phase(node, actions, ActionPhase::OnMatch);
  }

private:
  bool bound_at(const MatchNode& n, const std::string& binding) const {
    if (&n == &tree_.root && binding == tree_.rule) return true;
    if (n.path.empty()) return false;
    if (n.path == binding) return true;
    return n.path.size() > binding.size() &&
           n.path.compare(n.path.size() - binding.size(), binding.size(), binding) == 0 &&
           n.path[n.path.size() - binding.size() - 1] == '.';
  }

  const MatchNode* search(const MatchNode& n, const std::string& binding) const {
    if (bound_at(n, binding)) return &n;
    for (const auto& c : n.children)
      if (const auto* hit = search(c, binding)) return hit;
    return nullptr;
  }

  // The node itself, then its subtree, then the subtrees of its ancestors
  // from the nearest outwards.
  const MatchNode* resolve(const std::string& binding) const {
    if (const auto* hit = search(*current_, binding)) return hit;
    for (auto it = ancestors_.rbegin(); it != ancestors_.rend(); ++it)
      if (const auto* hit = search(**it, binding)) return hit;
    return nullptr;
  }

  void run_phase(const MatchNode& node, std::span<const CompiledAction> actions,
                 ActionPhase phase) {
    for (const auto& a : actions) {
      if (a.script.phase != phase || a.script.rule != tree_.rule) continue;
      if (!bound_at(node, a.script.binding)) continue;
      current_ = &node;
      resolved_.clear();
      bool ok = true;
      for (const auto& b : a.program.bindings()) {
        const auto* hit = resolve(b);
        if (!hit) {
          ok = false;
          break;
        }
        resolved_[b] = hit;
      }
      if (!ok) continue;
      exec(*a.program.body_);
    }
  }

  void exec(const Block& block) {
    for (const auto& s : block.stmts) exec(s);
  }

  void exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        exec(*s.then);
        break;
      case Stmt::Kind::If:
        if (as_bool(eval(*s.exprs[0])))
          exec(*s.then);
        else if (s.otherwise)
          exec(*s.otherwise);
        break;
      case Stmt::Kind::Assign: {
        Value v = eval(*s.exprs[0]);
        auto& var = env_.variables[s.name];
        if (s.op != "=") v = apply(std::string(1, s.op[0]), var, v, s.line, s.column);
        var = std::move(v);
        break;
      }
      case Stmt::Kind::Print: {
        std::string line;
        for (const auto& e : s.exprs) line += as_text(eval(*e));
        env_.printed.push_back(line);
        if (env_.onPrint) env_.onPrint(env_.printed.back());
        break;
      }
      case Stmt::Kind::Emit: {
        Emitted em;
        em.label = as_text(eval(*s.exprs[0]));
        em.value = eval(*s.exprs[1]);
        em.rule = tree_.rule;
        em.path = current_->path.empty() ? tree_.rule : current_->path;
        em.begin = current_->begin;
        em.end = current_->end;
        env_.emitted.push_back(std::move(em));
        if (env_.onEmit) env_.onEmit(env_.emitted.back());
        break;
      }
    }
  }

  static Value apply(const std::string& op, const Value& l, const Value& r, std::size_t line,
                     std::size_t column) {
    const bool lt = std::holds_alternative<std::string>(l);
    const bool rt = std::holds_alternative<std::string>(r);
    if (op == "+") {
      if (lt || rt) return as_text(l) + as_text(r);
      return as_number(l) + as_number(r);
    }
    if (op == "-") return as_number(l) - as_number(r);
    if (op == "*") return as_number(l) * as_number(r);
    if (op == "/" || op == "%") {
      const double d = as_number(r);
      if (d == 0.0)
        throw ActionError(std::to_string(line) + ":" + std::to_string(column) +
                          ": division by zero");
      return op == "/" ? as_number(l) / d : std::fmod(as_number(l), d);
    }
    if (op == "==" || op == "!=") {
      bool eq;
      if (lt && rt)
        eq = std::get<std::string>(l) == std::get<std::string>(r);
      else if (std::holds_alternative<bool>(l) || std::holds_alternative<bool>(r))
        eq = as_bool(l) == as_bool(r);
      else
        eq = as_number(l) == as_number(r);
      return op == "==" ? eq : !eq;
    }
    if (lt && rt) {
      const auto& a = std::get<std::string>(l);
      const auto& b = std::get<std::string>(r);
      if (op == "<") return a < b;
      if (op == "<=") return a <= b;
      if (op == ">") return a > b;
      return a >= b;
    }
    const double a = as_number(l), b = as_number(r);
    if (op == "<") return a < b;
    if (op == "<=") return a <= b;
    if (op == ">") return a > b;
    return a >= b;
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Literal:
        return e.literal;
      case Expr::Kind::Var: {
        auto it = env_.variables.find(e.name);
        return it == env_.variables.end() ? Value{} : it->second;
      }
      case Expr::Kind::Access:
        return access(*resolved_.at(e.name), e.name, e.field);
      case Expr::Kind::Unary: {
        const Value v = eval(*e.args[0]);
        if (e.op == "!") return !as_bool(v);
        return -as_number(v);
      }
      case Expr::Kind::Binary: {
        if (e.op == "&&") return as_bool(eval(*e.args[0])) && as_bool(eval(*e.args[1]));
        if (e.op == "||") return as_bool(eval(*e.args[0])) || as_bool(eval(*e.args[1]));
        return apply(e.op, eval(*e.args[0]), eval(*e.args[1]), e.line, e.column);
      }
    }
    return {};
  }

  const MatchNode* first_tagged_leaf(const MatchNode& n) const {
    const MatchNode* out = nullptr;
    for_each_node(n, [&](const MatchNode& m) {
      if (!out && m.is_leaf() && m.leafLabel != kNoneLabel) out = &m;
    });
    return out;
  }

  Value access(const MatchNode& n, const std::string& binding, const std::string& field) const {
    if (field == "text") return view_.text(n.begin, n.end);
    if (field == "position") return static_cast<double>(view_.char_index(n.begin));
    if (field == "length") return static_cast<double>(view_.char_length(n.begin, n.end));
    if (field == "number") {
      if (n.end - n.begin != 1)
        throw ActionError("$" + binding + ".number: '" + view_.text(n.begin, n.end) +
                          "' spans more than one word");
      const MatchNode* leaf = &n;
      while (!leaf->is_leaf()) leaf = &leaf->children.front();
      const auto* s = view_.solution(*leaf);
      if (!s || !s->numericValue)
        throw ActionError("$" + binding + ".number: word '" + view_.text(n.begin, n.end) +
                          "' has no numeric value");
      return *s->numericValue;
    }
    const MatchNode* leaf = first_tagged_leaf(n);
    const MorphSolution* s = leaf ? view_.solution(*leaf) : nullptr;
    if (!s) return std::string();
    if (field == "stem") return s->stem.form;
    if (field == "pos") return s->pos_string();
    std::string joined;
    for (const auto& g : s->glosses()) joined += (joined.empty() ? "" : ",") + g;
    return joined;
  }

  const MatchTree& tree_;
  const DocumentView& view_;
  ActionEnv& env_;
  std::vector<const MatchNode*> ancestors_;
  const MatchNode* current_ = nullptr;
  std::map<std::string, const MatchNode*> resolved_;
};

void run_actions(const MatchTree& tree, std::span<const CompiledAction> actions,
                 const DocumentView& view, ActionEnv& env) {
  if (actions.empty()) return;
  ActionRunner(tree, view, env).visit(tree.root, actions);
}

}  // namespace morphex
