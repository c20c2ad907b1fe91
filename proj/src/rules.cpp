#include "morphex/rules.hpp"

#include <cctype>
#include <map>

#include "morphex/error.hpp"
#include "morphex/formula.hpp"

namespace morphex {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Label:
      return "label";
    case NodeKind::Concat:
      return "concat";
    case NodeKind::Star:
      return "star";
    case NodeKind::Plus:
      return "plus";
    case NodeKind::Optional:
      return "optional";
    case NodeKind::UpTo:
      return "upto";
    case NodeKind::And:
      return "and";
    case NodeKind::Or:
      return "or";
    case NodeKind::RuleRef:
      return "rule";
  }
  return "label";
}

NodeKind node_kind_from(std::string_view name) {
  for (auto k : {NodeKind::Label, NodeKind::Concat, NodeKind::Star, NodeKind::Plus,
                 NodeKind::Optional, NodeKind::UpTo, NodeKind::And, NodeKind::Or,
                 NodeKind::RuleRef}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("", "unknown node kind '" + std::string(name) + "'");
}

bool RuleNode::same_shape(const RuleNode& other) const {
  if (kind != other.kind || symbol != other.symbol || count != other.count ||
      binding != other.binding || children.size() != other.children.size())
    return false;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (!children[i].same_shape(other.children[i])) return false;
  }
  return true;
}

RuleNode label(std::string symbol) {
  RuleNode n;
  n.kind = NodeKind::Label;
  n.symbol = std::move(symbol);
  return n;
}

namespace {

RuleNode make(NodeKind kind, std::vector<RuleNode> children) {
  RuleNode n;
  n.kind = kind;
  n.children = std::move(children);
  return n;
}

}  // namespace

RuleNode concat(std::vector<RuleNode> children) { return make(NodeKind::Concat, std::move(children)); }
RuleNode alt(std::vector<RuleNode> children) { return make(NodeKind::Or, std::move(children)); }
RuleNode conj(RuleNode left, RuleNode right) {
  std::vector<RuleNode> c;
  c.push_back(std::move(left));
  c.push_back(std::move(right));
  return make(NodeKind::And, std::move(c));
}
RuleNode star(RuleNode child) { return make(NodeKind::Star, {std::move(child)}); }
RuleNode plus(RuleNode child) { return make(NodeKind::Plus, {std::move(child)}); }
RuleNode optional(RuleNode child) { return make(NodeKind::Optional, {std::move(child)}); }
RuleNode upto(RuleNode child, unsigned count) {
  auto n = make(NodeKind::UpTo, {std::move(child)});
  n.count = count;
  return n;
}
RuleNode bind(std::string name, RuleNode node) {
  node.binding = std::move(name);
  return node;
}

const Rule* RuleSet::find(std::string_view name) const {
  for (const auto& r : rules) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

enum class Tok { Ident, Int, Dollar, Eq, Colon, Semi, LParen, RParen, Bar, Amp, Quest, Star, Plus, Caret, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "identifier '" + t.text + "'";
    case Tok::Int:
      return "number " + t.text;
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        t.text += advance();
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        t.text += advance();
      return t;
    }
    t.text = std::string(1, advance());
    switch (c) {
      case '$': t.kind = Tok::Dollar; break;
      case '=': t.kind = Tok::Eq; break;
      case ':': t.kind = Tok::Colon; break;
      case ';': t.kind = Tok::Semi; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '|': t.kind = Tok::Bar; break;
      case '&': t.kind = Tok::Amp; break;
      case '?': t.kind = Tok::Quest; break;
      case '*': t.kind = Tok::Star; break;
      case '+': t.kind = Tok::Plus; break;
      case '^': t.kind = Tok::Caret; break;
      default:
        throw ParseError("unexpected character '" + t.text + "'", t.line, t.column);
    }
    return t;
  }

private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
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

class Parser {
public:
  Parser(std::string_view src, const std::set<std::string>& labels) : lexer_(src), labels_(labels) {
    tok_ = lexer_.next();
  }

  RuleSet parse() {
    RuleSet set;
    if (tok_.kind == Tok::End) throw ParseError("no rules defined", tok_.line, tok_.column);
    while (tok_.kind != Tok::End) {
      const Token name = expect(Tok::Ident, "rule name");
      if (set.find(name.text))
        throw ParseError("duplicate rule '" + name.text + "'", name.line, name.column);
      if (labels_.count(name.text) || is_other_alias(name.text))
        throw ParseError("rule name '" + name.text + "' clashes with a formula label", name.line,
                         name.column);
      expect(Tok::Colon, "':'");
      current_ = name.text;
      RuleNode root = expression(set);
      expect(Tok::Semi, "';' after rule '" + name.text + "'");
      set.rules.push_back(Rule{name.text, std::move(root), name.line});
    }
    return set;
  }

private:
  void bump() { tok_ = lexer_.next(); }

  Token expect(Tok kind, const std::string& what) {
    if (tok_.kind != kind)
      throw ParseError("expected " + what + ", found " + describe(tok_), tok_.line, tok_.column);
    Token t = tok_;
    bump();
    return t;
  }

  static void place(RuleNode& n, const Token& t) {
    n.line = t.line;
    n.column = t.column;
  }

  RuleNode expression(const RuleSet& set) {
    const Token first = tok_;
    std::vector<RuleNode> alts;
    alts.push_back(conjunction(set));
    while (tok_.kind == Tok::Bar) {
      bump();
      alts.push_back(conjunction(set));
    }
    if (alts.size() == 1) return std::move(alts.front());
    RuleNode n = alt(std::move(alts));
    place(n, first);
    return n;
  }

  RuleNode conjunction(const RuleSet& set) {
    const Token first = tok_;
    RuleNode left = sequence(set);
    while (tok_.kind == Tok::Amp) {
      bump();
      left = conj(std::move(left), sequence(set));
      place(left, first);
    }
    return left;
  }

  static bool starts_unary(Tok k) { return k == Tok::Ident || k == Tok::LParen || k == Tok::Dollar; }

  RuleNode sequence(const RuleSet& set) {
    const Token first = tok_;
    if (!starts_unary(tok_.kind))
      throw ParseError("expected an expression, found " + describe(tok_), tok_.line, tok_.column);
    std::vector<RuleNode> items;
    while (starts_unary(tok_.kind)) items.push_back(unary(set));
    if (items.size() == 1) return std::move(items.front());
    RuleNode n = concat(std::move(items));
    place(n, first);
    return n;
  }

  RuleNode unary(const RuleSet& set) {
    if (tok_.kind == Tok::Dollar) {
      bump();
      const Token name = expect(Tok::Ident, "binding name after '$'");
      expect(Tok::Eq, "'=' after binding name");
      RuleNode n = postfix(set);
      if (!n.binding.empty())
        throw ParseError("expression already bound to '" + n.binding + "'", name.line, name.column);
      n.binding = name.text;
      return n;
    }
    return postfix(set);
  }

  RuleNode postfix(const RuleSet& set) {
    const Token first = tok_;
    RuleNode n = atom(set);
    for (;;) {
      if (tok_.kind == Tok::Quest) {
        bump();
        n = optional(std::move(n));
      } else if (tok_.kind == Tok::Star) {
        bump();
        n = star(std::move(n));
      } else if (tok_.kind == Tok::Plus) {
        bump();
        n = plus(std::move(n));
      } else if (tok_.kind == Tok::Caret) {
        const Token caret = tok_;
        bump();
        if (tok_.kind != Tok::Int)
          throw ParseError("expected a repetition bound after '^'", tok_.line, tok_.column);
        const Token bound = tok_;
        bump();
        unsigned long value = 0;
        try {
          value = std::stoul(bound.text);
        } catch (const std::exception&) {
          throw ParseError("repetition bound " + bound.text + " is too large", bound.line,
                           bound.column);
        }
        if (value < 1)
          throw ParseError("repetition bound must be at least 1", bound.line, bound.column);
        if (value > 1000)
          throw ParseError("repetition bound " + bound.text + " exceeds 1000", bound.line,
                           bound.column);
        n = upto(std::move(n), static_cast<unsigned>(value));
        (void)caret;
      } else {
        break;
      }
      place(n, first);
    }
    return n;
  }

  RuleNode atom(const RuleSet& set) {
    if (tok_.kind == Tok::LParen) {
      const Token open = tok_;
      bump();
      RuleNode inner = expression(set);
      if (tok_.kind != Tok::RParen)
        throw ParseError("unbalanced '(' opened at " + std::to_string(open.line) + ":" +
                             std::to_string(open.column) + ", found " + describe(tok_),
                         tok_.line, tok_.column);
      bump();
      return inner;
    }
    if (tok_.kind == Tok::RParen) throw ParseError("unbalanced ')'", tok_.line, tok_.column);
    const Token id = expect(Tok::Ident, "a label or rule name");
    RuleNode n;
    if (id.text == current_) {
      throw ParseError("rule '" + id.text + "' references itself", id.line, id.column);
    } else if (labels_.count(id.text) || is_other_alias(id.text)) {
      n = label(id.text);
    } else if (set.find(id.text)) {
      n.kind = NodeKind::RuleRef;
      n.symbol = id.text;
    } else {
      throw ParseError("unknown label or rule '" + id.text + "'", id.line, id.column);
    }
    place(n, id);
    return n;
  }

  Lexer lexer_;
  const std::set<std::string>& labels_;
  Token tok_;
  std::string current_;
};

int precedence(const RuleNode& n) {
  switch (n.kind) {
    case NodeKind::Or:
      return 0;
    case NodeKind::And:
      return 1;
    case NodeKind::Concat:
      return 2;
    case NodeKind::Star:
    case NodeKind::Plus:
    case NodeKind::Optional:
    case NodeKind::UpTo:
      return 3;
    default:
      return 4;
  }
}

std::string render(const RuleNode& n, int context);

std::string render_unbound(const RuleNode& n) {
  switch (n.kind) {
    case NodeKind::Label:
    case NodeKind::RuleRef:
      return n.symbol;
    case NodeKind::Concat: {
      std::string out;
      for (const auto& c : n.children) {
        if (!out.empty()) out += ' ';
        out += render(c, 3);
      }
      return out;
    }
    case NodeKind::Or:
    case NodeKind::And: {
      const char* sep = n.kind == NodeKind::Or ? " | " : " & ";
      std::string out;
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) out += sep;
        out += render(n.children[i], precedence(n) + 1);
      }
      return out;
    }
    case NodeKind::Star:
      return render(n.children.at(0), 4) + "*";
    case NodeKind::Plus:
      return render(n.children.at(0), 4) + "+";
    case NodeKind::Optional:
      return render(n.children.at(0), 4) + "?";
    case NodeKind::UpTo:
      return render(n.children.at(0), 4) + "^" + std::to_string(n.count);
  }
  return {};
}

// `context` is the minimum precedence the caller accepts without parentheses.
std::string render(const RuleNode& n, int context) {
  if (!n.binding.empty()) {
    std::string inner = render_unbound(n);
    if (precedence(n) < 3) inner = "(" + inner + ")";
    std::string out = "$" + n.binding + "=" + inner;
    return context > 3 ? "(" + out + ")" : out;
  }
  std::string out = render_unbound(n);
  return precedence(n) < context ? "(" + out + ")" : out;
}

void annotate(RuleNode& node, const std::string& prefix, std::uint32_t& counter) {
  node.id = counter++;
  std::string child_prefix = prefix;
  if (node.kind == NodeKind::RuleRef) {
    node.path = prefix + (node.binding.empty() ? node.symbol : node.binding);
    child_prefix = node.path + ".";
  } else {
    node.path = node.binding.empty() ? std::string() : prefix + node.binding;
  }
  for (auto& c : node.children) annotate(c, child_prefix, counter);
}

void collect_paths(const RuleNode& node, std::set<std::string>& out) {
  if (!node.path.empty()) out.insert(node.path);
  for (const auto& c : node.children) collect_paths(c, out);
}

bool find_under_repetition(const RuleNode& node, std::string_view path, bool under) {
  if (node.path == path && under) return true;
  const bool repeats = node.kind == NodeKind::Star || node.kind == NodeKind::Plus ||
                       node.kind == NodeKind::UpTo || node.repetition;
  for (const auto& c : node.children) {
    if (find_under_repetition(c, path, under || repeats)) return true;
  }
  return false;
}

}  // namespace

RuleSet parse_rules(std::string_view source, const std::set<std::string>& knownLabels) {
  return Parser(source, knownLabels).parse();
}

std::string to_source(const RuleNode& node) { return render(node, 0); }

std::string to_source(const RuleSet& rules) {
  std::string out;
  for (const auto& r : rules.rules) out += r.name + ": " + to_source(r.root) + ";\n";
  return out;
}

RuleNode expand_upto(const RuleNode& node) {
  RuleNode out = node;
  for (auto& c : out.children) c = expand_upto(c);
  if (out.kind != NodeKind::UpTo) return out;

  const RuleNode body = out.children.at(0);
  RuleNode first = optional(body);
  first.repetition = true;
  first.line = node.line;
  first.column = node.column;
  RuleNode result;
  if (node.count == 1) {
    result = std::move(first);
  } else {
    std::vector<RuleNode> choices;
    choices.push_back(std::move(first));
    for (unsigned n = 2; n <= node.count; ++n) {
      RuleNode seq = concat(std::vector<RuleNode>(n, body));
      seq.repetition = true;
      seq.line = node.line;
      seq.column = node.column;
      choices.push_back(std::move(seq));
    }
    result = alt(std::move(choices));
    result.line = node.line;
    result.column = node.column;
  }
  result.binding = node.binding;
  return result;
}

RuleNode inline_rules(const RuleNode& node, const RuleSet& rules) {
  RuleNode out = node;
  if (out.kind == NodeKind::RuleRef) {
    const Rule* target = rules.find(out.symbol);
    if (!target) throw ValidationError("", "unknown rule '" + out.symbol + "'");
    out.children.clear();
    out.children.push_back(inline_rules(target->root, rules));
    return out;
  }
  for (auto& c : out.children) c = inline_rules(c, rules);
  return out;
}

RuleNode prepare_rule(const Rule& rule, const RuleSet& rules) {
  RuleNode prepared = expand_upto(inline_rules(rule.root, rules));
  std::uint32_t counter = 0;
  annotate(prepared, "", counter);
  return prepared;
}

std::set<std::string> binding_paths(const RuleNode& prepared) {
  std::set<std::string> out;
  collect_paths(prepared, out);
  return out;
}

bool path_under_repetition(const RuleNode& prepared, std::string_view path) {
  return find_under_repetition(prepared, path, false);
}

}  // namespace morphex
