#include "modwave/dsl/expression.h"

#include <algorithm>
#include <charconv>
#include <cstring>

namespace modwave::dsl {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kConstant: return "constant";
    case NodeKind::kSymbol: return "symbol";
    case NodeKind::kNegate: return "negate";
    case NodeKind::kAdd: return "+";
    case NodeKind::kSubtract: return "-";
    case NodeKind::kMultiply: return "*";
    case NodeKind::kDivide: return "/";
    case NodeKind::kPower: return "^";
    case NodeKind::kSin: return "sin";
    case NodeKind::kCos: return "cos";
    case NodeKind::kIntegral: return "integral";
    case NodeKind::kSum: return "sum";
  }
  return "?";
}

bool is_binary(NodeKind kind) {
  return kind == NodeKind::kAdd || kind == NodeKind::kSubtract || kind == NodeKind::kMultiply ||
         kind == NodeKind::kDivide || kind == NodeKind::kPower;
}

Expression Expression::make(Node node) {
  return Expression(std::make_shared<const Node>(std::move(node)));
}

Expression Expression::constant(double value, SourceSpan span) {
  return make({NodeKind::kConstant, value, {}, {}, span});
}

Expression Expression::symbol(std::string name, SourceSpan span) {
  return make({NodeKind::kSymbol, 0.0, std::move(name), {}, span});
}

Expression Expression::negate(Expression operand, SourceSpan span) {
  if (span == SourceSpan{}) span = operand.span();
  return make({NodeKind::kNegate, 0.0, {}, {std::move(operand)}, span});
}

Expression Expression::binary(NodeKind kind, Expression lhs, Expression rhs) {
  const SourceSpan span{lhs.span().begin, rhs.span().end};
  return make({kind, 0.0, {}, {std::move(lhs), std::move(rhs)}, span});
}

Expression Expression::sin(Expression arg, SourceSpan span) {
  return make({NodeKind::kSin, 0.0, {}, {std::move(arg)}, span});
}

Expression Expression::cos(Expression arg, SourceSpan span) {
  return make({NodeKind::kCos, 0.0, {}, {std::move(arg)}, span});
}

Expression Expression::integral(Expression body, std::string variable, SourceSpan span) {
  return make({NodeKind::kIntegral, 0.0, std::move(variable), {std::move(body)}, span});
}

Expression Expression::sum(Expression body, std::string index, Expression lower,
                           Expression upper, SourceSpan span) {
  return make({NodeKind::kSum,
               0.0,
               std::move(index),
               {std::move(body), std::move(lower), std::move(upper)},
               span});
}

std::size_t Expression::depth() const {
  std::size_t deepest = 0;
  for (const auto& c : children()) deepest = std::max(deepest, c.depth());
  return deepest + 1;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.kind() == NodeKind::kConstant && a.value() != b.value()) return false;
  if (a.children().size() != b.children().size()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!(a.children()[i] == b.children()[i])) return false;
  }
  return true;
}

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const ParseOptions& options)
      : tokens_(tokens), options_(options) {}

  Expression run() {
    if (tokens_.empty()) throw SyntaxError(ErrorClass::kEmpty, {}, "empty formula");
    check_balance();
    Expression root = parse_expression(0);
    if (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      throw SyntaxError(ErrorClass::kUnexpectedToken, t.span,
                        "unexpected '" + t.text + "' at position " + std::to_string(t.span.begin));
    }
    if (root.depth() > options_.max_depth) {
      throw SyntaxError(ErrorClass::kTooDeep, root.span(),
                        "expression depth " + std::to_string(root.depth()) + " exceeds " +
                            std::to_string(options_.max_depth));
    }
    return root;
  }

 private:
  void check_balance() const {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].kind == TokenKind::kLParen) {
        open.push_back(i);
      } else if (tokens_[i].kind == TokenKind::kRParen) {
        if (open.empty()) {
          throw SyntaxError(ErrorClass::kUnbalancedParenthesis, tokens_[i].span,
                            "unmatched ')' at position " + std::to_string(tokens_[i].span.begin));
        }
        open.pop_back();
      }
    }
    if (!open.empty()) {
      const Token& t = tokens_[open.back()];
      throw SyntaxError(ErrorClass::kUnbalancedParenthesis, t.span,
                        "unclosed '(' at position " + std::to_string(t.span.begin));
    }
  }

  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  bool accept(TokenKind kind) {
    if (pos_ < tokens_.size() && tokens_[pos_].kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  SourceSpan end_span() const {
    const std::size_t end = tokens_.empty() ? 0 : tokens_.back().span.end;
    return {end, end};
  }

  [[noreturn]] void unexpected(const char* expected) const {
    if (const Token* t = peek()) {
      throw SyntaxError(ErrorClass::kUnexpectedToken, t->span,
                        std::string("expected ") + expected + " but found '" + t->text +
                            "' at position " + std::to_string(t->span.begin));
    }
    throw SyntaxError(ErrorClass::kUnexpectedToken, end_span(),
                      std::string("expected ") + expected + " but the formula ended");
  }

  void enter(std::size_t level) const {
    // Token count is capped, so this only trips on pathological nesting.
    if (level > 4 * options_.max_depth) {
      throw SyntaxError(ErrorClass::kTooDeep, peek() ? peek()->span : end_span(),
                        "nesting exceeds " + std::to_string(options_.max_depth));
    }
  }

  Expression parse_expression(std::size_t level) {
    enter(level);
    Expression lhs = parse_term(level + 1);
    while (const Token* t = peek()) {
      NodeKind kind;
      if (t->kind == TokenKind::kPlus) {
        kind = NodeKind::kAdd;
      } else if (t->kind == TokenKind::kMinus) {
        kind = NodeKind::kSubtract;
      } else {
        break;
      }
      ++pos_;
      Expression rhs = parse_term(level + 1);
      lhs = Expression::binary(kind, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expression parse_term(std::size_t level) {
    Expression lhs = parse_unary(level + 1);
    while (const Token* t = peek()) {
      NodeKind kind;
      if (t->kind == TokenKind::kStar) {
        kind = NodeKind::kMultiply;
      } else if (t->kind == TokenKind::kSlash) {
        kind = NodeKind::kDivide;
      } else {
        break;
      }
      ++pos_;
      Expression rhs = parse_unary(level + 1);
      lhs = Expression::binary(kind, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expression parse_unary(std::size_t level) {
    enter(level);
    if (const Token* t = peek()) {
      if (t->kind == TokenKind::kMinus) {
        const std::size_t begin = t->span.begin;
        ++pos_;
        Expression operand = parse_unary(level + 1);
        const SourceSpan span{begin, operand.span().end};
        return Expression::negate(std::move(operand), span);
      }
      if (t->kind == TokenKind::kPlus) {
        ++pos_;
        return parse_unary(level + 1);
      }
    }
    return parse_power(level + 1);
  }

  Expression parse_power(std::size_t level) {
    Expression base = parse_primary(level + 1);
    if (accept(TokenKind::kCaret)) {
      Expression exponent = parse_unary(level + 1);
      return Expression::binary(NodeKind::kPower, std::move(base), std::move(exponent));
    }
    return base;
  }

  Expression parse_primary(std::size_t level) {
    const Token* t = peek();
    if (t == nullptr) unexpected("an operand");
    switch (t->kind) {
      case TokenKind::kNumber:
        ++pos_;
        return Expression::constant(t->value, t->span);
      case TokenKind::kIdentifier:
      case TokenKind::kSignal:
        ++pos_;
        return Expression::symbol(t->text, t->span);
      case TokenKind::kFunction:
        return parse_call(level + 1);
      case TokenKind::kLParen: {
        ++pos_;
        Expression inner = parse_expression(level + 1);
        if (!accept(TokenKind::kRParen)) unexpected("')'");
        return inner;
      }
      default:
        unexpected("an operand");
    }
  }

  Expression parse_call(std::size_t level) {
    const Token& fn = tokens_[pos_++];
    if (!accept(TokenKind::kLParen)) {
      throw SyntaxError(ErrorClass::kArity, fn.span,
                        "function '" + fn.text + "' must be followed by an argument list");
    }
    std::vector<Expression> args;
    args.push_back(parse_expression(level + 1));
    while (accept(TokenKind::kComma)) args.push_back(parse_expression(level + 1));
    const Token* close = peek();
    if (close == nullptr || close->kind != TokenKind::kRParen) unexpected("',' or ')'");
    ++pos_;
    const SourceSpan span{fn.span.begin, close->span.end};

    const auto require = [&](std::size_t n, const char* signature) {
      if (args.size() != n) {
        throw SyntaxError(ErrorClass::kArity, span,
                          "'" + fn.text + "' takes " + std::to_string(n) + " argument" +
                              (n == 1 ? "" : "s") + " " + signature + ", got " +
                              std::to_string(args.size()));
      }
    };
    const auto bare_name = [&](const Expression& e, const char* role) -> std::string {
      if (e.kind() != NodeKind::kSymbol || e.name().find('(') != std::string::npos) {
        throw SyntaxError(ErrorClass::kArity, e.span(),
                          "'" + fn.text + "' expects a plain identifier as its " + role);
      }
      return e.name();
    };

    if (fn.text == "sin" || fn.text == "cos") {
      require(1, "(x)");
      return fn.text == "sin" ? Expression::sin(std::move(args[0]), span)
                              : Expression::cos(std::move(args[0]), span);
    }
    if (fn.text == "integral") {
      require(2, "(body, t)");
      std::string var = bare_name(args[1], "variable");
      return Expression::integral(std::move(args[0]), std::move(var), span);
    }
    require(4, "(body, index, lower, upper)");
    std::string index = bare_name(args[1], "index");
    return Expression::sum(std::move(args[0]), std::move(index), std::move(args[2]),
                           std::move(args[3]), span);
  }

  const std::vector<Token>& tokens_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

int precedence(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::kAdd:
    case NodeKind::kSubtract: return 1;
    case NodeKind::kMultiply:
    case NodeKind::kDivide: return 2;
    case NodeKind::kNegate: return 3;
    case NodeKind::kPower: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void render(const Expression& e, std::string& out);

void render_at(const Expression& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    render(e, out);
    out += ')';
  } else {
    render(e, out);
  }
}

void render(const Expression& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::kConstant:
      out += format_number(e.value());
      return;
    case NodeKind::kSymbol:
      out += e.name();
      return;
    case NodeKind::kNegate:
      out += '-';
      render_at(e.child(0), 3, out);
      return;
    case NodeKind::kAdd:
    case NodeKind::kSubtract:
      render_at(e.child(0), 1, out);
      out += e.kind() == NodeKind::kAdd ? " + " : " - ";
      render_at(e.child(1), 2, out);
      return;
    case NodeKind::kMultiply:
    case NodeKind::kDivide:
      render_at(e.child(0), 2, out);
      out += e.kind() == NodeKind::kMultiply ? " * " : " / ";
      render_at(e.child(1), 3, out);
      return;
    case NodeKind::kPower:
      render_at(e.child(0), 5, out);
      out += '^';
      render_at(e.child(1), 3, out);
      return;
    case NodeKind::kSin:
    case NodeKind::kCos:
      out += to_string(e.kind());
      out += '(';
      render(e.child(0), out);
      out += ')';
      return;
    case NodeKind::kIntegral:
      out += "integral(";
      render(e.child(0), out);
      out += ", " + e.name() + ")";
      return;
    case NodeKind::kSum:
      out += "sum(";
      render(e.child(0), out);
      out += ", " + e.name() + ", ";
      render(e.child(1), out);
      out += ", ";
      render(e.child(2), out);
      out += ')';
      return;
  }
}

}  // namespace

Expression parse(const std::vector<Token>& tokens, const ParseOptions& options) {
  return Parser(tokens, options).run();
}

Expression parse(std::string_view text, const ParseOptions& options) {
  return parse(tokenize(text, options.lex), options);
}

ParseResult try_parse(std::string_view text, const ParseOptions& options) {
  ParseResult result;
  try {
    result.expression = parse(text, options);
  } catch (const SyntaxError& e) {
    result.error = e;
  }
  return result;
}

std::string to_string(const Expression& expr) {
  std::string out;
  render(expr, out);
  return out;
}

std::size_t op_count(const Expression& expr) {
  if (expr.kind() == NodeKind::kConstant || expr.kind() == NodeKind::kSymbol) return 0;
  std::size_t n = 1;
  for (const auto& c : expr.children()) n += op_count(c);
  return n;
}

}  // namespace modwave::dsl
