#ifndef MODWAVE_DSL_EXPRESSION_H_
#define MODWAVE_DSL_EXPRESSION_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modwave/dsl/token.h"

namespace modwave::dsl {

enum class NodeKind {
  kConstant,
  kSymbol,
  kNegate,
  kAdd,
  kSubtract,
  kMultiply,
  kDivide,
  kPower,
  kSin,
  kCos,
  kIntegral,  // children: {body}; bound variable in name (always "t" when valid)
  kSum,       // children: {body, lower, upper}; index variable in name
};

std::string_view to_string(NodeKind kind);
bool is_binary(NodeKind kind);

// Immutable formula AST. Copies share the underlying nodes.
class Expression {
 public:
  struct Node {
    NodeKind kind = NodeKind::kConstant;
    double value = 0.0;
    std::string name;
    std::vector<Expression> children;
    SourceSpan span;
  };

  static Expression constant(double value, SourceSpan span = {});
  static Expression symbol(std::string name, SourceSpan span = {});
  static Expression negate(Expression operand, SourceSpan span = {});
  static Expression binary(NodeKind kind, Expression lhs, Expression rhs);
  static Expression sin(Expression arg, SourceSpan span = {});
  static Expression cos(Expression arg, SourceSpan span = {});
  static Expression integral(Expression body, std::string variable, SourceSpan span = {});
  static Expression sum(Expression body, std::string index, Expression lower, Expression upper,
                        SourceSpan span = {});

  NodeKind kind() const { return node_->kind; }
  double value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  const std::vector<Expression>& children() const { return node_->children; }
  const Expression& child(std::size_t i) const { return node_->children.at(i); }
  SourceSpan span() const { return node_->span; }

  // Height of the tree; a leaf has depth 1.
  std::size_t depth() const;

  // Structural equality; spans are ignored.
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expression make(Node node);

  std::shared_ptr<const Node> node_;
};

struct ParseOptions {
  LexOptions lex;
  std::size_t max_depth = 64;
};

// Parses a token sequence. Throws SyntaxError naming the failing class.
Expression parse(const std::vector<Token>& tokens, const ParseOptions& options = {});

// tokenize + parse.
Expression parse(std::string_view text, const ParseOptions& options = {});

// Non-throwing form: exactly one of `expression` / `error` is set.
struct ParseResult {
  std::optional<Expression> expression;
  std::optional<SyntaxError> error;

  bool ok() const { return expression.has_value(); }
};
ParseResult try_parse(std::string_view text, const ParseOptions& options = {});

// Canonical ASCII rendering with explicit `*` and minimal parentheses.
// parse(to_string(e)) == e for every parsed e.
std::string to_string(const Expression& expr);

// Number of arithmetic and function-evaluation nodes. A sum counts once,
// not once per index value.
std::size_t op_count(const Expression& expr);

}  // namespace modwave::dsl

#endif  // MODWAVE_DSL_EXPRESSION_H_
