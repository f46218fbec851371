#ifndef MODWAVE_DSL_VALIDATE_H_
#define MODWAVE_DSL_VALIDATE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "modwave/dsl/expression.h"
#include "modwave/dsl/symbol_table.h"

namespace modwave::dsl {

enum class FlagKind {
  kUndefinedSymbol,
  kZeroLiteralDivisor,
  kMissingQuadrature,
  kArityError,
};

std::string_view to_string(FlagKind kind);

struct SemanticFlag {
  FlagKind kind = FlagKind::kUndefinedSymbol;
  std::string detail;  // offending symbol or subexpression
  SourceSpan span;
};

struct ValidationReport {
  bool syntactic_ok = false;
  std::optional<ErrorClass> syntax_error;
  std::vector<SemanticFlag> semantic_flags;
  std::vector<std::string> error_messages;
  std::string formula;

  bool has_flag(FlagKind kind) const;
  std::size_t count(FlagKind kind) const;

  // Syntactically valid and free of undefined symbols and arity problems.
  // Zero-literal divisors and a missing quadrature branch are recorded but
  // do not block evaluation.
  bool passes() const;
};

struct ValidationPolicy {
  // Flag formulas that reference exactly one of I(t) / Q(t).
  bool require_quadrature_pair = true;
};

ValidationReport validate(const Expression& expr, const SymbolTable& table,
                          const ValidationPolicy& policy = {});

// Parses `text` first; syntax errors land in the report instead of
// propagating.
ValidationReport validate_text(std::string_view text, const SymbolTable& table,
                               const ValidationPolicy& policy = {},
                               const ParseOptions& parse_options = {});

// Coarse outcome used for generation statistics. Every report maps to
// exactly one class.
enum class FormulaClass {
  kValid,
  kUnbalancedParenthesis,
  kUndefinedSymbol,
  kArityOrFunction,
  kOtherSyntax,
};

std::string_view to_string(FormulaClass cls);
FormulaClass classify(const ValidationReport& report);

void to_json(nlohmann::json& j, const ValidationReport& report);

}  // namespace modwave::dsl

#endif  // MODWAVE_DSL_VALIDATE_H_
