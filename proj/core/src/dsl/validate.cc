#include "modwave/dsl/validate.h"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace modwave::dsl {

std::string_view to_string(FlagKind kind) {
  switch (kind) {
    case FlagKind::kUndefinedSymbol: return "undefined-symbol";
    case FlagKind::kZeroLiteralDivisor: return "zero-literal-divisor";
    case FlagKind::kMissingQuadrature: return "missing-quadrature-component";
    case FlagKind::kArityError: return "arity-error";
  }
  return "?";
}

std::string_view to_string(FormulaClass cls) {
  switch (cls) {
    case FormulaClass::kValid: return "valid";
    case FormulaClass::kUnbalancedParenthesis: return "unbalanced-parenthesis";
    case FormulaClass::kUndefinedSymbol: return "undefined-symbol";
    case FormulaClass::kArityOrFunction: return "arity-function-error";
    case FormulaClass::kOtherSyntax: return "other-syntax";
  }
  return "?";
}

bool ValidationReport::has_flag(FlagKind kind) const { return count(kind) > 0; }

std::size_t ValidationReport::count(FlagKind kind) const {
  return static_cast<std::size_t>(std::count_if(semantic_flags.begin(), semantic_flags.end(),
                                                [kind](const auto& f) { return f.kind == kind; }));
}

bool ValidationReport::passes() const {
  return syntactic_ok && !has_flag(FlagKind::kUndefinedSymbol) &&
         !has_flag(FlagKind::kArityError);
}

namespace {

bool is_zero_literal_product(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::kConstant: return e.value() == 0.0;
    case NodeKind::kNegate: return is_zero_literal_product(e.child(0));
    case NodeKind::kMultiply:
      return is_zero_literal_product(e.child(0)) || is_zero_literal_product(e.child(1));
    default: return false;
  }
}

bool references_signal(const Expression& e, const SymbolTable& table) {
  if (e.kind() == NodeKind::kSymbol) {
    const SymbolInfo* info = table.find(e.name());
    return info != nullptr && (info->role == SymbolRole::kSignal || info->role == SymbolRole::kTime);
  }
  return std::any_of(e.children().begin(), e.children().end(),
                     [&](const Expression& c) { return references_signal(c, table); });
}

class Checker {
 public:
  Checker(const SymbolTable& table, ValidationReport& report) : table_(table), report_(report) {}

  void visit(const Expression& e) {
    switch (e.kind()) {
      case NodeKind::kConstant:
        return;
      case NodeKind::kSymbol:
        check_symbol(e);
        return;
      case NodeKind::kDivide:
        if (is_zero_literal_product(e.child(1))) {
          flag(FlagKind::kZeroLiteralDivisor, to_string(e.child(1)), e.child(1).span(),
               "divisor '" + to_string(e.child(1)) + "' is a product containing literal 0");
        }
        break;
      case NodeKind::kIntegral:
        if (e.name() != "t") {
          flag(FlagKind::kArityError, e.name(), e.span(),
               "integral must run over t, not '" + e.name() + "'");
        }
        break;
      case NodeKind::kSum: {
        for (std::size_t i = 1; i < 3; ++i) {
          if (references_signal(e.child(i), table_)) {
            flag(FlagKind::kArityError, to_string(e.child(i)), e.child(i).span(),
                 "sum bound '" + to_string(e.child(i)) + "' must be constant");
          }
        }
        visit(e.child(1));
        visit(e.child(2));
        bound_.push_back(e.name());
        visit(e.child(0));
        bound_.pop_back();
        return;
      }
      default:
        break;
    }
    for (const auto& c : e.children()) visit(c);
  }

  bool uses_in_phase = false;
  bool uses_quadrature = false;

 private:
  void check_symbol(const Expression& e) {
    const std::string& name = e.name();
    if (name == "I(t)") uses_in_phase = true;
    if (name == "Q(t)") uses_quadrature = true;
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return;
    if (table_.contains(name)) return;
    for (const auto& f : report_.semantic_flags) {
      if (f.kind == FlagKind::kUndefinedSymbol && f.detail == name) return;
    }
    flag(FlagKind::kUndefinedSymbol, name, e.span(), "undefined symbol '" + name + "'");
  }

  void flag(FlagKind kind, std::string detail, SourceSpan span, std::string message) {
    report_.semantic_flags.push_back({kind, std::move(detail), span});
    report_.error_messages.push_back(std::move(message));
  }

  const SymbolTable& table_;
  ValidationReport& report_;
  std::vector<std::string> bound_;
};

}  // namespace

ValidationReport validate(const Expression& expr, const SymbolTable& table,
                          const ValidationPolicy& policy) {
  ValidationReport report;
  report.syntactic_ok = true;
  report.formula = to_string(expr);
  Checker checker(table, report);
  checker.visit(expr);
  if (policy.require_quadrature_pair && checker.uses_in_phase != checker.uses_quadrature) {
    const char* present = checker.uses_in_phase ? "I(t)" : "Q(t)";
    report.semantic_flags.push_back({FlagKind::kMissingQuadrature, present, expr.span()});
    report.error_messages.push_back(std::string("only one quadrature component (") + present +
                                    ") is used");
  }
  return report;
}

ValidationReport validate_text(std::string_view text, const SymbolTable& table,
                               const ValidationPolicy& policy, const ParseOptions& parse_options) {
  ParseResult parsed = try_parse(text, parse_options);
  if (!parsed.ok()) {
    ValidationReport report;
    report.formula = std::string(text);
    report.syntax_error = parsed.error->error_class();
    report.error_messages.push_back(std::string(to_string(parsed.error->error_class())) + ": " +
                                    parsed.error->what());
    return report;
  }
  ValidationReport report = validate(*parsed.expression, table, policy);
  report.formula = std::string(text);
  return report;
}

FormulaClass classify(const ValidationReport& report) {
  if (!report.syntactic_ok) {
    switch (report.syntax_error.value_or(ErrorClass::kUnexpectedToken)) {
      case ErrorClass::kUnbalancedParenthesis: return FormulaClass::kUnbalancedParenthesis;
      case ErrorClass::kArity: return FormulaClass::kArityOrFunction;
      default: return FormulaClass::kOtherSyntax;
    }
  }
  if (report.has_flag(FlagKind::kUndefinedSymbol)) return FormulaClass::kUndefinedSymbol;
  if (report.has_flag(FlagKind::kArityError)) return FormulaClass::kArityOrFunction;
  return FormulaClass::kValid;
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  j = nlohmann::json::object();
  j["formula"] = report.formula;
  j["syntactic_ok"] = report.syntactic_ok;
  j["syntax_error"] = report.syntax_error ? nlohmann::json(std::string(to_string(*report.syntax_error)))
                                          : nlohmann::json(nullptr);
  j["classification"] = std::string(to_string(classify(report)));
  auto flags = nlohmann::json::array();
  for (const auto& f : report.semantic_flags) {
    flags.push_back({{"kind", std::string(to_string(f.kind))},
                     {"detail", f.detail},
                     {"span", {f.span.begin, f.span.end}}});
  }
  j["semantic_flags"] = std::move(flags);
  j["error_messages"] = report.error_messages;
}

}  // namespace modwave::dsl
