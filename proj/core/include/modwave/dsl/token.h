#ifndef MODWAVE_DSL_TOKEN_H_
#define MODWAVE_DSL_TOKEN_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modwave::dsl {

// Half-open byte range [begin, end) into the formula text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class TokenKind {
  kNumber,
  kIdentifier,
  kSignal,  // time-indexed stream written as `name(t)`, e.g. `I(t)`
  kFunction,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kComma,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kNumber;
  std::string text;
  double value = 0.0;  // numeric value for kNumber
  SourceSpan span;
  bool implicit = false;  // multiplication inferred from juxtaposition
};

// Failure classes shared by the lexer and the parser. The generation
// pipeline folds these into the coarser taxonomy in validate.h.
enum class ErrorClass {
  kLexical,
  kUnbalancedParenthesis,
  kUnexpectedToken,
  kArity,
  kTooLong,
  kTooDeep,
  kEmpty,
};

std::string_view to_string(ErrorClass cls);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(ErrorClass cls, SourceSpan span, const std::string& message);

  ErrorClass error_class() const { return class_; }
  SourceSpan span() const { return span_; }

 private:
  ErrorClass class_;
  SourceSpan span_;
};

struct LexOptions {
  std::size_t max_chars = 512;
  std::size_t max_tokens = 128;
};

// Splits `text` into tokens. Juxtaposed values ("2 pi f_c t") get an
// explicit multiplication token with `implicit = true` and a zero-width
// span at the start of the right operand. Throws SyntaxError.
std::vector<Token> tokenize(std::string_view text, const LexOptions& options = {});

// True when both sequences have the same kinds and lexemes, ignoring
// spans and whether multiplications were implicit.
bool same_lexemes(const std::vector<Token>& a, const std::vector<Token>& b);

bool is_function_keyword(std::string_view word);

}  // namespace modwave::dsl

#endif  // MODWAVE_DSL_TOKEN_H_
