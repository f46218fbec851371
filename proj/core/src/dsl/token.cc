#include "modwave/dsl/token.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <string>

namespace modwave::dsl {
namespace {

constexpr std::array<std::string_view, 4> kFunctionKeywords = {"sin", "cos", "integral",
                                                               "sum"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool ends_value(TokenKind kind) {
  return kind == TokenKind::kNumber || kind == TokenKind::kIdentifier ||
         kind == TokenKind::kSignal || kind == TokenKind::kRParen;
}

bool starts_value(TokenKind kind) {
  return kind == TokenKind::kNumber || kind == TokenKind::kIdentifier ||
         kind == TokenKind::kSignal || kind == TokenKind::kFunction ||
         kind == TokenKind::kLParen;
}

// Length in bytes of the UTF-8 sequence introduced by `lead`.
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

class Lexer {
 public:
  Lexer(std::string_view text, const LexOptions& options) : text_(text), options_(options) {}

  std::vector<Token> run() {
    if (text_.size() > options_.max_chars) {
      throw SyntaxError(ErrorClass::kTooLong, {options_.max_chars, text_.size()},
                        "formula exceeds " + std::to_string(options_.max_chars) + " characters");
    }
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else if (is_digit(c) || (c == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))) {
        lex_number();
      } else if (is_ident_start(c)) {
        lex_word();
      } else {
        lex_punct(c);
      }
    }
    if (tokens_.empty()) {
      throw SyntaxError(ErrorClass::kEmpty, {0, text_.size()}, "empty formula");
    }
    if (tokens_.size() > options_.max_tokens) {
      const auto& t = tokens_[options_.max_tokens];
      throw SyntaxError(ErrorClass::kTooLong, t.span,
                        "formula exceeds " + std::to_string(options_.max_tokens) + " tokens");
    }
    return std::move(tokens_);
  }

 private:
  void push(TokenKind kind, std::size_t begin, std::size_t end, double value = 0.0) {
    if (!tokens_.empty() && ends_value(tokens_.back().kind) && starts_value(kind)) {
      Token star;
      star.kind = TokenKind::kStar;
      star.text = "*";
      star.span = {begin, begin};
      star.implicit = true;
      tokens_.push_back(std::move(star));
    }
    Token tok;
    tok.kind = kind;
    tok.text = std::string(text_.substr(begin, end - begin));
    tok.value = value;
    tok.span = {begin, end};
    tokens_.push_back(std::move(tok));
  }

  void lex_number() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && is_digit(text_[look])) {
        pos_ = look;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      }
    }
    const std::string lexeme(text_.substr(begin, pos_ - begin));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    if (ec != std::errc() || ptr != lexeme.data() + lexeme.size()) {
      throw SyntaxError(ErrorClass::kLexical, {begin, pos_}, "malformed number '" + lexeme + "'");
    }
    push(TokenKind::kNumber, begin, pos_, value);
  }

  void lex_word() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view word = text_.substr(begin, pos_ - begin);
    if (is_function_keyword(word)) {
      push(TokenKind::kFunction, begin, pos_);
      return;
    }
    // `name(t)` with no whitespace names a time-indexed stream.
    if (text_.substr(pos_, 3) == "(t)") {
      pos_ += 3;
      push(TokenKind::kSignal, begin, pos_);
      return;
    }
    push(TokenKind::kIdentifier, begin, pos_);
  }

  void lex_punct(char c) {
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::kPlus; break;
      case '-': kind = TokenKind::kMinus; break;
      case '*': kind = TokenKind::kStar; break;
      case '/': kind = TokenKind::kSlash; break;
      case '^': kind = TokenKind::kCaret; break;
      case '(': kind = TokenKind::kLParen; break;
      case ')': kind = TokenKind::kRParen; break;
      case ',': kind = TokenKind::kComma; break;
      default: {
        const std::size_t len =
            std::min(utf8_length(static_cast<unsigned char>(c)), text_.size() - pos_);
        throw SyntaxError(ErrorClass::kLexical, {pos_, pos_ + len},
                          "unexpected character '" + std::string(text_.substr(pos_, len)) +
                              "' at position " + std::to_string(pos_));
      }
    }
    push(kind, pos_, pos_ + 1);
    ++pos_;
  }

  std::string_view text_;
  LexOptions options_;
  std::size_t pos_ = 0;
  std::vector<Token> tokens_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kNumber: return "number";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kSignal: return "signal";
    case TokenKind::kFunction: return "function";
    case TokenKind::kPlus: return "+";
    case TokenKind::kMinus: return "-";
    case TokenKind::kStar: return "*";
    case TokenKind::kSlash: return "/";
    case TokenKind::kCaret: return "^";
    case TokenKind::kLParen: return "(";
    case TokenKind::kRParen: return ")";
    case TokenKind::kComma: return ",";
  }
  return "?";
}

std::string_view to_string(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::kLexical: return "lexical";
    case ErrorClass::kUnbalancedParenthesis: return "unbalanced-parenthesis";
    case ErrorClass::kUnexpectedToken: return "unexpected-token";
    case ErrorClass::kArity: return "arity-error";
    case ErrorClass::kTooLong: return "too-long";
    case ErrorClass::kTooDeep: return "too-deep";
    case ErrorClass::kEmpty: return "empty";
  }
  return "?";
}

SyntaxError::SyntaxError(ErrorClass cls, SourceSpan span, const std::string& message)
    : std::runtime_error(message), class_(cls), span_(span) {}

bool is_function_keyword(std::string_view word) {
  for (auto kw : kFunctionKeywords) {
    if (kw == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text, const LexOptions& options) {
  return Lexer(text, options).run();
}

bool same_lexemes(const std::vector<Token>& a, const std::vector<Token>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].kind != b[i].kind || a[i].text != b[i].text) return false;
  }
  return true;
}

}  // namespace modwave::dsl
