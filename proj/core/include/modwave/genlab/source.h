#ifndef MODWAVE_GENLAB_SOURCE_H_
#define MODWAVE_GENLAB_SOURCE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modwave/dsl/corpus.h"
#include "modwave/genlab/grammar.h"

namespace modwave::genlab {

enum class SourceErrorKind { kNetwork, kTimeout, kHttpStatus, kMalformedResponse };

std::string_view to_string(SourceErrorKind kind);

// A failure of a generation source, as opposed to an invalid formula.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(SourceErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  SourceErrorKind kind() const { return kind_; }

 private:
  SourceErrorKind kind_;
};

// One candidate: either formula text or the source error that prevented it.
struct GeneratedFormula {
  std::size_t index = 0;
  std::string id;
  std::string text;
  std::optional<SourceErrorKind> error_kind;
  std::string error;

  bool has_text() const { return !error_kind.has_value(); }
};

class FormulaSource {
 public:
  virtual ~FormulaSource() = default;
  virtual std::string name() const = 0;
  // Up to n candidates, ordered by index. Never throws for per-candidate
  // source failures; they are returned in-place.
  virtual std::vector<GeneratedFormula> generate(std::size_t n) = 0;
};

// Sample i uses seed derive_seed(config.seed, i). Ids G001, G002, ...
class GrammarSource : public FormulaSource {
 public:
  explicit GrammarSource(GrammarConfig config);
  std::string name() const override { return "grammar"; }
  std::vector<GeneratedFormula> generate(std::size_t n) override;

 private:
  GrammarConfig config_;
};

// Replays corpus entries, first n in file order, keeping their ids.
class FixtureSource : public FormulaSource {
 public:
  explicit FixtureSource(std::vector<dsl::CorpusEntry> entries) : entries_(std::move(entries)) {}
  std::string name() const override { return "fixture"; }
  std::size_t size() const { return entries_.size(); }
  std::vector<GeneratedFormula> generate(std::size_t n) override;

 private:
  std::vector<dsl::CorpusEntry> entries_;
};

struct ExternalConfig {
  // http://host[:port]/path
  std::string endpoint;
  double temperature = 0.8;
  int max_tokens = 128;
  int timeout_ms = 5000;
  int retries = 1;
  std::size_t concurrency = 4;
  // Seed formulas sent as prompts, cycled in order.
  std::vector<std::string> prompts;
};

// POSTs {"prompt", "temperature", "max_tokens"} as JSON and expects a JSON
// object with a string "text". Connection failures and timeouts are retried
// config.retries times. Throws GenerationError.
std::string external_generate(const ExternalConfig& config, const std::string& prompt);

// Runs external_generate for n prompts with at most config.concurrency
// requests in flight. Ids X001, X002, ...
class ExternalSource : public FormulaSource {
 public:
  explicit ExternalSource(ExternalConfig config);
  std::string name() const override { return "external"; }
  std::vector<GeneratedFormula> generate(std::size_t n) override;

 private:
  ExternalConfig config_;
};

}  // namespace modwave::genlab

#endif  // MODWAVE_GENLAB_SOURCE_H_
