#ifndef MODWAVE_GENLAB_GRAMMAR_H_
#define MODWAVE_GENLAB_GRAMMAR_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace modwave::genlab {

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One weighted right-hand side. `production` is DSL text in which
// `<name>` refers to another nonterminal.
struct Alternative {
  std::string production;
  double weight = 1.0;
};

// Context-free weighted grammar over the formula DSL. Expansion starts at
// the nonterminal `formula`.
class Grammar {
 public:
  static constexpr const char* kStart = "formula";

  Grammar() = default;
  explicit Grammar(std::map<std::string, std::vector<Alternative>> rules);

  // JSON {nonterminal: [{"production": ..., "weight": ...}, ...]}.
  static Grammar from_json(const nlohmann::json& j);
  static Grammar from_file(const std::string& path);
  // The built-in grammar: valid passband formulas plus low-weight
  // error-injection alternatives at the top rule.
  static Grammar standard();

  const std::map<std::string, std::vector<Alternative>>& rules() const { return rules_; }
  const std::vector<Alternative>& alternatives(const std::string& nonterminal) const;

  // Index of the alternative used once the depth or token budget is spent:
  // the one with the shortest finite derivation, highest weight on ties.
  std::size_t fallback(const std::string& nonterminal) const { return fallback_.at(nonterminal); }

  nlohmann::json to_json() const;

 private:
  // Checks the start symbol, references, weights and productivity, and
  // computes the fallback table. Throws GrammarError.
  void prepare();

  std::map<std::string, std::vector<Alternative>> rules_;
  std::map<std::string, std::size_t> fallback_;
};

// References `<name>` in a production, in order of appearance.
std::vector<std::string> references(const std::string& production);

struct GrammarConfig {
  Grammar grammar = Grammar::standard();
  double temperature = 0.8;
  // Budget in emitted terminal pieces (whitespace-separated fragments of
  // production text).
  std::size_t max_tokens = 128;
  int max_depth = 8;
  std::uint64_t seed = 1;

  // Throws GrammarError for a non-positive temperature or budget.
  void validate() const;
};

// Below this temperature every choice is the first highest-weight
// alternative.
inline constexpr double kGreedyTemperature = 1e-3;

// Selection probabilities proportional to weight^(1/T), computed in the
// log domain.
std::vector<double> selection_probabilities(const std::vector<Alternative>& alternatives, double temperature);

// Leftmost depth-first expansion from `formula` with seed config.seed.
std::string sample_formula(const GrammarConfig& config);

}  // namespace modwave::genlab

#endif  // MODWAVE_GENLAB_GRAMMAR_H_
