#include "modwave/genlab/grammar.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "modwave/rng.h"

namespace modwave::genlab {
namespace {

constexpr std::size_t kUnproductive = std::numeric_limits<std::size_t>::max();

// Number of whitespace-separated pieces in a terminal fragment.
std::size_t piece_count(const std::string& text) {
  std::istringstream in(text);
  std::string piece;
  std::size_t n = 0;
  while (in >> piece) ++n;
  return n;
}

class Sampler {
 public:
  Sampler(const GrammarConfig& config) : config_(config), rng_(config.seed) {}

  std::string run() {
    std::string out;
    expand(Grammar::kStart, 0, out);
    return normalize(out);
  }

 private:
  void expand(const std::string& nonterminal, int depth, std::string& out) {
    const auto& alts = config_.grammar.alternatives(nonterminal);
    const bool exhausted = depth >= config_.max_depth || tokens_ >= config_.max_tokens;
    const std::size_t pick = exhausted ? config_.grammar.fallback(nonterminal) : choose(alts);
    const std::string& text = alts[pick].production;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t open = text.find('<', pos);
      const std::size_t close = open == std::string::npos ? std::string::npos : text.find('>', open);
      if (close == std::string::npos) {
        emit(text.substr(pos), out);
        break;
      }
      emit(text.substr(pos, open - pos), out);
      expand(text.substr(open + 1, close - open - 1), depth + 1, out);
      pos = close + 1;
    }
  }

  std::size_t choose(const std::vector<Alternative>& alts) {
    if (alts.size() == 1) return 0;
    if (config_.temperature <= kGreedyTemperature) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < alts.size(); ++k) {
        if (alts[k].weight > alts[best].weight) best = k;
      }
      return best;
    }
    const auto p = selection_probabilities(alts, config_.temperature);
    const double u = rng_.uniform();
    double cum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      cum += p[k];
      if (u < cum) return k;
    }
    return p.size() - 1;
  }

  void emit(const std::string& fragment, std::string& out) {
    tokens_ += piece_count(fragment);
    out += fragment;
  }

  // Collapses runs of whitespace and trims the ends.
  static std::string normalize(const std::string& text) {
    std::string out;
    bool space = false;
    for (char c : text) {
      if (c == ' ' || c == '\t' || c == '\n') {
        space = !out.empty();
        continue;
      }
      if (space) out += ' ';
      space = false;
      out += c;
    }
    return out;
  }

  const GrammarConfig& config_;
  Rng rng_;
  std::size_t tokens_ = 0;
};

}  // namespace

std::vector<std::string> references(const std::string& production) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = production.find('<', pos)) != std::string::npos) {
    const std::size_t close = production.find('>', pos);
    if (close == std::string::npos) break;
    out.push_back(production.substr(pos + 1, close - pos - 1));
    pos = close + 1;
  }
  return out;
}

Grammar::Grammar(std::map<std::string, std::vector<Alternative>> rules) : rules_(std::move(rules)) { prepare(); }

const std::vector<Alternative>& Grammar::alternatives(const std::string& nonterminal) const {
  const auto it = rules_.find(nonterminal);
  if (it == rules_.end()) throw GrammarError("unknown nonterminal <" + nonterminal + ">");
  return it->second;
}

void Grammar::prepare() {
  if (!rules_.count(kStart)) throw GrammarError(std::string("grammar has no <") + kStart + "> rule");
  for (const auto& [name, alts] : rules_) {
    if (alts.empty()) throw GrammarError("<" + name + "> has no alternatives");
    for (const auto& alt : alts) {
      if (!(alt.weight > 0.0) || !std::isfinite(alt.weight)) {
        throw GrammarError("<" + name + "> has a non-positive weight");
      }
      for (const auto& ref : references(alt.production)) {
        if (!rules_.count(ref)) throw GrammarError("<" + name + "> refers to undefined <" + ref + ">");
      }
    }
  }
  // Shortest derivation height per nonterminal, by fixed-point iteration.
  std::map<std::string, std::size_t> height;
  for (const auto& entry : rules_) height[entry.first] = kUnproductive;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [name, alts] : rules_) {
      for (std::size_t k = 0; k < alts.size(); ++k) {
        std::size_t h = 1;
        for (const auto& ref : references(alts[k].production)) {
          h = height[ref] == kUnproductive ? kUnproductive : std::max(h, height[ref] + 1);
          if (h == kUnproductive) break;
        }
        if (h < height[name]) {
          height[name] = h;
          changed = true;
        }
      }
    }
  }
  fallback_.clear();
  for (const auto& [name, alts] : rules_) {
    if (height[name] == kUnproductive) throw GrammarError("<" + name + "> never derives a finite string");
    std::size_t best = 0, best_h = kUnproductive;
    for (std::size_t k = 0; k < alts.size(); ++k) {
      std::size_t h = 1;
      for (const auto& ref : references(alts[k].production)) {
        h = height[ref] == kUnproductive ? kUnproductive : std::max(h, height[ref] + 1);
        if (h == kUnproductive) break;
      }
      if (h < best_h || (h == best_h && alts[k].weight > alts[best].weight)) {
        best = k;
        best_h = h;
      }
    }
    fallback_[name] = best;
  }
}

Grammar Grammar::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw GrammarError("grammar JSON must be an object of nonterminals");
  std::map<std::string, std::vector<Alternative>> rules;
  for (const auto& [name, alts] : j.items()) {
    if (!alts.is_array()) throw GrammarError("<" + name + "> must map to an array of alternatives");
    for (const auto& a : alts) {
      if (!a.is_object() || !a.contains("production") || !a["production"].is_string()) {
        throw GrammarError("<" + name + "> alternative needs a string 'production'");
      }
      Alternative alt;
      alt.production = a["production"].get<std::string>();
      if (a.contains("weight")) {
        if (!a["weight"].is_number()) throw GrammarError("<" + name + "> weight must be a number");
        alt.weight = a["weight"].get<double>();
      }
      rules[name].push_back(std::move(alt));
    }
  }
  return Grammar(std::move(rules));
}

Grammar Grammar::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError("cannot open grammar file " + path);
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw GrammarError("grammar file " + path + ": " + e.what());
  }
}

nlohmann::json Grammar::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, alts] : rules_) {
    auto arr = nlohmann::json::array();
    for (const auto& a : alts) arr.push_back({{"production", a.production}, {"weight", a.weight}});
    j[name] = std::move(arr);
  }
  return j;
}

void GrammarConfig::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw GrammarError("temperature must be positive");
  if (max_tokens == 0) throw GrammarError("max_tokens must be positive");
  if (max_depth < 1) throw GrammarError("max_depth must be at least 1");
}

std::vector<double> selection_probabilities(const std::vector<Alternative>& alternatives, double temperature) {
  if (alternatives.empty()) throw GrammarError("no alternatives to choose from");
  if (!(temperature > 0.0)) throw GrammarError("temperature must be positive");
  std::vector<double> logits(alternatives.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < logits.size(); ++k) {
    logits[k] = std::log(alternatives[k].weight) / temperature;
    top = std::max(top, logits[k]);
  }
  double total = 0.0;
  for (double& l : logits) {
    l = std::exp(l - top);
    total += l;
  }
  for (double& l : logits) l /= total;
  return logits;
}

std::string sample_formula(const GrammarConfig& config) {
  config.validate();
  return Sampler(config).run();
}

}  // namespace modwave::genlab
