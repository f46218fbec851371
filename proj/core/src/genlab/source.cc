#include "modwave/genlab/source.h"

#include <atomic>
#include <cstdio>
#include <thread>

#include "modwave/rng.h"

namespace modwave::genlab {
namespace {

std::string numbered_id(char prefix, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%03zu", prefix, index + 1);
  return buf;
}

}  // namespace

std::string_view to_string(SourceErrorKind kind) {
  switch (kind) {
    case SourceErrorKind::kNetwork: return "network-error";
    case SourceErrorKind::kTimeout: return "network-timeout";
    case SourceErrorKind::kHttpStatus: return "non-success-status";
    case SourceErrorKind::kMalformedResponse: return "malformed-response";
  }
  return "?";
}

GrammarSource::GrammarSource(GrammarConfig config) : config_(std::move(config)) { config_.validate(); }

std::vector<GeneratedFormula> GrammarSource::generate(std::size_t n) {
  std::vector<GeneratedFormula> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    GrammarConfig c = config_;
    c.seed = derive_seed(config_.seed, i);
    out[i].index = i;
    out[i].id = numbered_id('G', i);
    out[i].text = sample_formula(c);
  }
  return out;
}

std::vector<GeneratedFormula> FixtureSource::generate(std::size_t n) {
  std::vector<GeneratedFormula> out;
  for (std::size_t i = 0; i < std::min(n, entries_.size()); ++i) {
    GeneratedFormula g;
    g.index = i;
    g.id = entries_[i].id;
    g.text = entries_[i].formula;
    out.push_back(std::move(g));
  }
  return out;
}

ExternalSource::ExternalSource(ExternalConfig config) : config_(std::move(config)) {
  if (config_.prompts.empty()) throw GenerationError(SourceErrorKind::kMalformedResponse, "external source needs prompts");
  if (config_.concurrency == 0) config_.concurrency = 1;
}

std::vector<GeneratedFormula> ExternalSource::generate(std::size_t n) {
  std::vector<GeneratedFormula> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      GeneratedFormula& g = out[i];
      g.index = i;
      g.id = numbered_id('X', i);
      try {
        g.text = external_generate(config_, config_.prompts[i % config_.prompts.size()]);
      } catch (const GenerationError& e) {
        g.error_kind = e.kind();
        g.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t threads = std::min(config_.concurrency, std::max<std::size_t>(n, 1));
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace modwave::genlab
