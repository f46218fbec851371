#ifndef MODWAVE_TOOLS_EXPERIMENT_CONFIG_H_
#define MODWAVE_TOOLS_EXPERIMENT_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "modwave/channel/channel.h"
#include "modwave/costmodel/cost.h"
#include "modwave/dsl/corpus.h"
#include "modwave/genlab/grammar.h"
#include "modwave/metrics/report.h"
#include "modwave/synth/scheme.h"

namespace modwave::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricsParams {
  metrics::MetricsOptions options;
  std::size_t spectrogram_fft = 256;
  std::size_t spectrogram_hop = 128;
};

struct GeneratorParams {
  genlab::GrammarConfig grammar;
  std::string endpoint;
  int timeout_ms = 5000;
  int retries = 1;
  std::size_t concurrency = 4;
};

// One experiment: everything a command needs, with paths already resolved
// against the config file's directory. The master seed drives the scheme
// bits, the channel and the grammar sampler.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<std::filesystem::path> corpus;
  std::vector<std::string> schemes;
  synth::SchemeConfig scheme_defaults;
  channel::ChannelConfig channel;
  MetricsParams metrics;
  GeneratorParams generator;
  std::optional<costmodel::CostInputs> cost;
  std::string cost_formula;  // corpus id whose op count sets n_ops
  std::filesystem::path output_dir = "modwave-out";

  void set_seed(std::uint64_t seed);
};

// Bundled corpora and seed 1, used when no config file is given.
ExperimentConfig default_config();

// Checks the document against the published schema by hand (types, ranges,
// unknown keys, required seed) and that referenced files exist. Throws
// ConfigError with the JSON path of the problem.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

// All corpus entries, in file order. Throws ConfigError on unreadable or
// malformed files and on ids repeated across files.
std::vector<dsl::CorpusEntry> load_corpora(const std::vector<std::filesystem::path>& files);

// Scheme defaults with `name` applied; "formula:<id>" takes its text from
// `corpus`. Throws ConfigError for unknown names or ids.
synth::SchemeConfig resolve_scheme(const ExperimentConfig& config, const std::string& name,
                                   const std::vector<dsl::CorpusEntry>& corpus);

}  // namespace modwave::cli

#endif  // MODWAVE_TOOLS_EXPERIMENT_CONFIG_H_
