#ifndef MODWAVE_GENLAB_PIPELINE_H_
#define MODWAVE_GENLAB_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "modwave/channel/channel.h"
#include "modwave/dsl/validate.h"
#include "modwave/genlab/source.h"
#include "modwave/metrics/report.h"
#include "modwave/synth/scheme.h"

namespace modwave::genlab {

struct BatchEntry {
  GeneratedFormula formula;
  // Present when the source produced text.
  std::optional<dsl::ValidationReport> report;
  std::optional<dsl::FormulaClass> classification;
};

// Validity statistics of one generated batch. `generated` counts
// candidates with text; source failures are counted separately.
struct GenerationBatchReport {
  std::string source;
  std::optional<double> temperature;
  std::optional<std::uint64_t> seed;
  std::size_t requested = 0;
  std::size_t generated = 0;
  std::size_t valid = 0;
  std::size_t source_errors = 0;
  std::map<dsl::FormulaClass, std::size_t> class_counts;
  std::map<dsl::FlagKind, std::size_t> flag_counts;
  std::vector<BatchEntry> entries;

  double valid_fraction() const;
};

// Validates every candidate with the standard symbol table.
GenerationBatchReport validate_batch(const std::vector<GeneratedFormula>& formulas, const std::string& source_name);

// n grammar samples, sample i seeded by derive_seed(config.seed, i).
GenerationBatchReport generate_batch(std::size_t n, const GrammarConfig& config);

struct PipelineResult {
  GenerationBatchReport batch;
  std::vector<metrics::MetricsReport> rows;  // one per valid formula
};

// generate -> validate -> evaluate. Valid formulas become formula schemes
// built from `scheme_template` (its `base` field selects the symbol
// streams) and are compared through `channel`.
PipelineResult pipeline_run(FormulaSource& source, std::size_t n, const channel::ChannelConfig& channel,
                            const synth::SchemeConfig& scheme_template, const metrics::MetricsOptions& options = {});

void to_json(nlohmann::json& j, const GenerationBatchReport& report);
nlohmann::json pipeline_json(const PipelineResult& result);

}  // namespace modwave::genlab

#endif  // MODWAVE_GENLAB_PIPELINE_H_
