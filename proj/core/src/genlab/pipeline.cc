#include "modwave/genlab/pipeline.h"

#include <nlohmann/json.hpp>

#include "modwave/dsl/symbol_table.h"

namespace modwave::genlab {

double GenerationBatchReport::valid_fraction() const {
  return generated == 0 ? 0.0 : static_cast<double>(valid) / static_cast<double>(generated);
}

GenerationBatchReport validate_batch(const std::vector<GeneratedFormula>& formulas, const std::string& source_name) {
  const dsl::SymbolTable table = dsl::SymbolTable::standard();
  GenerationBatchReport report;
  report.source = source_name;
  report.requested = formulas.size();
  for (const auto& f : formulas) {
    BatchEntry entry;
    entry.formula = f;
    if (!f.has_text()) {
      ++report.source_errors;
      report.entries.push_back(std::move(entry));
      continue;
    }
    ++report.generated;
    entry.report = dsl::validate_text(f.text, table);
    entry.classification = dsl::classify(*entry.report);
    ++report.class_counts[*entry.classification];
    for (const auto& flag : entry.report->semantic_flags) ++report.flag_counts[flag.kind];
    if (*entry.classification == dsl::FormulaClass::kValid) ++report.valid;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

GenerationBatchReport generate_batch(std::size_t n, const GrammarConfig& config) {
  GrammarSource source(config);
  GenerationBatchReport report = validate_batch(source.generate(n), source.name());
  report.temperature = config.temperature;
  report.seed = config.seed;
  return report;
}

PipelineResult pipeline_run(FormulaSource& source, std::size_t n, const channel::ChannelConfig& channel,
                            const synth::SchemeConfig& scheme_template, const metrics::MetricsOptions& options) {
  PipelineResult result;
  result.batch = validate_batch(source.generate(n), source.name());
  std::vector<synth::SchemeConfig> schemes;
  for (const auto& entry : result.batch.entries) {
    if (!entry.classification || *entry.classification != dsl::FormulaClass::kValid) continue;
    synth::SchemeConfig c = scheme_template;
    c.kind = synth::SchemeKind::kFormula;
    c.formula = entry.formula.text;
    c.formula_id = entry.formula.id;
    schemes.push_back(std::move(c));
  }
  result.rows = metrics::compare(schemes, channel, options);
  return result;
}

void to_json(nlohmann::json& j, const GenerationBatchReport& r) {
  j = nlohmann::json::object();
  j["source"] = r.source;
  j["temperature"] = r.temperature ? nlohmann::json(*r.temperature) : nlohmann::json(nullptr);
  j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
  j["requested"] = r.requested;
  j["generated"] = r.generated;
  j["valid"] = r.valid;
  j["source_errors"] = r.source_errors;
  auto classes = nlohmann::json::object();
  for (const auto& [cls, count] : r.class_counts) classes[std::string(dsl::to_string(cls))] = count;
  j["classes"] = std::move(classes);
  auto flags = nlohmann::json::object();
  for (const auto& [kind, count] : r.flag_counts) flags[std::string(dsl::to_string(kind))] = count;
  j["semantic_flags"] = std::move(flags);
  auto entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json item = {{"index", e.formula.index}, {"id", e.formula.id}};
    if (e.formula.has_text()) {
      item["formula"] = e.formula.text;
      item["classification"] = std::string(dsl::to_string(*e.classification));
      item["validation"] = *e.report;
    } else {
      item["source_error"] = {{"kind", std::string(to_string(*e.formula.error_kind))}, {"message", e.formula.error}};
    }
    entries.push_back(std::move(item));
  }
  j["entries"] = std::move(entries);
}

nlohmann::json pipeline_json(const PipelineResult& result) {
  return {{"batch", result.batch}, {"metrics", metrics::compare_json(result.rows)}};
}

}  // namespace modwave::genlab
