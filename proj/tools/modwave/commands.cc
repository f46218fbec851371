#include "commands.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiment_config.h"
#include "modwave/costmodel/cost.h"
#include "modwave/dsl/symbol_table.h"
#include "modwave/dsl/validate.h"
#include "modwave/genlab/pipeline.h"
#include "modwave/genlab/source.h"
#include "modwave/metrics/receiver.h"
#include "modwave/metrics/report.h"
#include "modwave/metrics/spectrum.h"
#include "modwave/synth/modulate.h"

namespace modwave::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Options shared by the subcommands.
struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::vector<std::string> corpus;
};

ExperimentConfig load(const Common& common) {
  ExperimentConfig config = common.config_path.empty() ? default_config() : load_config(common.config_path);
  if (common.seed) config.set_seed(*common.seed);
  if (!common.corpus.empty()) {
    config.corpus.clear();
    for (const auto& c : common.corpus) {
      if (!fs::is_regular_file(c)) throw ConfigError("corpus file not found: " + c);
      config.corpus.emplace_back(c);
    }
  }
  if (!common.out_dir.empty()) config.output_dir = common.out_dir;
  return config;
}

// Writes `text` to dir/name, creating dir. One writer per path.
void write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (dir / name).string());
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- validate ----------------------------------------------------------------------

int cmd_validate(const Common& common, std::ostream& out) {
  const ExperimentConfig config = load(common);
  if (config.corpus.empty()) throw ConfigError("no corpus given (--corpus or config 'corpus')");
  const auto table = dsl::SymbolTable::standard();
  std::size_t total = 0, syntactic = 0, flagged = 0, flags = 0;
  json entries = json::array();
  for (const auto& file : config.corpus) {
    for (const auto& e : load_corpora({file})) {
      const auto report = dsl::validate_text(e.formula, table);
      ++total;
      syntactic += report.syntactic_ok ? 1 : 0;
      flags += report.semantic_flags.size();
      flagged += report.semantic_flags.empty() ? 0 : 1;
      std::string line = e.id + "  " + std::string(dsl::to_string(dsl::classify(report)));
      for (const auto& f : report.semantic_flags) line += "  [" + std::string(dsl::to_string(f.kind)) + ": " + f.detail + "]";
      if (!report.syntactic_ok && !report.error_messages.empty()) line += "  " + report.error_messages.front();
      out << line << '\n';
      entries.push_back({{"file", file.filename().string()}, {"id", e.id}, {"name", e.name}, {"report", report}});
    }
  }
  out << syntactic << "/" << total << " syntactically valid, " << flags << " semantic flag(s) on " << flagged
      << " formula(s)\n";
  if (!common.out_dir.empty()) {
    const json summary = {{"total", total}, {"syntactically_valid", syntactic}, {"semantic_flags", flags}};
    write_file(config.output_dir, "validation.json", dump({{"summary", summary}, {"entries", entries}}));
  }
  return syntactic == total ? kExitOk : kExitValidation;
}

// ---- eval --------------------------------------------------------------------------

json config_echo(const ExperimentConfig& config, const synth::SchemeConfig& scheme) {
  const auto& w = config.metrics.options.welch;
  return {{"seed", config.seed},
          {"scheme", scheme},
          {"channel", config.channel},
          {"metrics",
           {{"segment_length", w.segment_length},
            {"overlap_fraction", w.overlap_fraction},
            {"window", std::string(metrics::window_name(w.window))},
            {"obw_fraction", config.metrics.options.obw_fraction}}}};
}

std::string format_row(const metrics::MetricsReport& r) {
  std::ostringstream s;
  s << r.label << ":";
  char buf[96];
  if (r.measured_snr_db) {
    std::snprintf(buf, sizeof buf, " snr %.2f dB", *r.measured_snr_db);
    s << buf;
  }
  if (r.ber) {
    std::snprintf(buf, sizeof buf, ", ber %.6f (%zu/%zu)", *r.ber, r.bit_errors, r.bits);
    s << buf;
  }
  if (r.occupied_bandwidth_hz) {
    std::snprintf(buf, sizeof buf, ", bandwidth %.2f Hz", *r.occupied_bandwidth_hz);
    s << buf;
  }
  if (r.spectral_efficiency) {
    std::snprintf(buf, sizeof buf, ", eta %.4f bit/s/Hz", *r.spectral_efficiency);
    s << buf;
  }
  if (r.guard_count) s << ", guarded divisions " << r.guard_count;
  if (!r.ok()) s << " error: " << r.error;
  return s.str();
}

int cmd_eval(const Common& common, const std::string& scheme_flag, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = load(common);
  std::string name = scheme_flag;
  if (name.empty()) {
    if (config.schemes.empty()) throw ConfigError("no scheme given (--scheme or config 'schemes')");
    name = config.schemes.front();
  }
  const auto corpus = load_corpora(config.corpus);
  const synth::SchemeConfig scheme = resolve_scheme(config, name, corpus);

  metrics::MetricsOptions opts = config.metrics.options;
  opts.keep_artifacts = true;
  const metrics::MetricsReport row = metrics::analyze(scheme, config.channel, opts);
  out << format_row(row) << '\n';

  json report = config_echo(config, scheme);
  report["report"] = row;
  if (config.cost) {
    costmodel::CostInputs cost = *config.cost;
    if (scheme.kind == synth::SchemeKind::kFormula) {
      cost.n_ops = costmodel::waveform_ops(dsl::parse(scheme.formula), scheme.sample_count());
    }
    report["cost"] = costmodel::cost_report(cost);
  }
  if (!row.ok()) {
    err << "error: " << row.error << '\n';
    write_file(config.output_dir, "report.json", dump(report));
    return kExitValidation;
  }

  // The received waveform is regenerated deterministically for the
  // spectrogram.
  const auto clean = synth::normalize_power(synth::modulate(scheme));
  const auto received = channel::transmit(clean, config.channel).received;
  std::ostringstream psd, spec, constellation;
  metrics::write_psd_csv(psd, *row.psd);
  metrics::write_spectrogram_csv(
      spec, metrics::spectrogram(received, config.metrics.spectrogram_fft, config.metrics.spectrogram_hop));
  json artifacts = {{"psd", "psd.csv"}, {"spectrogram", "spectrogram.csv"}};
  write_file(config.output_dir, "psd.csv", psd.str());
  write_file(config.output_dir, "spectrogram.csv", spec.str());
  if (!synth::is_analog(scheme.kind)) {
    metrics::write_constellation_csv(constellation, row.constellation);
    write_file(config.output_dir, "constellation.csv", constellation.str());
    artifacts["constellation"] = "constellation.csv";
  }
  report["artifacts"] = artifacts;
  write_file(config.output_dir, "report.json", dump(report));
  return kExitOk;
}

// ---- compare -----------------------------------------------------------------------

int cmd_compare(const Common& common, const std::vector<std::string>& scheme_flags, std::ostream& out,
                std::ostream& err) {
  ExperimentConfig config = load(common);
  if (!scheme_flags.empty()) config.schemes = scheme_flags;
  if (config.schemes.size() < 2) {
    err << "error: compare needs at least two schemes\n";
    return kExitConfig;
  }
  const auto corpus = load_corpora(config.corpus);
  std::vector<synth::SchemeConfig> schemes;
  for (const auto& name : config.schemes) schemes.push_back(resolve_scheme(config, name, corpus));
  const auto rows = metrics::compare(schemes, config.channel, config.metrics.options);
  std::ostringstream csv;
  metrics::write_compare_csv(csv, rows);
  out << csv.str();
  write_file(config.output_dir, "compare.csv", csv.str());
  json report = {{"seed", config.seed}, {"channel", config.channel}, {"rows", metrics::compare_json(rows)}};
  write_file(config.output_dir, "compare.json", dump(report));
  for (const auto& r : rows) {
    if (!r.ok()) err << "warning: " << r.label << ": " << r.error << '\n';
  }
  return kExitOk;
}

// ---- generate ----------------------------------------------------------------------

std::string corpus_csv(const std::vector<dsl::CorpusEntry>& entries) {
  std::ostringstream s;
  dsl::write_corpus(s, entries);
  return s.str();
}

int cmd_generate(const Common& common, std::size_t n, bool evaluate, const std::string& endpoint_flag,
                 const std::string& append_to, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load(common);
  std::string endpoint = endpoint_flag;
  if (endpoint.empty()) endpoint = config.generator.endpoint;
  if (endpoint.empty()) {
    if (const char* env = std::getenv("MODWAVE_GEN_ENDPOINT")) endpoint = env;
  }

  std::unique_ptr<genlab::FormulaSource> source;
  if (endpoint.empty()) {
    source = std::make_unique<genlab::GrammarSource>(config.generator.grammar);
  } else {
    genlab::ExternalConfig ext;
    ext.endpoint = endpoint;
    ext.temperature = config.generator.grammar.temperature;
    ext.max_tokens = static_cast<int>(config.generator.grammar.max_tokens);
    ext.timeout_ms = config.generator.timeout_ms;
    ext.retries = config.generator.retries;
    ext.concurrency = config.generator.concurrency;
    for (const auto& e : load_corpora(config.corpus)) ext.prompts.push_back(e.formula);
    if (ext.prompts.empty()) throw ConfigError("external generation needs a corpus of prompts");
    source = std::make_unique<genlab::ExternalSource>(std::move(ext));
  }

  genlab::PipelineResult result;
  if (evaluate) {
    result = genlab::pipeline_run(*source, n, config.channel, config.scheme_defaults, config.metrics.options);
  } else {
    result.batch = genlab::validate_batch(source->generate(n), source->name());
  }
  if (endpoint.empty()) {
    result.batch.temperature = config.generator.grammar.temperature;
    result.batch.seed = config.seed;
  }

  std::vector<dsl::CorpusEntry> valid;
  for (const auto& e : result.batch.entries) {
    if (e.classification && *e.classification == dsl::FormulaClass::kValid) {
      valid.push_back({e.formula.id, "generated by " + result.batch.source, e.formula.text});
    }
  }
  write_file(config.output_dir, "generated.csv", corpus_csv(valid));
  json report = {{"seed", config.seed}, {"batch", result.batch}};
  if (evaluate) {
    report["metrics"] = metrics::compare_json(result.rows);
    std::ostringstream csv;
    metrics::write_compare_csv(csv, result.rows);
    write_file(config.output_dir, "metrics.csv", csv.str());
  }
  write_file(config.output_dir, "batch.json", dump(report));

  if (!append_to.empty()) {
    std::vector<dsl::CorpusEntry> existing;
    if (fs::exists(append_to)) existing = load_corpora({append_to});
    std::set<std::string> ids;
    for (const auto& e : existing) ids.insert(e.id);
    for (const auto& e : valid) {
      if (ids.insert(e.id).second) existing.push_back(e);
    }
    std::ofstream f(append_to, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + append_to);
    f << corpus_csv(existing);
  }

  const auto& b = result.batch;
  out << b.generated << " generated, " << b.valid << " valid, " << b.source_errors << " source error(s)\n";
  for (const auto& [cls, count] : b.class_counts) out << "  " << dsl::to_string(cls) << ": " << count << '\n';
  for (const auto& r : result.rows) out << format_row(r) << '\n';
  if (b.source_errors > 0) {
    for (const auto& e : b.entries) {
      if (!e.formula.has_text()) {
        err << "source error (" << genlab::to_string(*e.formula.error_kind) << "): " << e.formula.error << '\n';
        break;
      }
    }
    return kExitExternal;
  }
  return kExitOk;
}

// ---- cost --------------------------------------------------------------------------

int cmd_cost(const Common& common, const std::string& formula_flag, std::ostream& out) {
  const ExperimentConfig config = load(common);
  if (!config.cost) throw ConfigError("config has no 'cost' inputs");
  costmodel::CostInputs inputs = *config.cost;
  const std::string id = formula_flag.empty() ? config.cost_formula : formula_flag;
  json report;
  if (!id.empty()) {
    const auto corpus = load_corpora(config.corpus);
    const auto* entry = dsl::find_entry(corpus, id);
    if (!entry) throw ConfigError("formula id '" + id + "' is not in the loaded corpora");
    const auto expr = dsl::parse(entry->formula);
    const std::size_t samples = config.scheme_defaults.sample_count();
    inputs.n_ops = costmodel::waveform_ops(expr, samples);
    report["n_ops_from"] = {{"formula", id}, {"op_count", dsl::op_count(expr)}, {"samples", samples}};
  }
  report["cost"] = costmodel::cost_report(inputs);
  out << dump(report);
  if (!common.out_dir.empty()) write_file(config.output_dir, "cost.json", dump(report));
  return kExitOk;
}

void add_common(CLI::App* cmd, Common& common, bool with_corpus = true) {
  cmd->add_option("--config", common.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--seed", common.seed, "Master seed, overrides the config");
  cmd->add_option("--out", common.out_dir, "Output directory");
  if (with_corpus) cmd->add_option("--corpus", common.corpus, "Corpus CSV files (id,name,formula)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"modwave: modulation formula synthesis, simulation and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "modwave 0.1.0");

  Common common;
  std::string scheme;
  std::vector<std::string> schemes;
  std::size_t n = 20;
  bool evaluate = false;
  std::string endpoint, append_to, formula;

  auto* validate = app.add_subcommand("validate", "Validate every formula of a corpus");
  add_common(validate, common);
  auto* eval = app.add_subcommand("eval", "Run one scheme through channel and metrics");
  add_common(eval, common);
  eval->add_option("--scheme", scheme, "Scheme name or formula:<id>");
  auto* compare = app.add_subcommand("compare", "Compare schemes under one channel");
  add_common(compare, common);
  compare->add_option("--scheme", schemes, "Scheme names (repeat or comma-separate)")->delimiter(',');
  auto* generate = app.add_subcommand("generate", "Generate and validate candidate formulas");
  add_common(generate, common);
  generate->add_option("--n", n, "Number of candidates")->check(CLI::NonNegativeNumber);
  generate->add_flag("--evaluate", evaluate, "Evaluate the valid formulas");
  generate->add_option("--endpoint", endpoint, "External generator URL (else MODWAVE_GEN_ENDPOINT)");
  generate->add_option("--append-to", append_to, "Append valid formulas to this corpus CSV");
  auto* cost = app.add_subcommand("cost", "Latency and power model");
  add_common(cost, common);
  cost->add_option("--formula", formula, "Corpus id whose op count sets n_ops");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*validate) return cmd_validate(common, out);
    if (*eval) return cmd_eval(common, scheme, out, err);
    if (*compare) return cmd_compare(common, schemes, out, err);
    if (*generate) return cmd_generate(common, n, evaluate, endpoint, append_to, out, err);
    if (*cost) return cmd_cost(common, formula, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace modwave::cli
