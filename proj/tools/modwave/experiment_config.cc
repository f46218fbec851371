#include "experiment_config.h"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "modwave/csv.h"
#include "modwave/rng.h"

#ifndef MODWAVE_DEFAULT_DATA_DIR
#define MODWAVE_DEFAULT_DATA_DIR "data"
#endif

namespace modwave::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "must be an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : keys) ok = ok || item.key() == k;
    if (!ok) fail(where, "unknown key '" + item.key() + "'");
  }
}

double get_number(const json& obj, const char* key, const std::string& where, double min, double max) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "must be a number");
  const double x = v.get<double>();
  if (!(x >= min && x <= max)) fail(where + "." + key, "out of range");
  return x;
}

long long get_integer(const json& obj, const char* key, const std::string& where, long long min) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "must be an integer");
  const long long x = v.get<long long>();
  if (x < min) fail(where + "." + key, "must be at least " + std::to_string(min));
  return x;
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "must be a string");
  return v.get<std::string>();
}

fs::path existing_file(const fs::path& base_dir, const std::string& p, const std::string& where) {
  const fs::path path = fs::path(p).is_absolute() ? fs::path(p) : base_dir / p;
  if (!fs::is_regular_file(path)) fail(where, "file not found: " + path.string());
  return path;
}

void parse_metrics(const json& m, MetricsParams& out) {
  allow_keys(m, "metrics",
             {"segment_length", "overlap_fraction", "window", "obw_fraction", "spectrogram_fft", "spectrogram_hop",
              "parallel"});
  if (m.contains("segment_length")) {
    out.options.welch.segment_length = static_cast<std::size_t>(get_integer(m, "segment_length", "metrics", 2));
  }
  if (m.contains("overlap_fraction")) {
    out.options.welch.overlap_fraction = get_number(m, "overlap_fraction", "metrics", 0.0, 0.9);
  }
  if (m.contains("window")) {
    try {
      out.options.welch.window = metrics::parse_window(get_string(m, "window", "metrics"));
    } catch (const metrics::MetricsError& e) {
      fail("metrics.window", e.what());
    }
  }
  if (m.contains("obw_fraction")) {
    out.options.obw_fraction = get_number(m, "obw_fraction", "metrics", 1e-9, 1.0 - 1e-9);
  }
  if (m.contains("spectrogram_fft")) {
    out.spectrogram_fft = static_cast<std::size_t>(get_integer(m, "spectrogram_fft", "metrics", 2));
  }
  if (m.contains("spectrogram_hop")) {
    out.spectrogram_hop = static_cast<std::size_t>(get_integer(m, "spectrogram_hop", "metrics", 1));
  }
  if (m.contains("parallel")) {
    if (!m["parallel"].is_boolean()) fail("metrics.parallel", "must be a boolean");
    out.options.parallel = m["parallel"].get<bool>();
  }
}

void parse_generator(const json& g, const fs::path& base_dir, GeneratorParams& out) {
  allow_keys(g, "generator",
             {"temperature", "max_tokens", "max_depth", "grammar", "endpoint", "timeout_ms", "retries", "concurrency"});
  if (g.contains("temperature")) out.grammar.temperature = get_number(g, "temperature", "generator", 1e-12, 1e6);
  if (g.contains("max_tokens")) {
    out.grammar.max_tokens = static_cast<std::size_t>(get_integer(g, "max_tokens", "generator", 1));
  }
  if (g.contains("max_depth")) out.grammar.max_depth = static_cast<int>(get_integer(g, "max_depth", "generator", 1));
  if (g.contains("grammar")) {
    const fs::path p = existing_file(base_dir, get_string(g, "grammar", "generator"), "generator.grammar");
    try {
      out.grammar.grammar = genlab::Grammar::from_file(p.string());
    } catch (const genlab::GrammarError& e) {
      fail("generator.grammar", e.what());
    }
  }
  if (g.contains("endpoint")) out.endpoint = get_string(g, "endpoint", "generator");
  if (g.contains("timeout_ms")) out.timeout_ms = static_cast<int>(get_integer(g, "timeout_ms", "generator", 1));
  if (g.contains("retries")) out.retries = static_cast<int>(get_integer(g, "retries", "generator", 0));
  if (g.contains("concurrency")) {
    out.concurrency = static_cast<std::size_t>(get_integer(g, "concurrency", "generator", 1));
  }
}

}  // namespace

void ExperimentConfig::set_seed(std::uint64_t s) {
  seed = s;
  // Fixed stream ids keep bits, noise and grammar draws independent.
  scheme_defaults.seed = derive_seed(s, 1);
  channel.seed = derive_seed(s, 2);
  generator.grammar.seed = derive_seed(s, 3);
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  const fs::path data = MODWAVE_DEFAULT_DATA_DIR;
  for (const char* f : {"corpus/reference.csv", "corpus/generated_m1_m3.csv"}) {
    if (fs::is_regular_file(data / f)) c.corpus.push_back(data / f);
  }
  c.set_seed(1);
  return c;
}

ExperimentConfig parse_config(const json& doc, const fs::path& base_dir) {
  allow_keys(doc, "config",
             {"seed", "corpus", "schemes", "scheme_defaults", "channel", "metrics", "generator", "cost", "output_dir"});
  ExperimentConfig c = default_config();
  if (!doc.contains("seed")) fail("config", "a master 'seed' is required");
  const long long seed = get_integer(doc, "seed", "config", 0);

  if (doc.contains("corpus")) {
    c.corpus.clear();
    const json& corpus = doc["corpus"];
    if (corpus.is_string()) {
      c.corpus.push_back(existing_file(base_dir, corpus.get<std::string>(), "config.corpus"));
    } else if (corpus.is_array()) {
      for (const auto& item : corpus) {
        if (!item.is_string()) fail("config.corpus", "entries must be strings");
        c.corpus.push_back(existing_file(base_dir, item.get<std::string>(), "config.corpus"));
      }
    } else {
      fail("config.corpus", "must be a path or an array of paths");
    }
  }
  if (doc.contains("schemes")) {
    if (!doc["schemes"].is_array()) fail("config.schemes", "must be an array of scheme names");
    for (const auto& s : doc["schemes"]) {
      if (!s.is_string()) fail("config.schemes", "entries must be strings");
      c.schemes.push_back(s.get<std::string>());
    }
  }
  if (doc.contains("scheme_defaults")) {
    const json& d = doc["scheme_defaults"];
    if (!d.is_object()) fail("config.scheme_defaults", "must be an object");
    if (d.contains("scheme") || d.contains("seed") || d.contains("formula")) {
      fail("config.scheme_defaults", "'scheme', 'formula' and 'seed' are set per run, not here");
    }
    try {
      synth::from_json(d, c.scheme_defaults);
    } catch (const synth::SchemeError& e) {
      fail("config.scheme_defaults", e.what());
    }
  }
  if (doc.contains("channel")) {
    if (doc["channel"].is_object() && doc["channel"].contains("seed")) {
      fail("config.channel", "the channel seed comes from the master seed");
    }
    try {
      channel::from_json(doc["channel"], c.channel);
      c.channel.validate();
    } catch (const channel::ChannelError& e) {
      fail("config.channel", e.what());
    }
  }
  if (doc.contains("metrics")) parse_metrics(doc["metrics"], c.metrics);
  if (doc.contains("generator")) parse_generator(doc["generator"], base_dir, c.generator);
  if (doc.contains("cost")) {
    json inputs = doc["cost"];
    if (!inputs.is_object()) fail("config.cost", "must be an object");
    if (inputs.contains("formula")) {
      if (!inputs["formula"].is_string()) fail("config.cost.formula", "must be a corpus id");
      c.cost_formula = inputs["formula"].get<std::string>();
      inputs.erase("formula");
    }
    costmodel::CostInputs cost;
    try {
      costmodel::from_json(inputs, cost);
      cost.validate();
    } catch (const costmodel::CostError& e) {
      fail("config.cost", e.what());
    }
    c.cost = cost;
  }
  if (doc.contains("output_dir")) {
    const fs::path out = get_string(doc, "output_dir", "config");
    c.output_dir = out.is_absolute() ? out : base_dir / out;
  }
  c.set_seed(static_cast<std::uint64_t>(seed));
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

std::vector<dsl::CorpusEntry> load_corpora(const std::vector<fs::path>& files) {
  std::vector<dsl::CorpusEntry> all;
  std::set<std::string> ids;
  for (const auto& f : files) {
    std::vector<dsl::CorpusEntry> entries;
    try {
      entries = dsl::read_corpus(f);
    } catch (const csv::CsvError& e) {
      throw ConfigError(f.string() + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw ConfigError(e.what());
    }
    for (auto& e : entries) {
      if (!ids.insert(e.id).second) throw ConfigError(f.string() + ": id '" + e.id + "' already defined");
      all.push_back(std::move(e));
    }
  }
  return all;
}

synth::SchemeConfig resolve_scheme(const ExperimentConfig& config, const std::string& name,
                                   const std::vector<dsl::CorpusEntry>& corpus) {
  synth::SchemeConfig s = config.scheme_defaults;
  std::string id;
  try {
    s.kind = synth::parse_scheme(name, &id);
  } catch (const synth::SchemeError& e) {
    throw ConfigError(e.what());
  }
  if (s.kind == synth::SchemeKind::kFormula) {
    const auto* entry = dsl::find_entry(corpus, id);
    if (!entry) throw ConfigError("formula id '" + id + "' is not in the loaded corpora");
    s.formula_id = entry->id;
    s.formula = entry->formula;
  }
  return s;
}

}  // namespace modwave::cli
