#include "modwave/metrics/report.h"

#include <cstdio>
#include <exception>
#include <future>

#include "modwave/metrics/receiver.h"
#include "modwave/metrics/theory.h"
#include "modwave/synth/modulate.h"

namespace modwave::metrics {
namespace {

std::string format_or_na(const std::optional<double>& v, const char* fmt) {
  if (!v) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

// Quotes a CSV field when it holds a separator or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

MetricsReport analyze(const synth::SchemeConfig& scheme, const channel::ChannelConfig& channel,
                      const MetricsOptions& options) {
  MetricsReport row;
  row.target_snr_db = channel.target_snr_db;
  row.scheme_seed = scheme.seed;
  row.channel_seed = channel.seed;
  const char* stage = "config";
  try {
    row.label = scheme.label();
    stage = "synth";
    scheme.validate();
    const SampledSignal clean = synth::modulate(scheme);
    row.guard_count = clean.guard_count;
    if (!all_finite(clean)) throw MetricsError("waveform contains non-finite samples");
    const SampledSignal normalized = synth::normalize_power(clean);
    stage = "channel";
    channel.validate();
    const channel::ChannelOutput out = channel::transmit(normalized, channel);
    row.measured_snr_db = out.measured_snr_db;
    stage = "metrics";

    const PsdEstimate psd = welch_psd(normalized, options.welch);
    row.occupied_bandwidth_hz = occupied_bandwidth(psd, options.obw_fraction);

    if (!synth::is_analog(scheme.kind)) {
      const Bits rx = demodulate(out.received, scheme, normalized);
      row.bits = rx.size();
      row.bit_errors = bit_errors(normalized.origin_bits, rx);
      row.ber = static_cast<double>(row.bit_errors) / static_cast<double>(row.bits);
      const int k = synth::bits_per_symbol(scheme.symbol_scheme());
      row.spectral_efficiency = spectral_efficiency_measured(k * scheme.symbol_rate_hz, *row.occupied_bandwidth_hz);
      row.theoretical_efficiency = spectral_efficiency_theoretical(synth::alphabet_size(scheme.symbol_scheme()));
    }
    if (options.keep_artifacts) {
      row.psd = psd;
      row.constellation = extract_constellation(out.received, scheme);
    }
  } catch (const std::exception& e) {
    row.error = std::string(stage) + ": " + e.what();
    row.measured_snr_db.reset();
    row.ber.reset();
    row.spectral_efficiency.reset();
    row.theoretical_efficiency.reset();
    row.occupied_bandwidth_hz.reset();
    row.psd.reset();
    row.constellation.clear();
  }
  return row;
}

std::vector<MetricsReport> compare(const std::vector<synth::SchemeConfig>& schemes,
                                   const channel::ChannelConfig& channel, const MetricsOptions& options) {
  std::vector<MetricsReport> rows;
  rows.reserve(schemes.size());
  if (!options.parallel) {
    for (const auto& s : schemes) rows.push_back(analyze(s, channel, options));
    return rows;
  }
  std::vector<std::future<MetricsReport>> pending;
  pending.reserve(schemes.size());
  for (const auto& s : schemes) {
    pending.push_back(std::async(std::launch::async, [&s, &channel, &options] { return analyze(s, channel, options); }));
  }
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

void write_compare_csv(std::ostream& out, const std::vector<MetricsReport>& rows) {
  out << "modulation,snr_db,ber,spectral_eff,bandwidth_hz,target_snr_db,theoretical_eff,guard_count,error\n";
  for (const auto& r : rows) {
    char target[32];
    std::snprintf(target, sizeof target, "%.2f", r.target_snr_db);
    out << csv_field(r.label) << ',' << format_or_na(r.measured_snr_db, "%.2f") << ','
        << format_or_na(r.ber, "%.6f") << ',' << format_or_na(r.spectral_efficiency, "%.4f") << ','
        << format_or_na(r.occupied_bandwidth_hz, "%.2f") << ',' << target << ','
        << format_or_na(r.theoretical_efficiency, "%.0f") << ',' << r.guard_count << ',' << csv_field(r.error)
        << '\n';
  }
}

void write_constellation_csv(std::ostream& out, const std::vector<Complex>& points) {
  out << "i,q\n";
  char buf[64];
  for (const auto& z : points) {
    std::snprintf(buf, sizeof buf, "%.9f,%.9f\n", z.real(), z.imag());
    out << buf;
  }
}

void to_json(nlohmann::json& j, const MetricsReport& r) {
  j = nlohmann::json{{"modulation", r.label},
                     {"target_snr_db", r.target_snr_db},
                     {"snr_db", optional_json(r.measured_snr_db)},
                     {"ber", optional_json(r.ber)},
                     {"bits", r.bits},
                     {"bit_errors", r.bit_errors},
                     {"spectral_eff", optional_json(r.spectral_efficiency)},
                     {"theoretical_eff", optional_json(r.theoretical_efficiency)},
                     {"bandwidth_hz", optional_json(r.occupied_bandwidth_hz)},
                     {"guard_count", r.guard_count},
                     {"seeds", {{"scheme", r.scheme_seed}, {"channel", r.channel_seed}}}};
  if (!r.error.empty()) j["error"] = r.error;
}

nlohmann::json compare_json(const std::vector<MetricsReport>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) j.push_back(r);
  return j;
}

}  // namespace modwave::metrics
