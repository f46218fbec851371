#ifndef MODWAVE_METRICS_REPORT_H_
#define MODWAVE_METRICS_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modwave/channel/channel.h"
#include "modwave/metrics/spectrum.h"
#include "modwave/signal.h"
#include "modwave/synth/scheme.h"

namespace modwave::metrics {

struct MetricsOptions {
  WelchOptions welch;
  double obw_fraction = 0.99;
  // Keep the clean-signal PSD and the received constellation in the report.
  bool keep_artifacts = false;
  // Evaluate compare() rows concurrently.
  bool parallel = true;
};

// One row of a comparison. Rows that failed carry `error` and leave the
// measurements empty.
struct MetricsReport {
  std::string label;
  double target_snr_db = 0.0;
  std::optional<double> measured_snr_db;
  std::optional<double> ber;  // empty for analog schemes
  std::size_t bits = 0;
  std::size_t bit_errors = 0;
  std::optional<double> spectral_efficiency;  // bit rate / occupied bandwidth
  std::optional<double> theoretical_efficiency;  // log2(M)
  std::optional<double> occupied_bandwidth_hz;
  std::size_t guard_count = 0;
  std::uint64_t scheme_seed = 0;
  std::uint64_t channel_seed = 0;
  std::string error;

  std::optional<PsdEstimate> psd;
  std::vector<Complex> constellation;

  bool ok() const { return error.empty(); }
};

// synth -> normalize to unit power -> channel -> metrics for one scheme.
// Occupied bandwidth comes from the clean normalized waveform. Failures of
// any stage are caught and recorded in the row, prefixed with the stage
// name (synth, channel or metrics).
MetricsReport analyze(const synth::SchemeConfig& scheme, const channel::ChannelConfig& channel,
                      const MetricsOptions& options = {});

// One row per scheme, all through the same channel config and seed; rows
// are returned in input order.
std::vector<MetricsReport> compare(const std::vector<synth::SchemeConfig>& schemes,
                                   const channel::ChannelConfig& channel, const MetricsOptions& options = {});

// `modulation,snr_db,ber,spectral_eff,bandwidth_hz` followed by
// target_snr_db, theoretical_eff, guard_count and error. snr_db is the
// measured value; missing values print as NA.
void write_compare_csv(std::ostream& out, const std::vector<MetricsReport>& rows);
// Constellation CSV `i,q`.
void write_constellation_csv(std::ostream& out, const std::vector<Complex>& points);

void to_json(nlohmann::json& j, const MetricsReport& report);
nlohmann::json compare_json(const std::vector<MetricsReport>& rows);

}  // namespace modwave::metrics

#endif  // MODWAVE_METRICS_REPORT_H_
