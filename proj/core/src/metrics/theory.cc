#include "modwave/metrics/theory.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "modwave/metrics/spectrum.h"

namespace modwave::metrics {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double bpsk_ber_theory(double ebn0_db) { return q_function(std::sqrt(2.0 * std::pow(10.0, ebn0_db / 10.0))); }

double snr_db_for_ebn0(double ebn0_db, int bits_per_symbol, int samples_per_symbol) {
  if (bits_per_symbol <= 0 || samples_per_symbol <= 0) throw MetricsError("bits and samples per symbol must be positive");
  return ebn0_db + 10.0 * std::log10(2.0 * bits_per_symbol / static_cast<double>(samples_per_symbol));
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) throw MetricsError("binomial sigma of zero trials");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double spectral_efficiency_theoretical(std::uint64_t constellation_size) {
  if (constellation_size < 2 || !std::has_single_bit(constellation_size)) {
    throw MetricsError("constellation size " + std::to_string(constellation_size) + " is not a power of two >= 2");
  }
  return static_cast<double>(std::countr_zero(constellation_size));
}

double spectral_efficiency_measured(double bit_rate_bps, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw MetricsError("spectral efficiency needs a positive bandwidth");
  return bit_rate_bps / bandwidth_hz;
}

}  // namespace modwave::metrics
