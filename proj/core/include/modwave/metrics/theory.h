#ifndef MODWAVE_METRICS_THEORY_H_
#define MODWAVE_METRICS_THEORY_H_

#include <cstddef>
#include <cstdint>

namespace modwave::metrics {

// Gaussian tail probability Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x);

// Coherent BPSK over AWGN: Q(sqrt(2 Eb/N0)), Eb/N0 given in dB.
double bpsk_ber_theory(double ebn0_db);

// Per-sample SNR for a real passband waveform with `bits_per_symbol` bits
// and `samples_per_symbol` samples per symbol: Es/N0 = snr * sps / 2, so
// snr_db = Eb/N0_dB + 10 log10(2 k / sps).
double snr_db_for_ebn0(double ebn0_db, int bits_per_symbol, int samples_per_symbol);

// Standard deviation of an error rate estimated from n Bernoulli trials.
double binomial_sigma(double p, std::size_t n);

// log2(M) for M a power of two, M >= 2. Throws MetricsError otherwise.
double spectral_efficiency_theoretical(std::uint64_t constellation_size);

// bit_rate / bandwidth. Throws MetricsError for a non-positive bandwidth.
double spectral_efficiency_measured(double bit_rate_bps, double bandwidth_hz);

}  // namespace modwave::metrics

#endif  // MODWAVE_METRICS_THEORY_H_
