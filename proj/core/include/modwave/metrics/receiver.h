#ifndef MODWAVE_METRICS_RECEIVER_H_
#define MODWAVE_METRICS_RECEIVER_H_

#include <cstddef>
#include <vector>

#include "modwave/dsl/expression.h"
#include "modwave/signal.h"
#include "modwave/synth/scheme.h"

namespace modwave::metrics {

// Coherent downconversion by f_c and per-symbol integrate-and-dump
// (matched filter and centre sampling for root-raised-cosine), divided by
// the signal's gain: one complex point per symbol. Timing and carrier
// phase are known by construction.
std::vector<Complex> extract_constellation(const SampledSignal& signal, const synth::SchemeConfig& config);

// Recovers the transmitted bits.
//   OOK, BPSK, QPSK, QAM: nearest constellation point to the extracted
//     symbol.
//   BFSK, FSK, chirp: coherent maximum-likelihood choice among the
//     candidate symbol waveforms.
//   MSK, GMSK: Viterbi sequence detection over the CPM phase trellis.
//   formula: correlation_demodulate with the config's formula.
// `reference` supplies the ground truth bit count and the amplitude
// (received.gain is used, which channel stages carry through). Throws
// MetricsError for analog schemes or a reference without origin bits.
Bits demodulate(const SampledSignal& received, const synth::SchemeConfig& config, const SampledSignal& reference);

// Minimum-distance receiver for a formula: for every symbol interval and
// every candidate label c of the base scheme, the formula is evaluated with
// all streams held at c, and the label maximizing
//   gain * <r, s_c> - gain^2 * |s_c|^2 / 2
// over that interval wins. Exact for memoryless formulas; for formulas with
// an integral the candidates assume the stream was constant since t = 0.
Bits correlation_demodulate(const SampledSignal& received, const dsl::Expression& expr,
                            const synth::SchemeConfig& config, double gain);

std::size_t bit_errors(const Bits& tx, const Bits& rx);
// Hamming distance / length. Throws MetricsError on empty or unequal input.
double ber(const Bits& tx, const Bits& rx);

}  // namespace modwave::metrics

#endif  // MODWAVE_METRICS_RECEIVER_H_
