#ifndef MODWAVE_SYNTH_MODULATE_H_
#define MODWAVE_SYNTH_MODULATE_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "modwave/dsl/evaluate.h"
#include "modwave/dsl/expression.h"
#include "modwave/signal.h"
#include "modwave/synth/scheme.h"

namespace modwave::synth {

// Uniform i.i.d. bits, deterministic per seed.
Bits gen_bits(std::size_t count, std::uint64_t seed);

// Bits a config transmits: symbol_count * bits_per_symbol, drawn from the
// config seed. Empty for analog schemes.
Bits config_bits(const SchemeConfig& config);

// Carrier angle 2 pi f k / fs reduced exactly for integer f and fs, so long
// runs stay periodic.
double carrier_angle(double freq_hz, std::size_t k, double sample_rate_hz);

// Transmit pulse for root-raised-cosine shaping: 2 * span * sps + 1 taps,
// centred, scaled so sum(p^2) = sps (the energy of a unit rectangle).
std::vector<double> rrc_pulse(const SchemeConfig& config);

// Tone used for FSK label `label`: BFSK f_c -/+ Rs/2, 4-FSK
// f_c + (gray_decode(label) - 1.5) Rs.
double fsk_tone_hz(const SchemeConfig& config, std::uint32_t label);

// Excess chirp phase at offset tau (seconds) into a symbol:
// +/- 2 pi W (tau^2 / T - tau), instantaneous frequency f_c +/- W (2 tau / T - 1).
double chirp_phase(const SchemeConfig& config, bool up, double tau_s);

// Formula text used for each analog scheme (same notation as the corpus).
std::string_view analog_formula(SchemeKind kind);

// Passband waveform for any non-formula scheme, at amplitude A_c, with
// origin bits (and symbols for linear schemes) recorded. `gain` is set to
// A_c so receivers can undo the amplitude. Throws SchemeError.
SampledSignal modulate_reference(const SchemeConfig& config);

// Streams and constants a generated formula is evaluated against, drawn
// from the config's base scheme (I and Q are 0 for bases without a
// constellation). Per symbol with label c and point s_c:
//   I(t) = Re s_c, Q(t) = Im s_c, d(t) = gray_decode(c), m(t) = I(t),
//   f(t) = f_c + (d - (M - 1) / 2) Rs.
// Constants: A = A_c = amplitude, m = mod_index, n = sum_upper,
// f_c, f_m, k_f, k_p, phi = phi_c = carrier_phase, phi_m = message_phase.
struct FormulaContext {
  dsl::EvaluationContext context;
  dsl::TimeGrid grid;
  Bits bits;
  std::vector<Complex> symbols;
};

FormulaContext formula_context(const SchemeConfig& config, const std::vector<std::uint32_t>& labels);
// Context driven by the config's own seeded bits.
FormulaContext formula_context(const SchemeConfig& config);

// Evaluates `expr` on the context's grid; ground truth is copied from the
// context and the guard count recorded. Non-finite samples (already zeroed
// by the evaluator) are counted into guard_count as well.
SampledSignal modulate_formula(const dsl::Expression& expr, const FormulaContext& ctx,
                               const SchemeConfig& config);
// Parses config.formula and evaluates it against formula_context(config).
SampledSignal modulate_formula(const SchemeConfig& config);

// Dispatches on config.kind.
SampledSignal modulate(const SchemeConfig& config);

// Scales so mean |x|^2 = target_power. Throws SchemeError on zero power.
// `factor`, when non-null, receives the applied scale.
SampledSignal normalize_power(const SampledSignal& signal, double target_power = 1.0,
                              double* factor = nullptr);

}  // namespace modwave::synth

#endif  // MODWAVE_SYNTH_MODULATE_H_
