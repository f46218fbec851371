#ifndef MODWAVE_SIGNAL_H_
#define MODWAVE_SIGNAL_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace modwave {

using Bits = std::vector<std::uint8_t>;
using Complex = std::complex<double>;

// Uniformly sampled waveform plus the ground truth that produced it.
// Real signals leave `q` empty.
struct SampledSignal {
  std::vector<double> i;
  std::vector<double> q;
  double sample_rate_hz = 0.0;

  Bits origin_bits;
  std::vector<Complex> origin_symbols;
  std::optional<double> symbol_rate_hz;

  // Amplitude of this waveform relative to the unit-amplitude modulation
  // the receiver's decision rules assume. Scaling operations keep it
  // current so coherent receivers can undo normalization.
  double gain = 1.0;
  // Guarded divisions performed while synthesizing a formula waveform.
  std::size_t guard_count = 0;

  std::size_t size() const { return i.size(); }
  bool is_complex() const { return !q.empty(); }
  Complex at(std::size_t k) const { return {i[k], q.empty() ? 0.0 : q[k]}; }

  // Mean of |x|^2.
  double power() const;
  // Same ground truth, samples multiplied by `factor`, gain updated.
  SampledSignal scaled(double factor) const;
  // Copy of everything but the samples.
  SampledSignal with_samples(std::vector<double> i_samples,
                             std::vector<double> q_samples = {}) const;
};

bool all_finite(const SampledSignal& s);

}  // namespace modwave

#endif  // MODWAVE_SIGNAL_H_
