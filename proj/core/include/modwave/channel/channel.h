#ifndef MODWAVE_CHANNEL_CHANNEL_H_
#define MODWAVE_CHANNEL_CHANNEL_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "modwave/signal.h"

namespace modwave::channel {

class ChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One path of a tapped delay line. On real signals the phase enters as a
// gain factor cos(phase); complex signals are rotated by e^{j phase}.
struct Tap {
  std::size_t delay_samples = 0;
  double gain = 1.0;
  double phase_rad = 0.0;

  bool operator==(const Tap&) const = default;
};

// Rayleigh block fading: one attenuation alpha ~ Rayleigh(sigma) per block.
struct FadingConfig {
  bool enabled = false;
  std::size_t block_length_samples = 480;
  double sigma = 0.70710678118654752;  // E[alpha^2] = 2 sigma^2 = 1

  bool operator==(const FadingConfig&) const = default;
};

struct ChannelConfig {
  double target_snr_db = 20.0;
  // Noise can be switched off for loopback runs; the SNR is then reported
  // as the +infinity sentinel.
  bool noise_enabled = true;
  std::vector<Tap> taps = {Tap{}};
  FadingConfig fading;
  std::uint64_t seed = 1;

  // Throws ChannelError when the target is not finite, the first tap is
  // missing or delayed, gains are not finite, or sigma <= 0 with fading on.
  void validate() const;
  bool operator==(const ChannelConfig&) const = default;
};

// Named configurations:
//   "awgn"      direct path only, 20 dB.
//   "low-snr"  direct path only, -1 dB per-sample SNR: with 48 samples
//               per symbol this puts 16-QAM near the 1e-2 BER decade.
//   "multipath" 15.44 dB, three taps plus Rayleigh block fading.
// Throws ChannelError for unknown names.
ChannelConfig preset(std::string_view name);
std::vector<std::string> preset_names();

// Reported when the noise power is exactly zero.
inline constexpr double kInfiniteSnrDb = std::numeric_limits<double>::infinity();

// Adds Gaussian noise of power P(signal) / 10^(snr/10). Complex signals get
// circularly symmetric noise split equally between I and Q.
SampledSignal add_awgn(const SampledSignal& signal, double target_snr_db, std::uint64_t seed);
// Adds noise of the given total power per sample.
SampledSignal add_noise(const SampledSignal& signal, double noise_power, std::uint64_t seed);

// Sum over taps of gain * phase term * signal delayed by delay_samples,
// zero-filled at the head so the length is unchanged.
SampledSignal apply_multipath(const SampledSignal& signal, const std::vector<Tap>& taps);

SampledSignal apply_fading(const SampledSignal& signal, const FadingConfig& fading, std::uint64_t seed);
// The attenuation drawn for each block, in order (what apply_fading uses).
std::vector<double> fading_gains(std::size_t block_count, double sigma, std::uint64_t seed);

// 10 log10(P(clean) / P(received - clean)); kInfiniteSnrDb for zero noise.
double measure_snr(const SampledSignal& clean, const SampledSignal& received);

struct ChannelOutput {
  SampledSignal received;
  SampledSignal impaired;     // multipath and fading applied, no noise
  double noise_power = 0.0;   // sized against the clean input
  double measured_snr_db = kInfiniteSnrDb;  // P(clean) / P(received - impaired)
};

// Full chain: multipath -> fading -> AWGN. Noise is calibrated against the
// clean input's power, before the channel, so every scheme sees the same
// noise level for the same target. The fading and noise streams are derived
// from config.seed.
ChannelOutput transmit(const SampledSignal& clean, const ChannelConfig& config);

void to_json(nlohmann::json& j, const Tap& tap);
void from_json(const nlohmann::json& j, Tap& tap);
void to_json(nlohmann::json& j, const FadingConfig& fading);
void from_json(const nlohmann::json& j, FadingConfig& fading);
void to_json(nlohmann::json& j, const ChannelConfig& config);
// Missing keys keep their defaults; wrong types raise ChannelError.
void from_json(const nlohmann::json& j, ChannelConfig& config);

}  // namespace modwave::channel

#endif  // MODWAVE_CHANNEL_CHANNEL_H_
