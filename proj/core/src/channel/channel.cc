#include "modwave/channel/channel.h"

#include <cmath>
#include <complex>
#include <numbers>

#include <nlohmann/json.hpp>

#include "modwave/rng.h"

namespace modwave::channel {
namespace {

constexpr std::uint64_t kFadingStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ChannelError(std::string("channel field '") + key + "': " + e.what());
  }
}

}  // namespace

void ChannelConfig::validate() const {
  if (noise_enabled && !std::isfinite(target_snr_db)) throw ChannelError("target_snr_db must be finite");
  if (taps.empty()) throw ChannelError("at least one tap (the direct path) is required");
  if (taps.front().delay_samples != 0) throw ChannelError("the first tap must have delay 0");
  for (const auto& t : taps) {
    if (!std::isfinite(t.gain) || !std::isfinite(t.phase_rad)) throw ChannelError("tap gain and phase must be finite");
  }
  if (fading.enabled) {
    if (!(fading.sigma > 0.0)) throw ChannelError("fading sigma must be positive");
    if (fading.block_length_samples == 0) throw ChannelError("fading block length must be positive");
  }
}

ChannelConfig preset(std::string_view name) {
  ChannelConfig c;
  if (name == "awgn") {
    c.target_snr_db = 20.0;
  } else if (name == "low-snr") {
    c.target_snr_db = -1.0;
  } else if (name == "multipath") {
    c.target_snr_db = 15.44;
    c.taps = {{0, 1.0, 0.0}, {3, 0.3, std::numbers::pi / 3}, {7, 0.1, -std::numbers::pi / 4}};
    c.fading.enabled = true;
    c.fading.block_length_samples = 480;
  } else {
    throw ChannelError("unknown channel preset '" + std::string(name) + "'");
  }
  return c;
}

std::vector<std::string> preset_names() { return {"awgn", "low-snr", "multipath"}; }

SampledSignal add_noise(const SampledSignal& signal, double noise_power, std::uint64_t seed) {
  if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) throw ChannelError("noise power must be finite and >= 0");
  Rng rng(seed);
  SampledSignal out = signal;
  if (signal.is_complex()) {
    const double sd = std::sqrt(noise_power / 2.0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out.i[k] += sd * rng.gaussian();
      out.q[k] += sd * rng.gaussian();
    }
  } else {
    const double sd = std::sqrt(noise_power);
    for (double& x : out.i) x += sd * rng.gaussian();
  }
  return out;
}

SampledSignal add_awgn(const SampledSignal& signal, double target_snr_db, std::uint64_t seed) {
  const double p = signal.power();
  if (!(p > 0.0)) throw ChannelError("cannot calibrate noise against a zero-power signal");
  if (!std::isfinite(target_snr_db)) throw ChannelError("target SNR must be finite");
  return add_noise(signal, p / std::pow(10.0, target_snr_db / 10.0), seed);
}

SampledSignal apply_multipath(const SampledSignal& signal, const std::vector<Tap>& taps) {
  const std::size_t n = signal.size();
  for (const auto& t : taps) {
    if (t.delay_samples >= n && n > 0) {
      throw ChannelError("tap delay " + std::to_string(t.delay_samples) + " exceeds signal length " + std::to_string(n));
    }
  }
  const bool complex = signal.is_complex();
  std::vector<double> yi(n, 0.0), yq(complex ? n : 0, 0.0);
  for (const auto& t : taps) {
    const std::size_t d = t.delay_samples;
    if (complex) {
      const std::complex<double> g = std::polar(t.gain, t.phase_rad);
      for (std::size_t k = d; k < n; ++k) {
        const std::complex<double> v = g * std::complex<double>(signal.i[k - d], signal.q[k - d]);
        yi[k] += v.real();
        yq[k] += v.imag();
      }
    } else {
      const double g = t.gain * std::cos(t.phase_rad);
      for (std::size_t k = d; k < n; ++k) yi[k] += g * signal.i[k - d];
    }
  }
  return signal.with_samples(std::move(yi), std::move(yq));
}

std::vector<double> fading_gains(std::size_t block_count, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> alpha(block_count);
  for (double& a : alpha) a = sigma * std::sqrt(-2.0 * std::log(rng.uniform_open()));
  return alpha;
}

SampledSignal apply_fading(const SampledSignal& signal, const FadingConfig& fading, std::uint64_t seed) {
  if (!fading.enabled) return signal;
  if (fading.block_length_samples == 0) throw ChannelError("fading block length must be positive");
  if (!(fading.sigma > 0.0)) throw ChannelError("fading sigma must be positive");
  const std::size_t blocks = (signal.size() + fading.block_length_samples - 1) / fading.block_length_samples;
  const auto alpha = fading_gains(blocks, fading.sigma, seed);
  SampledSignal out = signal;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double a = alpha[k / fading.block_length_samples];
    out.i[k] *= a;
    if (out.is_complex()) out.q[k] *= a;
  }
  return out;
}

double measure_snr(const SampledSignal& clean, const SampledSignal& received) {
  if (clean.size() != received.size()) throw ChannelError("measure_snr needs equal lengths");
  double noise = 0.0;
  for (std::size_t k = 0; k < clean.size(); ++k) {
    const std::complex<double> e = received.at(k) - clean.at(k);
    noise += std::norm(e);
  }
  if (noise == 0.0) return kInfiniteSnrDb;
  noise /= static_cast<double>(clean.size());
  return 10.0 * std::log10(clean.power() / noise);
}

ChannelOutput transmit(const SampledSignal& clean, const ChannelConfig& config) {
  config.validate();
  ChannelOutput out;
  SampledSignal impaired = apply_multipath(clean, config.taps);
  impaired = apply_fading(impaired, config.fading, derive_seed(config.seed, kFadingStream));
  if (config.noise_enabled) {
    const double p = clean.power();
    if (!(p > 0.0)) throw ChannelError("cannot calibrate noise against a zero-power signal");
    out.noise_power = p / std::pow(10.0, config.target_snr_db / 10.0);
    out.received = add_noise(impaired, out.noise_power, derive_seed(config.seed, kNoiseStream));
  } else {
    out.received = impaired;
  }
  // Measured against the same reference power the noise was sized with.
  double noise = 0.0;
  for (std::size_t k = 0; k < impaired.size(); ++k) noise += std::norm(out.received.at(k) - impaired.at(k));
  out.measured_snr_db = noise == 0.0 ? kInfiniteSnrDb
                                     : 10.0 * std::log10(clean.power() / (noise / static_cast<double>(impaired.size())));
  out.impaired = std::move(impaired);
  return out;
}

void to_json(nlohmann::json& j, const Tap& tap) {
  j = nlohmann::json{{"delay_samples", tap.delay_samples}, {"gain", tap.gain}, {"phase", tap.phase_rad}};
}

void from_json(const nlohmann::json& j, Tap& tap) {
  if (!j.is_object()) throw ChannelError("tap must be an object");
  tap.delay_samples = get_or<std::size_t>(j, "delay_samples", 0);
  tap.gain = get_or<double>(j, "gain", 1.0);
  tap.phase_rad = get_or<double>(j, "phase", 0.0);
}

void to_json(nlohmann::json& j, const FadingConfig& fading) {
  j = nlohmann::json{{"enabled", fading.enabled},
                     {"block_length_samples", fading.block_length_samples},
                     {"sigma", fading.sigma}};
}

void from_json(const nlohmann::json& j, FadingConfig& fading) {
  if (!j.is_object()) throw ChannelError("fading must be an object");
  fading.enabled = get_or<bool>(j, "enabled", fading.enabled);
  fading.block_length_samples = get_or<std::size_t>(j, "block_length_samples", fading.block_length_samples);
  fading.sigma = get_or<double>(j, "sigma", fading.sigma);
}

void to_json(nlohmann::json& j, const ChannelConfig& config) {
  j = nlohmann::json{{"target_snr_db", config.target_snr_db},
                     {"noise_enabled", config.noise_enabled},
                     {"taps", config.taps},
                     {"fading", config.fading},
                     {"seed", config.seed}};
}

void from_json(const nlohmann::json& j, ChannelConfig& config) {
  if (!j.is_object()) throw ChannelError("channel must be an object");
  if (j.contains("preset")) config = preset(get_or<std::string>(j, "preset", ""));
  config.target_snr_db = get_or<double>(j, "target_snr_db", config.target_snr_db);
  config.noise_enabled = get_or<bool>(j, "noise_enabled", config.noise_enabled);
  if (j.contains("taps")) {
    if (!j.at("taps").is_array()) throw ChannelError("taps must be an array");
    config.taps.clear();
    for (const auto& t : j.at("taps")) config.taps.push_back(t.get<Tap>());
  }
  if (j.contains("fading")) config.fading = j.at("fading").get<FadingConfig>();
  config.seed = get_or<std::uint64_t>(j, "seed", config.seed);
}

}  // namespace modwave::channel
