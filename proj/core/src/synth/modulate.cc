#include "modwave/synth/modulate.h"

#include <cmath>
#include <numbers>
#include <string>

#include "modwave/rng.h"
#include "modwave/synth/constellation.h"
#include "modwave/synth/cpm.h"

namespace modwave::synth {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rrc_tap(double t, double beta) {
  if (std::abs(t) < 1e-12) return 1.0 - beta + 4.0 * beta / std::numbers::pi;
  if (std::abs(std::abs(t) - 1.0 / (4.0 * beta)) < 1e-12) {
    const double a = std::numbers::pi / (4.0 * beta);
    return beta / std::numbers::sqrt2 *
           ((1.0 + 2.0 / std::numbers::pi) * std::sin(a) + (1.0 - 2.0 / std::numbers::pi) * std::cos(a));
  }
  const double num = std::sin(std::numbers::pi * t * (1.0 - beta)) +
                     4.0 * beta * t * std::cos(std::numbers::pi * t * (1.0 + beta));
  const double den = std::numbers::pi * t * (1.0 - (4.0 * beta * t) * (4.0 * beta * t));
  return num / den;
}

SampledSignal empty_signal(const SchemeConfig& config) {
  SampledSignal s;
  s.sample_rate_hz = config.sample_rate_hz();
  s.i.assign(config.sample_count(), 0.0);
  s.gain = config.amplitude;
  if (!is_analog(config.kind)) s.symbol_rate_hz = config.symbol_rate_hz;
  return s;
}

// Baseband I/Q per sample for a linear scheme.
void linear_baseband(const SchemeConfig& config, const std::vector<Complex>& symbols,
                     std::vector<double>& bi, std::vector<double>& bq) {
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const std::size_t n = symbols.size() * sps;
  bi.assign(n, 0.0);
  bq.assign(n, 0.0);
  if (config.pulse == PulseShape::kRectangular) {
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      for (std::size_t k = 0; k < sps; ++k) {
        bi[s * sps + k] = symbols[s].real();
        bq[s * sps + k] = symbols[s].imag();
      }
    }
    return;
  }
  // Impulses at symbol centres filtered by the RRC pulse.
  const auto pulse = rrc_pulse(config);
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(pulse.size() / 2);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    const std::ptrdiff_t centre = static_cast<std::ptrdiff_t>(s * sps + sps / 2);
    for (std::ptrdiff_t j = -half; j <= half; ++j) {
      const std::ptrdiff_t k = centre + j;
      if (k < 0 || k >= static_cast<std::ptrdiff_t>(n)) continue;
      const double p = pulse[static_cast<std::size_t>(j + half)];
      bi[static_cast<std::size_t>(k)] += p * symbols[s].real();
      bq[static_cast<std::size_t>(k)] += p * symbols[s].imag();
    }
  }
}

SampledSignal modulate_linear(const SchemeConfig& config, const Bits& bits) {
  SampledSignal s = empty_signal(config);
  s.origin_bits = bits;
  s.origin_symbols = map_symbols(bits, config.kind);
  std::vector<double> bi, bq;
  linear_baseband(config, s.origin_symbols, bi, bq);
  const double fs = config.sample_rate_hz();
  for (std::size_t k = 0; k < s.i.size(); ++k) {
    const double w = carrier_angle(config.carrier_hz, k, fs);
    s.i[k] = config.amplitude * (bi[k] * std::cos(w) - bq[k] * std::sin(w));
  }
  return s;
}

SampledSignal modulate_fsk(const SchemeConfig& config, const Bits& bits) {
  SampledSignal s = empty_signal(config);
  s.origin_bits = bits;
  const auto labels = bits_to_labels(bits, config.kind);
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const double fs = config.sample_rate_hz();
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const double f = fsk_tone_hz(config, labels[n]);
    for (std::size_t k = n * sps; k < (n + 1) * sps; ++k) {
      s.i[k] = config.amplitude * std::cos(carrier_angle(f, k, fs));
    }
  }
  return s;
}

SampledSignal modulate_cpm(const SchemeConfig& config, const Bits& bits) {
  SampledSignal s = empty_signal(config);
  s.origin_bits = bits;
  const CpmModel model = CpmModel::for_scheme(config);
  const std::uint32_t mask = static_cast<std::uint32_t>(model.pattern_count() - 1);
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const double fs = config.sample_rate_hz();
  std::uint32_t pattern = mask;  // symbols before the first are +1
  double theta = 0.0;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    pattern = ((pattern << 1) | (bits[n] & 1u)) & mask;
    for (std::size_t k = 0; k < sps; ++k) {
      const std::size_t idx = n * sps + k;
      const double phase = carrier_angle(config.carrier_hz, idx, fs) + theta +
                           model.pattern_phase(pattern, static_cast<int>(k));
      s.i[idx] = config.amplitude * std::cos(phase);
    }
    theta = std::remainder(theta + model.state_step(pattern), kTwoPi);
  }
  return s;
}

SampledSignal modulate_chirp(const SchemeConfig& config, const Bits& bits) {
  SampledSignal s = empty_signal(config);
  s.origin_bits = bits;
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const double fs = config.sample_rate_hz();
  for (std::size_t n = 0; n < bits.size(); ++n) {
    for (std::size_t k = 0; k < sps; ++k) {
      const std::size_t idx = n * sps + k;
      const double tau = static_cast<double>(k) / fs;
      s.i[idx] = config.amplitude *
                 std::cos(carrier_angle(config.carrier_hz, idx, fs) + chirp_phase(config, bits[n] != 0, tau));
    }
  }
  return s;
}

SampledSignal modulate_analog(const SchemeConfig& config) {
  SampledSignal s = empty_signal(config);
  s.gain = 1.0;
  const dsl::TimeGrid grid = dsl::TimeGrid::from_rate(config.sample_rate_hz(), config.sample_count());
  dsl::EvaluationContext ctx;
  ctx.set_constant("A_c", config.amplitude);
  ctx.set_constant("m", config.mod_index);
  ctx.set_constant("f_m", config.message_hz);
  ctx.set_constant("f_c", config.carrier_hz);
  ctx.set_constant("phi_c", config.carrier_phase);
  ctx.set_constant("phi_m", config.message_phase);
  ctx.set_constant("k_f", config.freq_deviation);
  ctx.set_constant("k_p", config.phase_deviation);
  std::vector<double> message(grid.count);
  for (std::size_t k = 0; k < grid.count; ++k) {
    message[k] = std::cos(carrier_angle(config.message_hz, k, config.sample_rate_hz()) + config.message_phase);
  }
  ctx.set_signal("m(t)", std::move(message));
  auto result = dsl::evaluate(dsl::parse(analog_formula(config.kind)), ctx, grid);
  s.i = std::move(result.samples);
  return s;
}

}  // namespace

Bits gen_bits(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  Bits bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
  return bits;
}

Bits config_bits(const SchemeConfig& config) {
  const int k = bits_per_symbol(config.symbol_scheme());
  if (k == 0 || is_analog(config.kind)) return {};
  return gen_bits(config.symbol_count * static_cast<std::size_t>(k), config.seed);
}

double carrier_angle(double freq_hz, std::size_t k, double sample_rate_hz) {
  const double cycles = std::fmod(freq_hz * static_cast<double>(k), sample_rate_hz);
  return kTwoPi * cycles / sample_rate_hz;
}

std::vector<double> rrc_pulse(const SchemeConfig& config) {
  const int sps = config.samples_per_symbol;
  const int half = config.rrc_span_symbols * sps;
  std::vector<double> p(static_cast<std::size_t>(2 * half + 1));
  double energy = 0.0;
  for (int j = -half; j <= half; ++j) {
    const double v = rrc_tap(static_cast<double>(j) / sps, config.rolloff);
    p[static_cast<std::size_t>(j + half)] = v;
    energy += v * v;
  }
  const double scale = std::sqrt(static_cast<double>(sps) / energy);
  for (double& v : p) v *= scale;
  return p;
}

double fsk_tone_hz(const SchemeConfig& config, std::uint32_t label) {
  if (config.kind == SchemeKind::kBfsk) {
    return config.carrier_hz + (static_cast<double>(label) - 0.5) * config.symbol_rate_hz;
  }
  return config.carrier_hz + (static_cast<double>(gray_decode(label)) - 1.5) * config.symbol_rate_hz;
}

double chirp_phase(const SchemeConfig& config, bool up, double tau_s) {
  const double period = 1.0 / config.symbol_rate_hz;
  const double sign = up ? 1.0 : -1.0;
  return sign * kTwoPi * config.chirp_sweep_hz * (tau_s * tau_s / period - tau_s);
}

std::string_view analog_formula(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kAm:
      return "A_c (1 + m * cos(2 pi f_m t + phi_m)) * cos(2 pi f_c t + phi_c)";
    case SchemeKind::kFm:
      return "A_c * cos(2 pi f_c t + k_f * integral(m(t), t) + phi_c)";
    case SchemeKind::kPm:
      return "A_c * cos(2 pi f_c t + k_p * m(t) + phi_c)";
    default:
      throw SchemeError(std::string(scheme_name(kind)) + " is not an analog scheme");
  }
}

SampledSignal modulate_reference(const SchemeConfig& config) {
  config.validate();
  if (config.kind == SchemeKind::kFormula) throw SchemeError("modulate_reference called for a formula scheme");
  if (is_analog(config.kind)) return modulate_analog(config);
  const Bits bits = config_bits(config);
  if (is_linear(config.kind)) return modulate_linear(config, bits);
  switch (config.kind) {
    case SchemeKind::kBfsk:
    case SchemeKind::kFsk:
      return modulate_fsk(config, bits);
    case SchemeKind::kMsk:
    case SchemeKind::kGmsk:
      return modulate_cpm(config, bits);
    case SchemeKind::kChirp:
      return modulate_chirp(config, bits);
    default:
      throw SchemeError("no reference modulator for " + std::string(scheme_name(config.kind)));
  }
}

FormulaContext formula_context(const SchemeConfig& config, const std::vector<std::uint32_t>& labels) {
  const SchemeKind base = config.symbol_scheme();
  // Non-linear bases (FSK and friends) drive only d(t) and f(t).
  static const std::vector<Complex> kNoPoints;
  const auto& points = is_linear(base) ? constellation(base) : kNoPoints;
  const int k = bits_per_symbol(base);
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const std::size_t n = labels.size() * sps;
  const double m_center = 0.5 * (alphabet_size(base) - 1);

  FormulaContext out;
  out.grid = dsl::TimeGrid::from_rate(config.sample_rate_hz(), n);
  std::vector<double> si(n), sq(n), sd(n), sf(n);
  out.symbols.reserve(labels.size());
  for (std::size_t s = 0; s < labels.size(); ++s) {
    const Complex p = points.empty() ? Complex{} : points.at(labels[s]);
    const double d = static_cast<double>(gray_decode(labels[s]));
    const double f = config.carrier_hz + (d - m_center) * config.symbol_rate_hz;
    for (std::size_t j = s * sps; j < (s + 1) * sps; ++j) {
      si[j] = p.real();
      sq[j] = p.imag();
      sd[j] = d;
      sf[j] = f;
    }
    out.symbols.push_back(p);
    append_label_bits(labels[s], k, out.bits);
  }
  auto& ctx = out.context;
  ctx.set_signal("m(t)", si);
  ctx.set_signal("I(t)", std::move(si));
  ctx.set_signal("Q(t)", std::move(sq));
  ctx.set_signal("d(t)", std::move(sd));
  ctx.set_signal("f(t)", std::move(sf));
  ctx.set_constant("A", config.amplitude);
  ctx.set_constant("A_c", config.amplitude);
  ctx.set_constant("m", config.mod_index);
  ctx.set_constant("n", config.sum_upper);
  ctx.set_constant("f_c", config.carrier_hz);
  ctx.set_constant("f_m", config.message_hz);
  ctx.set_constant("k_f", config.freq_deviation);
  ctx.set_constant("k_p", config.phase_deviation);
  ctx.set_constant("phi", config.carrier_phase);
  ctx.set_constant("phi_c", config.carrier_phase);
  ctx.set_constant("phi_m", config.message_phase);
  return out;
}

FormulaContext formula_context(const SchemeConfig& config) {
  const SchemeKind base = config.symbol_scheme();
  return formula_context(config, bits_to_labels(config_bits(config), base));
}

SampledSignal modulate_formula(const dsl::Expression& expr, const FormulaContext& ctx, const SchemeConfig& config) {
  auto result = dsl::evaluate(expr, ctx.context, ctx.grid);
  SampledSignal s;
  s.sample_rate_hz = config.sample_rate_hz();
  s.symbol_rate_hz = config.symbol_rate_hz;
  s.i = std::move(result.samples);
  s.origin_bits = ctx.bits;
  s.origin_symbols = ctx.symbols;
  s.guard_count = result.guard_count + result.invalid_count;
  s.gain = 1.0;
  return s;
}

SampledSignal modulate_formula(const SchemeConfig& config) {
  config.validate();
  return modulate_formula(dsl::parse(config.formula), formula_context(config), config);
}

SampledSignal modulate(const SchemeConfig& config) {
  return config.kind == SchemeKind::kFormula ? modulate_formula(config) : modulate_reference(config);
}

SampledSignal normalize_power(const SampledSignal& signal, double target_power, double* factor) {
  const double p = signal.power();
  if (!(p > 0.0) || !std::isfinite(p)) throw SchemeError("cannot normalize a zero-power signal");
  if (!(target_power > 0.0)) throw SchemeError("target power must be positive");
  const double scale = std::sqrt(target_power / p);
  if (factor) *factor = scale;
  return signal.scaled(scale);
}

}  // namespace modwave::synth
