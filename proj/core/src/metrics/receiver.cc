#include "modwave/metrics/receiver.h"

#include <cmath>
#include <limits>
#include <string>

#include "modwave/dsl/evaluate.h"
#include "modwave/metrics/spectrum.h"
#include "modwave/synth/constellation.h"
#include "modwave/synth/cpm.h"
#include "modwave/synth/modulate.h"

namespace modwave::metrics {
namespace {

using synth::SchemeConfig;
using synth::SchemeKind;

std::size_t symbol_count_of(const SampledSignal& received, const SchemeConfig& config) {
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  return received.size() / sps;
}

void check_gain(double gain) {
  if (!(gain > 0.0) || !std::isfinite(gain)) throw MetricsError("receiver needs a positive signal gain");
}

// Per-symbol metric g<r, c> - g^2 |c|^2 / 2 over symbol n.
double symbol_metric(const std::vector<double>& r, const std::vector<double>& c, std::size_t begin, std::size_t end,
                     double gain) {
  double corr = 0.0, energy = 0.0;
  for (std::size_t k = begin; k < end; ++k) {
    corr += r[k] * c[k];
    energy += c[k] * c[k];
  }
  return gain * corr - 0.5 * gain * gain * energy;
}

Bits demodulate_linear(const SampledSignal& received, const SchemeConfig& config) {
  const auto points = extract_constellation(received, config);
  const auto& alphabet = synth::constellation(config.kind);
  const int k = synth::bits_per_symbol(config.kind);
  Bits bits;
  bits.reserve(points.size() * static_cast<std::size_t>(k));
  for (const auto& z : points) synth::append_label_bits(synth::nearest_label(alphabet, z), k, bits);
  return bits;
}

// Candidate waveforms are generated for the whole run per label and
// compared symbol by symbol.
Bits demodulate_by_candidates(const SampledSignal& received, const SchemeConfig& config, double gain,
                              const std::vector<std::vector<double>>& candidates, int bits_per_symbol) {
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const std::size_t symbols = symbol_count_of(received, config);
  Bits bits;
  bits.reserve(symbols * static_cast<std::size_t>(bits_per_symbol));
  for (std::size_t n = 0; n < symbols; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    std::uint32_t best_label = 0;
    for (std::uint32_t c = 0; c < candidates.size(); ++c) {
      const double m = symbol_metric(received.i, candidates[c], n * sps, (n + 1) * sps, gain);
      if (m > best) {
        best = m;
        best_label = c;
      }
    }
    synth::append_label_bits(best_label, bits_per_symbol, bits);
  }
  return bits;
}

Bits demodulate_fsk(const SampledSignal& received, const SchemeConfig& config, double gain) {
  const int m = synth::alphabet_size(config.kind);
  const double fs = config.sample_rate_hz();
  std::vector<std::vector<double>> candidates(static_cast<std::size_t>(m), std::vector<double>(received.size()));
  for (int c = 0; c < m; ++c) {
    const double f = synth::fsk_tone_hz(config, static_cast<std::uint32_t>(c));
    for (std::size_t k = 0; k < received.size(); ++k) candidates[c][k] = std::cos(synth::carrier_angle(f, k, fs));
  }
  return demodulate_by_candidates(received, config, gain, candidates, synth::bits_per_symbol(config.kind));
}

Bits demodulate_chirp(const SampledSignal& received, const SchemeConfig& config, double gain) {
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const double fs = config.sample_rate_hz();
  std::vector<std::vector<double>> candidates(2, std::vector<double>(received.size()));
  for (std::size_t k = 0; k < received.size(); ++k) {
    const double w = synth::carrier_angle(config.carrier_hz, k, fs);
    const double tau = static_cast<double>(k % sps) / fs;
    candidates[0][k] = std::cos(w + synth::chirp_phase(config, false, tau));
    candidates[1][k] = std::cos(w + synth::chirp_phase(config, true, tau));
  }
  return demodulate_by_candidates(received, config, gain, candidates, 1);
}

// Viterbi over (phase state, L-1 previous bits). Phase states are
// multiples of pi/2 because h = 1/2.
Bits demodulate_cpm(const SampledSignal& received, const SchemeConfig& config, double gain) {
  const synth::CpmModel model = synth::CpmModel::for_scheme(config);
  const int memory = model.memory();
  const std::uint32_t patterns = static_cast<std::uint32_t>(model.pattern_count());
  const std::uint32_t prev_count = 1u << (memory - 1);
  const std::uint32_t states = 4 * prev_count;
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const std::size_t symbols = symbol_count_of(received, config);
  const double fs = config.sample_rate_hz();

  std::vector<double> cpsi(patterns * sps), spsi(patterns * sps);
  for (std::uint32_t p = 0; p < patterns; ++p) {
    for (std::size_t k = 0; k < sps; ++k) {
      const double psi = model.pattern_phase(p, static_cast<int>(k));
      cpsi[p * sps + k] = std::cos(psi);
      spsi[p * sps + k] = std::sin(psi);
    }
  }
  const double half_energy = 0.5 * static_cast<double>(sps);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> metric(states, neg_inf), next(states);
  metric[0 * prev_count + (prev_count - 1)] = 0.0;  // theta 0, previous symbols +1
  std::vector<std::uint32_t> from(symbols * states);
  std::vector<double> corr_c(patterns), corr_s(patterns), dbl(patterns);

  for (std::size_t n = 0; n < symbols; ++n) {
    std::fill(corr_c.begin(), corr_c.end(), 0.0);
    std::fill(corr_s.begin(), corr_s.end(), 0.0);
    std::fill(dbl.begin(), dbl.end(), 0.0);
    for (std::size_t k = 0; k < sps; ++k) {
      const std::size_t idx = n * sps + k;
      const double w = synth::carrier_angle(config.carrier_hz, idx, fs);
      const double cw = std::cos(w), sw = std::sin(w);
      const double r = received.i[idx];
      for (std::uint32_t p = 0; p < patterns; ++p) {
        const double c = cw * cpsi[p * sps + k] - sw * spsi[p * sps + k];
        const double s = sw * cpsi[p * sps + k] + cw * spsi[p * sps + k];
        corr_c[p] += r * c;
        corr_s[p] += r * s;
        dbl[p] += c * c - s * s;
      }
    }
    std::fill(next.begin(), next.end(), neg_inf);
    for (std::uint32_t st = 0; st < states; ++st) {
      if (metric[st] == neg_inf) continue;
      const std::uint32_t theta = st / prev_count;
      const std::uint32_t prev = st % prev_count;
      // cos/sin of theta * pi/2, exact.
      static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
      static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
      for (std::uint32_t bit = 0; bit < 2; ++bit) {
        const std::uint32_t p = ((prev << 1) | bit) & (patterns - 1);
        const double corr = kCos[theta] * corr_c[p] - kSin[theta] * corr_s[p];
        const double energy = half_energy + 0.5 * (theta % 2 == 0 ? 1.0 : -1.0) * dbl[p];
        const double m = metric[st] + gain * corr - 0.5 * gain * gain * energy;
        const std::uint32_t oldest = (p >> (memory - 1)) & 1u;
        const std::uint32_t next_theta = (theta + (oldest ? 1u : 3u)) % 4u;
        const std::uint32_t ns = next_theta * prev_count + (p & (prev_count - 1));
        if (m > next[ns]) {
          next[ns] = m;
          from[n * states + ns] = (st << 1) | bit;
        }
      }
    }
    metric.swap(next);
  }

  std::uint32_t st = 0;
  for (std::uint32_t s = 1; s < states; ++s) {
    if (metric[s] > metric[st]) st = s;
  }
  Bits bits(symbols);
  for (std::size_t n = symbols; n-- > 0;) {
    const std::uint32_t entry = from[n * states + st];
    bits[n] = static_cast<std::uint8_t>(entry & 1u);
    st = entry >> 1;
  }
  return bits;
}

}  // namespace

std::vector<Complex> extract_constellation(const SampledSignal& signal, const SchemeConfig& config) {
  config.validate();
  check_gain(signal.gain);
  const std::size_t sps = static_cast<std::size_t>(config.samples_per_symbol);
  const std::size_t symbols = symbol_count_of(signal, config);
  const double fs = config.sample_rate_hz();
  std::vector<Complex> baseband(signal.size());
  for (std::size_t k = 0; k < signal.size(); ++k) {
    const double w = synth::carrier_angle(config.carrier_hz, k, fs);
    baseband[k] = 2.0 * signal.i[k] * Complex(std::cos(w), -std::sin(w));
  }
  std::vector<Complex> points(symbols);
  if (config.pulse == synth::PulseShape::kRootRaisedCosine && synth::is_linear(config.symbol_scheme())) {
    const auto p = synth::rrc_pulse(config);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(p.size() / 2);
    const std::ptrdiff_t n_total = static_cast<std::ptrdiff_t>(signal.size());
    for (std::size_t n = 0; n < symbols; ++n) {
      const std::ptrdiff_t centre = static_cast<std::ptrdiff_t>(n * sps + sps / 2);
      Complex acc = 0.0;
      for (std::ptrdiff_t j = -half; j <= half; ++j) {
        const std::ptrdiff_t k = centre + j;
        if (k >= 0 && k < n_total) acc += p[static_cast<std::size_t>(j + half)] * baseband[static_cast<std::size_t>(k)];
      }
      points[n] = acc / (static_cast<double>(sps) * signal.gain);
    }
    return points;
  }
  for (std::size_t n = 0; n < symbols; ++n) {
    Complex acc = 0.0;
    for (std::size_t k = n * sps; k < (n + 1) * sps; ++k) acc += baseband[k];
    points[n] = acc / (static_cast<double>(sps) * signal.gain);
  }
  return points;
}

Bits correlation_demodulate(const SampledSignal& received, const dsl::Expression& expr, const SchemeConfig& config,
                            double gain) {
  check_gain(gain);
  const SchemeKind base = config.symbol_scheme();
  const int m = synth::alphabet_size(base);
  const std::size_t symbols = symbol_count_of(received, config);
  std::vector<std::vector<double>> candidates;
  candidates.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) {
    const std::vector<std::uint32_t> labels(symbols, static_cast<std::uint32_t>(c));
    const auto ctx = synth::formula_context(config, labels);
    candidates.push_back(dsl::evaluate(expr, ctx.context, ctx.grid).samples);
  }
  return demodulate_by_candidates(received, config, gain, candidates, synth::bits_per_symbol(base));
}

Bits demodulate(const SampledSignal& received, const SchemeConfig& config, const SampledSignal& reference) {
  config.validate();
  if (synth::is_analog(config.kind)) {
    throw MetricsError(std::string(synth::scheme_name(config.kind)) + " carries no bits; BER is undefined");
  }
  if (reference.origin_bits.empty()) throw MetricsError("reference signal has no ground-truth bits");
  if (received.size() != reference.size()) throw MetricsError("received and reference lengths differ");
  const double gain = received.gain;
  check_gain(gain);
  Bits bits;
  if (config.kind == SchemeKind::kFormula) {
    bits = correlation_demodulate(received, dsl::parse(config.formula), config, gain);
  } else if (synth::is_linear(config.kind)) {
    bits = demodulate_linear(received, config);
  } else {
    switch (config.kind) {
      case SchemeKind::kBfsk:
      case SchemeKind::kFsk:
        bits = demodulate_fsk(received, config, gain);
        break;
      case SchemeKind::kMsk:
      case SchemeKind::kGmsk:
        bits = demodulate_cpm(received, config, gain);
        break;
      case SchemeKind::kChirp:
        bits = demodulate_chirp(received, config, gain);
        break;
      default:
        throw MetricsError("no demodulator for " + std::string(synth::scheme_name(config.kind)));
    }
  }
  if (bits.size() != reference.origin_bits.size()) {
    throw MetricsError("demodulated " + std::to_string(bits.size()) + " bits, expected " +
                       std::to_string(reference.origin_bits.size()));
  }
  return bits;
}

std::size_t bit_errors(const Bits& tx, const Bits& rx) {
  if (tx.size() != rx.size()) throw MetricsError("bit streams differ in length");
  std::size_t errors = 0;
  for (std::size_t k = 0; k < tx.size(); ++k) errors += (tx[k] & 1u) != (rx[k] & 1u) ? 1 : 0;
  return errors;
}

double ber(const Bits& tx, const Bits& rx) {
  if (tx.empty()) throw MetricsError("BER of an empty bit stream");
  return static_cast<double>(bit_errors(tx, rx)) / static_cast<double>(tx.size());
}

}  // namespace modwave::metrics
