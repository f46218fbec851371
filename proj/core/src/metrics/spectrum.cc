#include "modwave/metrics/spectrum.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>

#include "fft.h"

namespace modwave::metrics {
namespace {

using internal::Fft;

struct Periodograms {
  std::vector<double> sum;  // accumulated |X_k|^2, natural FFT order
  std::size_t count = 0;
};

// |FFT|^2 of one windowed frame starting at `start`.
void frame_power(const SampledSignal& s, std::size_t start, const std::vector<double>& w, const Fft& fft,
                 std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out,
                 std::vector<double>& power) {
  const std::size_t n = w.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double q = s.is_complex() ? s.q[start + j] : 0.0;
    in[j] = {w[j] * s.i[start + j], w[j] * q};
  }
  fft.forward(in, out);
  power.resize(n);
  for (std::size_t k = 0; k < n; ++k) power[k] = std::norm(out[k]);
}

// Converts a natural-order |X|^2 row into a density spectrum.
void to_density(const std::vector<double>& raw, double scale, bool one_sided, double fs,
                std::vector<double>& freqs, std::vector<double>& density) {
  const std::size_t n = raw.size();
  freqs.clear();
  density.clear();
  if (one_sided) {
    const std::size_t bins = n / 2 + 1;
    for (std::size_t k = 0; k < bins; ++k) {
      const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
      freqs.push_back(fs * static_cast<double>(k) / static_cast<double>(n));
      density.push_back(raw[k] * scale * (edge ? 1.0 : 2.0));
    }
    return;
  }
  // Two-sided, shifted so frequencies ascend from -fs/2.
  const std::size_t neg = n / 2;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = (j + n - neg) % n;
    const double f = k >= n - neg ? static_cast<double>(k) - static_cast<double>(n) : static_cast<double>(k);
    freqs.push_back(fs * f / static_cast<double>(n));
    density.push_back(raw[k] * scale);
  }
}

}  // namespace

std::string_view window_name(Window w) { return w == Window::kHann ? "hann" : "rectangular"; }

Window parse_window(std::string_view name) {
  if (name == "hann") return Window::kHann;
  if (name == "rectangular" || name == "boxcar") return Window::kRectangular;
  throw MetricsError("unknown window '" + std::string(name) + "'");
}

std::vector<double> window_samples(Window w, std::size_t n) {
  std::vector<double> out(n, 1.0);
  if (w == Window::kHann) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    }
  }
  return out;
}

double PsdEstimate::bin_width_hz() const {
  if (frequencies_hz.size() < 2) return 0.0;
  return frequencies_hz[1] - frequencies_hz[0];
}

PsdEstimate welch_psd(const SampledSignal& signal, const WelchOptions& options) {
  const std::size_t n = options.segment_length;
  if (n < 2) throw MetricsError("segment length must be at least 2");
  if (n > signal.size()) {
    throw MetricsError("segment length " + std::to_string(n) + " exceeds signal length " + std::to_string(signal.size()));
  }
  if (!(options.overlap_fraction >= 0.0 && options.overlap_fraction <= 0.9)) {
    throw MetricsError("overlap fraction must be in [0, 0.9]");
  }
  if (!(signal.sample_rate_hz > 0.0)) throw MetricsError("signal has no sample rate");
  const auto w = window_samples(options.window, n);
  double w2 = 0.0;
  for (double v : w) w2 += v * v;
  const std::size_t hop =
      std::max<std::size_t>(1, n - static_cast<std::size_t>(std::llround(options.overlap_fraction * n)));

  const Fft fft(n);
  std::vector<std::complex<double>> in(n), out(n);
  std::vector<double> frame, acc(n, 0.0);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + n <= signal.size(); start += hop) {
    frame_power(signal, start, w, fft, in, out, frame);
    for (std::size_t k = 0; k < n; ++k) acc[k] += frame[k];
    ++segments;
  }
  PsdEstimate psd;
  psd.segment_length = n;
  psd.overlap_fraction = options.overlap_fraction;
  psd.window = options.window;
  psd.one_sided = !signal.is_complex();
  const double scale = 1.0 / (signal.sample_rate_hz * w2 * static_cast<double>(segments));
  to_density(acc, scale, psd.one_sided, signal.sample_rate_hz, psd.frequencies_hz, psd.density);
  return psd;
}

double integrated_power(const PsdEstimate& psd) {
  double total = 0.0;
  for (double d : psd.density) total += d;
  return total * psd.bin_width_hz();
}

double occupied_bandwidth(const PsdEstimate& psd, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw MetricsError("occupied-bandwidth fraction must be in (0, 1)");
  double total = 0.0;
  for (double d : psd.density) total += d;
  if (!(total > 0.0)) throw MetricsError("occupied bandwidth of an all-zero PSD");
  const double lower_target = 0.5 * (1.0 - fraction) * total;
  const double upper_target = 0.5 * (1.0 + fraction) * total;
  std::size_t lo = 0, hi = psd.density.size() - 1;
  double cum = 0.0;
  bool found_lo = false;
  for (std::size_t k = 0; k < psd.density.size(); ++k) {
    cum += psd.density[k];
    if (!found_lo && cum > lower_target) {
      lo = k;
      found_lo = true;
    }
    if (cum >= upper_target) {
      hi = k;
      break;
    }
  }
  return static_cast<double>(hi - lo + 1) * psd.bin_width_hz();
}

Spectrogram spectrogram(const SampledSignal& signal, std::size_t fft_length, std::size_t hop) {
  if (fft_length < 2 || fft_length > signal.size()) throw MetricsError("spectrogram FFT length out of range");
  if (hop == 0) throw MetricsError("spectrogram hop must be positive");
  if (!(signal.sample_rate_hz > 0.0)) throw MetricsError("signal has no sample rate");
  const auto w = window_samples(Window::kHann, fft_length);
  double w2 = 0.0;
  for (double v : w) w2 += v * v;
  const double scale = 1.0 / (signal.sample_rate_hz * w2);
  const Fft fft(fft_length);
  std::vector<std::complex<double>> in(fft_length), out(fft_length);
  std::vector<double> raw, freqs, density;

  Spectrogram s;
  for (std::size_t start = 0; start + fft_length <= signal.size(); start += hop) {
    frame_power(signal, start, w, fft, in, out, raw);
    to_density(raw, scale, !signal.is_complex(), signal.sample_rate_hz, freqs, density);
    if (s.power.empty()) {
      s.frequencies_hz = freqs;
      s.power.resize(freqs.size());
    }
    for (std::size_t f = 0; f < density.size(); ++f) s.power[f].push_back(density[f]);
    s.frame_times_s.push_back((static_cast<double>(start) + 0.5 * static_cast<double>(fft_length)) /
                              signal.sample_rate_hz);
  }
  return s;
}

void write_psd_csv(std::ostream& out, const PsdEstimate& psd) {
  out << "freq_hz,power_density\n";
  char buf[80];
  for (std::size_t k = 0; k < psd.density.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6f,%.9e\n", psd.frequencies_hz[k], psd.density[k]);
    out << buf;
  }
}

void write_spectrogram_csv(std::ostream& out, const Spectrogram& s) {
  char buf[64];
  out << "freq_hz";
  for (double t : s.frame_times_s) {
    std::snprintf(buf, sizeof buf, ",%.6f", t);
    out << buf;
  }
  out << '\n';
  for (std::size_t f = 0; f < s.frequencies_hz.size(); ++f) {
    std::snprintf(buf, sizeof buf, "%.6f", s.frequencies_hz[f]);
    out << buf;
    for (double p : s.power[f]) {
      std::snprintf(buf, sizeof buf, ",%.6e", p);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace modwave::metrics
