#ifndef MODWAVE_METRICS_SPECTRUM_H_
#define MODWAVE_METRICS_SPECTRUM_H_

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "modwave/signal.h"

namespace modwave::metrics {

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Window { kHann, kRectangular };

std::string_view window_name(Window w);
Window parse_window(std::string_view name);  // "hann" | "rectangular"
// Periodic window of length n.
std::vector<double> window_samples(Window w, std::size_t n);

// Power spectral density in power per Hz. Real signals are one-sided
// (0 .. fs/2, interior bins doubled); complex signals two-sided and
// ordered from -fs/2 upward.
struct PsdEstimate {
  std::vector<double> frequencies_hz;
  std::vector<double> density;
  std::size_t segment_length = 0;
  double overlap_fraction = 0.0;
  Window window = Window::kHann;
  bool one_sided = true;

  double bin_width_hz() const;
};

struct WelchOptions {
  std::size_t segment_length = 256;
  double overlap_fraction = 0.5;
  Window window = Window::kHann;
};

// Averaged modified periodograms, density-scaled by 1 / (fs * sum(w^2)) so
// that the PSD integrates to the mean-square power. Throws MetricsError
// when the segment is longer than the signal or the overlap is outside
// [0, 0.9].
PsdEstimate welch_psd(const SampledSignal& signal, const WelchOptions& options = {});

// Sum of density * bin width.
double integrated_power(const PsdEstimate& psd);

// Occupied bandwidth: each bin stands for the band [f - df/2, f + df/2];
// the bins from the one where the cumulative power first reaches
// (1 - fraction) / 2 of the total to the one where it reaches
// (1 + fraction) / 2 are counted, and the result is their count times df.
// A single tone therefore measures one bin width, and a flat band whose
// edge bins each hold more than the tail share measures its full width.
// Throws MetricsError for fraction outside (0, 1) or an all-zero PSD.
double occupied_bandwidth(const PsdEstimate& psd, double fraction = 0.99);

// |STFT|^2 with a periodic Hann window, scaled like welch_psd. power[f][j]
// is bin f of frame j; frames start every `hop` samples and stay inside
// the signal; frame_times_s are frame centres.
struct Spectrogram {
  std::vector<double> frequencies_hz;
  std::vector<double> frame_times_s;
  std::vector<std::vector<double>> power;
};

Spectrogram spectrogram(const SampledSignal& signal, std::size_t fft_length, std::size_t hop);

// CSV writers: PSD `freq_hz,power_density`; spectrogram header row
// `freq_hz,<frame time>...` then one row per frequency bin.
void write_psd_csv(std::ostream& out, const PsdEstimate& psd);
void write_spectrogram_csv(std::ostream& out, const Spectrogram& s);

}  // namespace modwave::metrics

#endif  // MODWAVE_METRICS_SPECTRUM_H_
