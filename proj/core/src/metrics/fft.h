#ifndef MODWAVE_METRICS_FFT_H_
#define MODWAVE_METRICS_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace modwave::metrics::internal {

// Forward complex DFT of a fixed length backed by FFTW. Planning goes
// through a process-wide mutex (the FFTW planner is not thread-safe);
// execution uses the new-array interface and may run concurrently.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  // out[k] = sum_j in[j] e^{-2 pi i j k / n}
  void forward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const;

 private:
  std::size_t n_;
  void* plan_;
};

}  // namespace modwave::metrics::internal

#endif  // MODWAVE_METRICS_FFT_H_
