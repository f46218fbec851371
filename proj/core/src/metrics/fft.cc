#include "fft.h"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace modwave::metrics::internal {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), plan_(nullptr) {
  if (n == 0) throw std::invalid_argument("FFT length must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_complex* in = fftw_alloc_complex(n);
  fftw_complex* out = fftw_alloc_complex(n);
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  if (!plan_) throw std::runtime_error("FFTW could not create a plan");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void Fft::forward(const std::vector<std::complex<double>>& in, std::vector<std::complex<double>>& out) const {
  if (in.size() != n_) throw std::invalid_argument("FFT input length mismatch");
  out.resize(n_);
  // std::complex<double> is layout-compatible with fftw_complex. FFTW does
  // not write to the input of an out-of-place complex transform.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_), src, dst);
}

}  // namespace modwave::metrics::internal
