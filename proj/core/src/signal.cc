#include "modwave/signal.h"

#include <cmath>

namespace modwave {

double SampledSignal::power() const {
  if (i.empty()) return 0.0;
  double acc = 0.0;
  for (double x : i) acc += x * x;
  for (double x : q) acc += x * x;
  return acc / static_cast<double>(i.size());
}

SampledSignal SampledSignal::scaled(double factor) const {
  SampledSignal out = *this;
  for (double& x : out.i) x *= factor;
  for (double& x : out.q) x *= factor;
  out.gain *= factor;
  return out;
}

SampledSignal SampledSignal::with_samples(std::vector<double> i_samples,
                                          std::vector<double> q_samples) const {
  SampledSignal out;
  out.i = std::move(i_samples);
  out.q = std::move(q_samples);
  out.sample_rate_hz = sample_rate_hz;
  out.origin_bits = origin_bits;
  out.origin_symbols = origin_symbols;
  out.symbol_rate_hz = symbol_rate_hz;
  out.gain = gain;
  out.guard_count = guard_count;
  return out;
}

bool all_finite(const SampledSignal& s) {
  for (double x : s.i) {
    if (!std::isfinite(x)) return false;
  }
  for (double x : s.q) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace modwave
