#include "modwave/synth/cpm.h"

#include <cmath>
#include <numbers>

namespace modwave::synth {
namespace {

constexpr int kOversample = 32;

// Gaussian frequency pulse centred on the L-symbol window, t in symbols.
double gaussian_pulse(double t, double bt, int span) {
  const double c = 2.0 * std::numbers::pi * bt / std::sqrt(std::log(2.0));
  const double u = t - 0.5 * span;
  // Q(x) = erfc(x / sqrt2) / 2
  auto qfunc = [](double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); };
  return qfunc(c * (u - 0.5)) - qfunc(c * (u + 0.5));
}

}  // namespace

CpmModel::CpmModel(double h, int memory, int sps, std::vector<double> q_table, int q_oversample)
    : h_(h), memory_(memory), sps_(sps), q_table_(std::move(q_table)), q_oversample_(q_oversample) {
  const std::size_t patterns = std::size_t{1} << memory_;
  phase_.assign(patterns * static_cast<std::size_t>(sps_), 0.0);
  for (std::uint32_t p = 0; p < patterns; ++p) {
    for (int k = 0; k < sps_; ++k) {
      double acc = 0.0;
      for (int l = 0; l < memory_; ++l) {
        const double a = ((p >> l) & 1u) ? 1.0 : -1.0;
        acc += a * q(static_cast<double>(k) / sps_ + l);
      }
      phase_[p * static_cast<std::size_t>(sps_) + static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * h_ * acc;
    }
  }
}

CpmModel CpmModel::for_scheme(const SchemeConfig& config) {
  const int sps = config.samples_per_symbol;
  const bool gaussian = config.kind == SchemeKind::kGmsk;
  const int memory = gaussian ? config.gmsk_span_symbols : 1;
  const int per_symbol = sps * kOversample;
  const std::size_t n = static_cast<std::size_t>(memory * per_symbol);
  // Integrate the frequency pulse with the midpoint rule, then scale so the
  // total area is exactly 1/2 (truncation of the Gaussian tails).
  std::vector<double> table(n + 1, 0.0);
  const double dt = 1.0 / per_symbol;
  for (std::size_t j = 0; j < n; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) * dt;
    const double g = gaussian ? gaussian_pulse(mid, config.gmsk_bt, memory) : 1.0;
    table[j + 1] = table[j] + g * dt;
  }
  const double total = table[n];
  for (double& v : table) v *= 0.5 / total;
  return CpmModel(0.5, memory, sps, std::move(table), kOversample);
}

double CpmModel::q(double tau_symbols) const {
  if (tau_symbols <= 0.0) return 0.0;
  const double pos = tau_symbols * sps_ * q_oversample_;
  const std::size_t j = static_cast<std::size_t>(pos);
  if (j + 1 >= q_table_.size()) return 0.5;
  const double frac = pos - static_cast<double>(j);
  return q_table_[j] + frac * (q_table_[j + 1] - q_table_[j]);
}

double CpmModel::state_step(std::uint32_t pattern) const {
  const double a = ((pattern >> (memory_ - 1)) & 1u) ? 1.0 : -1.0;
  return std::numbers::pi * h_ * a;
}

}  // namespace modwave::synth
