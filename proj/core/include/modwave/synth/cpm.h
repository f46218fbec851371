#ifndef MODWAVE_SYNTH_CPM_H_
#define MODWAVE_SYNTH_CPM_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modwave/synth/scheme.h"

namespace modwave::synth {

// Binary continuous-phase modulation with modulation index h and a
// frequency pulse spanning L symbols. During symbol n the excess phase is
//   theta_n + 2 pi h * sum_{l=0}^{L-1} a_{n-l} q(t - (n-l) T),
// where a = 2 * bit - 1, q is the integrated frequency pulse (q(LT) = 1/2)
// and theta_{n+1} = theta_n + pi h a_{n-L+1}. Symbols before the first are
// taken as a = +1 and theta_0 = 0.
//
// The in-symbol term depends only on the L most recent symbols, so it is
// tabulated once per pattern. Pattern bit l (LSB = current symbol) holds
// the bit of a_{n-l}.
class CpmModel {
 public:
  // MSK: rectangular pulse, L = 1. GMSK: Gaussian pulse with the config's BT
  // and span. h = 1/2 for both.
  static CpmModel for_scheme(const SchemeConfig& config);

  int memory() const { return memory_; }
  int samples_per_symbol() const { return sps_; }
  double h() const { return h_; }
  std::size_t pattern_count() const { return std::size_t{1} << memory_; }
  // Excess phase contributed inside the symbol by `pattern` at sample k.
  double pattern_phase(std::uint32_t pattern, int k) const {
    return phase_[pattern * static_cast<std::size_t>(sps_) + static_cast<std::size_t>(k)];
  }
  // Phase-state increment when the oldest symbol of `pattern` leaves the
  // window: pi h a_{n-L+1}.
  double state_step(std::uint32_t pattern) const;
  // q(tau) in units of symbol periods, for tests.
  double q(double tau_symbols) const;

 private:
  CpmModel(double h, int memory, int sps, std::vector<double> q_table, int q_oversample);

  double h_;
  int memory_;
  int sps_;
  std::vector<double> q_table_;  // q sampled every 1/(sps*q_oversample) symbol
  int q_oversample_;
  std::vector<double> phase_;
};

}  // namespace modwave::synth

#endif  // MODWAVE_SYNTH_CPM_H_
