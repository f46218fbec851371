#ifndef MODWAVE_COSTMODEL_COST_H_
#define MODWAVE_COSTMODEL_COST_H_

#include <cstddef>
#include <stdexcept>

#include <nlohmann/json_fwd.hpp>

#include "modwave/dsl/expression.h"

namespace modwave::costmodel {

class CostError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs of the latency and power models. `amplifier_efficiency` is the
// power amplifier's efficiency, unrelated to spectral efficiency.
struct CostInputs {
  double n_ops = 1e6;                 // operations per run
  double cpu_hz = 1e9;                // f_cpu
  double data_bits = 1e3;             // D
  double bandwidth_bps = 1e6;         // B
  double queuing_delay_s = 0.0;       // L_q, a configured constant
  double efficiency_factor = 1e-21;   // alpha
  double supply_voltage = 1.0;        // V
  double transmit_power_w = 0.1;      // P_t
  double amplifier_efficiency = 0.5;  // in (0, 1]
  double idle_power_w = 0.01;         // P_idle

  // All strictly positive except L_q >= 0, and amplifier efficiency <= 1.
  // Throws CostError naming the first offending field.
  void validate() const;
};

struct Latency {
  double processing_s = 0.0;    // n_ops / f_cpu
  double transmission_s = 0.0;  // D / B
  double queuing_s = 0.0;       // L_q
  double total_s = 0.0;         // sum of the three
};

struct Power {
  double processing_w = 0.0;    // alpha * n_ops * V^2 * f_cpu
  double transmission_w = 0.0;  // P_t / amplifier efficiency
  double idle_w = 0.0;          // P_idle
  double total_w = 0.0;         // sum of the three
};

Latency latency(const CostInputs& inputs);
Power power(const CostInputs& inputs);

// Operations for a whole waveform: op_count(expr) per sample.
double waveform_ops(const dsl::Expression& expr, std::size_t sample_count);

void to_json(nlohmann::json& j, const CostInputs& inputs);
// Missing keys keep their defaults; wrong types throw CostError.
void from_json(const nlohmann::json& j, CostInputs& inputs);
void to_json(nlohmann::json& j, const Latency& l);
void to_json(nlohmann::json& j, const Power& p);

// {"inputs": ..., "latency": ..., "power": ...}, the value stored under the
// report's "cost" key.
nlohmann::json cost_report(const CostInputs& inputs);

}  // namespace modwave::costmodel

#endif  // MODWAVE_COSTMODEL_COST_H_
