#include "modwave/costmodel/cost.h"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

namespace modwave::costmodel {
namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw CostError(std::string(name) + " must be positive and finite");
}

struct Field {
  const char* key;
  double CostInputs::*member;
};

constexpr Field kFields[] = {
    {"n_ops", &CostInputs::n_ops},
    {"f_cpu_hz", &CostInputs::cpu_hz},
    {"data_bits", &CostInputs::data_bits},
    {"bandwidth_bps", &CostInputs::bandwidth_bps},
    {"queuing_delay_s", &CostInputs::queuing_delay_s},
    {"alpha", &CostInputs::efficiency_factor},
    {"supply_voltage", &CostInputs::supply_voltage},
    {"transmit_power_w", &CostInputs::transmit_power_w},
    {"amplifier_efficiency", &CostInputs::amplifier_efficiency},
    {"idle_power_w", &CostInputs::idle_power_w},
};

}  // namespace

void CostInputs::validate() const {
  require_positive(n_ops, "n_ops");
  require_positive(cpu_hz, "f_cpu_hz");
  require_positive(data_bits, "data_bits");
  require_positive(bandwidth_bps, "bandwidth_bps");
  if (!(queuing_delay_s >= 0.0) || !std::isfinite(queuing_delay_s)) {
    throw CostError("queuing_delay_s must be non-negative and finite");
  }
  require_positive(efficiency_factor, "alpha");
  require_positive(supply_voltage, "supply_voltage");
  require_positive(transmit_power_w, "transmit_power_w");
  require_positive(amplifier_efficiency, "amplifier_efficiency");
  if (amplifier_efficiency > 1.0) throw CostError("amplifier_efficiency must not exceed 1");
  require_positive(idle_power_w, "idle_power_w");
}

Latency latency(const CostInputs& in) {
  in.validate();
  Latency l;
  l.processing_s = in.n_ops / in.cpu_hz;
  l.transmission_s = in.data_bits / in.bandwidth_bps;
  l.queuing_s = in.queuing_delay_s;
  l.total_s = l.processing_s + l.transmission_s + l.queuing_s;
  return l;
}

Power power(const CostInputs& in) {
  in.validate();
  Power p;
  p.processing_w = in.efficiency_factor * in.n_ops * in.supply_voltage * in.supply_voltage * in.cpu_hz;
  p.transmission_w = in.transmit_power_w / in.amplifier_efficiency;
  p.idle_w = in.idle_power_w;
  p.total_w = p.processing_w + p.transmission_w + p.idle_w;
  return p;
}

double waveform_ops(const dsl::Expression& expr, std::size_t sample_count) {
  return static_cast<double>(dsl::op_count(expr)) * static_cast<double>(sample_count);
}

void to_json(nlohmann::json& j, const CostInputs& in) {
  j = nlohmann::json::object();
  for (const auto& f : kFields) j[f.key] = in.*f.member;
}

void from_json(const nlohmann::json& j, CostInputs& in) {
  if (!j.is_object()) throw CostError("cost inputs must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& f : kFields) {
      if (key != f.key) continue;
      if (!value.is_number()) throw CostError(std::string("cost input '") + f.key + "' must be a number");
      in.*f.member = value.get<double>();
      known = true;
    }
    if (!known) throw CostError("unknown cost input '" + key + "'");
  }
}

void to_json(nlohmann::json& j, const Latency& l) {
  j = {{"L_p_s", l.processing_s}, {"L_t_s", l.transmission_s}, {"L_q_s", l.queuing_s}, {"L_s", l.total_s}};
}

void to_json(nlohmann::json& j, const Power& p) {
  j = {{"P_proc_w", p.processing_w}, {"P_tx_w", p.transmission_w}, {"P_idle_w", p.idle_w}, {"P_total_w", p.total_w}};
}

nlohmann::json cost_report(const CostInputs& inputs) {
  return {{"inputs", inputs}, {"latency", latency(inputs)}, {"power", power(inputs)}};
}

}  // namespace modwave::costmodel
