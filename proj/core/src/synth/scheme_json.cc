#include <string>

#include <nlohmann/json.hpp>

#include "modwave/synth/scheme.h"

namespace modwave::synth {
namespace {

double number(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw SchemeError("scheme field '" + key + "' must be a number");
  return v.get<double>();
}

long long integer(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw SchemeError("scheme field '" + key + "' must be an integer");
  return v.get<long long>();
}

std::string text(const nlohmann::json& v, const std::string& key) {
  if (!v.is_string()) throw SchemeError("scheme field '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

void to_json(nlohmann::json& j, const SchemeConfig& c) {
  j = nlohmann::json::object();
  j["scheme"] = c.label();
  j["carrier_hz"] = c.carrier_hz;
  j["symbol_rate_hz"] = c.symbol_rate_hz;
  j["samples_per_symbol"] = c.samples_per_symbol;
  j["symbol_count"] = c.symbol_count;
  j["amplitude"] = c.amplitude;
  j["mod_index"] = c.mod_index;
  j["message_hz"] = c.message_hz;
  j["freq_deviation"] = c.freq_deviation;
  j["phase_deviation"] = c.phase_deviation;
  j["carrier_phase"] = c.carrier_phase;
  j["message_phase"] = c.message_phase;
  j["gmsk_bt"] = c.gmsk_bt;
  j["gmsk_span_symbols"] = c.gmsk_span_symbols;
  j["chirp_sweep_hz"] = c.chirp_sweep_hz;
  j["pulse"] = c.pulse == PulseShape::kRootRaisedCosine ? "rrc" : "rect";
  j["rolloff"] = c.rolloff;
  j["rrc_span_symbols"] = c.rrc_span_symbols;
  if (c.kind == SchemeKind::kFormula) j["formula"] = c.formula;
  j["base"] = std::string(scheme_name(c.base));
  j["sum_upper"] = c.sum_upper;
  j["seed"] = c.seed;
}

void from_json(const nlohmann::json& j, SchemeConfig& c) {
  if (!j.is_object()) throw SchemeError("scheme config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "scheme") {
      std::string id;
      c.kind = parse_scheme(text(v, key), &id);
      if (c.kind == SchemeKind::kFormula) c.formula_id = id;
    } else if (key == "carrier_hz") {
      c.carrier_hz = number(v, key);
    } else if (key == "symbol_rate_hz") {
      c.symbol_rate_hz = number(v, key);
    } else if (key == "samples_per_symbol") {
      c.samples_per_symbol = static_cast<int>(integer(v, key));
    } else if (key == "symbol_count") {
      const long long n = integer(v, key);
      if (n < 0) throw SchemeError("symbol_count must be non-negative");
      c.symbol_count = static_cast<std::size_t>(n);
    } else if (key == "amplitude") {
      c.amplitude = number(v, key);
    } else if (key == "mod_index") {
      c.mod_index = number(v, key);
    } else if (key == "message_hz") {
      c.message_hz = number(v, key);
    } else if (key == "freq_deviation") {
      c.freq_deviation = number(v, key);
    } else if (key == "phase_deviation") {
      c.phase_deviation = number(v, key);
    } else if (key == "carrier_phase") {
      c.carrier_phase = number(v, key);
    } else if (key == "message_phase") {
      c.message_phase = number(v, key);
    } else if (key == "gmsk_bt") {
      c.gmsk_bt = number(v, key);
    } else if (key == "gmsk_span_symbols") {
      c.gmsk_span_symbols = static_cast<int>(integer(v, key));
    } else if (key == "chirp_sweep_hz") {
      c.chirp_sweep_hz = number(v, key);
    } else if (key == "pulse") {
      const std::string p = text(v, key);
      if (p == "rect") {
        c.pulse = PulseShape::kRectangular;
      } else if (p == "rrc") {
        c.pulse = PulseShape::kRootRaisedCosine;
      } else {
        throw SchemeError("pulse must be \"rect\" or \"rrc\"");
      }
    } else if (key == "rolloff") {
      c.rolloff = number(v, key);
    } else if (key == "rrc_span_symbols") {
      c.rrc_span_symbols = static_cast<int>(integer(v, key));
    } else if (key == "formula") {
      c.formula = text(v, key);
    } else if (key == "base") {
      c.base = parse_scheme(text(v, key), nullptr);
    } else if (key == "sum_upper") {
      c.sum_upper = static_cast<int>(integer(v, key));
    } else if (key == "seed") {
      const long long s = integer(v, key);
      if (s < 0) throw SchemeError("seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else {
      throw SchemeError("unknown scheme field '" + key + "'");
    }
  }
}

}  // namespace modwave::synth
