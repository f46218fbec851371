#include "modwave/dsl/symbol_table.h"

#include <stdexcept>

namespace modwave::dsl {

std::string_view to_string(SymbolRole role) {
  switch (role) {
    case SymbolRole::kTime: return "time";
    case SymbolRole::kScalar: return "scalar";
    case SymbolRole::kSignal: return "signal";
    case SymbolRole::kMathConstant: return "math-constant";
  }
  return "?";
}

void SymbolTable::add(SymbolInfo info) {
  if (contains(info.name)) {
    throw std::invalid_argument("duplicate symbol '" + info.name + "'");
  }
  const bool time_indexed =
      info.name.size() > 3 && info.name.compare(info.name.size() - 3, 3, "(t)") == 0;
  if (time_indexed != (info.role == SymbolRole::kSignal)) {
    throw std::invalid_argument("symbol '" + info.name +
                                "': signal-valued symbols are exactly those written name(t)");
  }
  entries_.push_back(std::move(info));
}

const SymbolInfo* SymbolTable::find(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

SymbolTable SymbolTable::standard() {
  SymbolTable table;
  table.add({"t", SymbolRole::kTime, "s", "time"});
  table.add({"pi", SymbolRole::kMathConstant, "", "pi"});
  table.add({"f_c", SymbolRole::kScalar, "Hz", "carrier frequency"});
  table.add({"f_m", SymbolRole::kScalar, "Hz", "message frequency"});
  table.add({"f(t)", SymbolRole::kSignal, "Hz", "instantaneous FSK tone frequency"});
  table.add({"A", SymbolRole::kScalar, "", "amplitude"});
  table.add({"A_c", SymbolRole::kScalar, "", "carrier amplitude"});
  table.add({"m", SymbolRole::kScalar, "", "modulation index"});
  table.add({"k_f", SymbolRole::kScalar, "rad/s per unit", "frequency deviation constant"});
  table.add({"k_p", SymbolRole::kScalar, "rad per unit", "phase deviation constant"});
  table.add({"phi", SymbolRole::kScalar, "rad", "phase"});
  table.add({"phi_c", SymbolRole::kScalar, "rad", "carrier phase"});
  table.add({"phi_m", SymbolRole::kScalar, "rad", "message phase"});
  table.add({"d(t)", SymbolRole::kSignal, "", "data symbol index stream"});
  table.add({"I(t)", SymbolRole::kSignal, "", "in-phase baseband stream"});
  table.add({"Q(t)", SymbolRole::kSignal, "", "quadrature baseband stream"});
  table.add({"m(t)", SymbolRole::kSignal, "", "message waveform"});
  table.add({"n", SymbolRole::kScalar, "", "finite-sum upper bound"});
  return table;
}

}  // namespace modwave::dsl
