#include "modwave/genlab/grammar.h"

#include <nlohmann/json.hpp>

namespace modwave::genlab {
namespace {

// Kept identical to data/grammar/default.json; a unit test compares them.
constexpr const char* kDefaultGrammar = R"json({
  "formula": [
    {"production": "<carrier_mod>", "weight": 4.0},
    {"production": "<qam_core>", "weight": 3.0},
    {"production": "<qam_core> + (<extra>)", "weight": 2.0},
    {"production": "<carrier_mod> + (<extra>)", "weight": 1.0},
    {"production": "(<carrier_mod>", "weight": 0.4},
    {"production": "<qam_core>) * A", "weight": 0.3},
    {"production": "<carrier_mod> + <undefined>", "weight": 0.35},
    {"production": "<func>(<arg>, <arg>)", "weight": 0.25},
    {"production": "<carrier_mod> + * <term>", "weight": 0.2}
  ],
  "carrier_mod": [
    {"production": "A_c * cos(2 pi f_c t + <phase>)", "weight": 4.0},
    {"production": "<amp> * cos(2 pi f_c t + <phase>)", "weight": 2.0},
    {"production": "<amp> * sin(2 pi f_c t + <phase>)", "weight": 1.0},
    {"production": "A_c * cos(2 pi f(t) * t + <phase>)", "weight": 1.0}
  ],
  "qam_core": [
    {"production": "I(t) * cos(2 pi f_c t) - Q(t) * sin(2 pi f_c t)", "weight": 3.0},
    {"production": "I(t) * cos(2 pi f_c t + <phase>) - Q(t) * sin(2 pi f_c t + <phase>)", "weight": 1.0}
  ],
  "phase": [
    {"production": "pi * d(t)", "weight": 4.0},
    {"production": "phi", "weight": 2.0},
    {"production": "(pi / 2) * d(t)", "weight": 1.5},
    {"production": "k_p * m(t)", "weight": 1.0},
    {"production": "k_f * integral(m(t), t)", "weight": 0.5},
    {"production": "<phase> + <phase>", "weight": 0.5}
  ],
  "amp": [
    {"production": "A_c", "weight": 3.0},
    {"production": "A", "weight": 2.0},
    {"production": "(1 + m * cos(2 pi f_m t + phi_m))", "weight": 1.0},
    {"production": "<amp> * <amp>", "weight": 0.5}
  ],
  "extra": [
    {"production": "A * cos(2 pi f_c t + <phase>)", "weight": 3.0},
    {"production": "A * sum(m, i, 1, n)", "weight": 1.0},
    {"production": "(A * sin(2 pi f_c t)) / <divisor>", "weight": 1.0},
    {"production": "<extra> + <extra>", "weight": 0.5}
  ],
  "divisor": [
    {"production": "(1 + m)", "weight": 2.0},
    {"production": "(Q(t) * pi * 0)", "weight": 0.5}
  ],
  "undefined": [
    {"production": "x_q", "weight": 1.0},
    {"production": "B * t", "weight": 0.8},
    {"production": "omega", "weight": 0.6}
  ],
  "func": [
    {"production": "cos", "weight": 1.0},
    {"production": "sin", "weight": 0.8}
  ],
  "arg": [
    {"production": "2 pi f_c t", "weight": 1.0},
    {"production": "<phase>", "weight": 0.5}
  ],
  "term": [
    {"production": "A_c", "weight": 1.0},
    {"production": "phi", "weight": 0.5}
  ]
}
)json";

}  // namespace

Grammar Grammar::standard() {
  static const Grammar grammar = from_json(nlohmann::json::parse(kDefaultGrammar));
  return grammar;
}

}  // namespace modwave::genlab
