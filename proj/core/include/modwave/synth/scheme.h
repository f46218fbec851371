#ifndef MODWAVE_SYNTH_SCHEME_H_
#define MODWAVE_SYNTH_SCHEME_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace modwave::synth {

enum class SchemeKind {
  kAm,
  kFm,
  kPm,
  kOok,
  kBpsk,
  kQpsk,
  kBfsk,
  kFsk,
  kMsk,
  kGmsk,
  kChirp,
  kQam16,
  kQam64,
  kQam128,
  kQam256,
  kFormula,
};

enum class PulseShape { kRectangular, kRootRaisedCosine };

class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical display name ("QAM-16", "GMSK", ...). Formula schemes render as
// "formula".
std::string_view scheme_name(SchemeKind kind);

// Accepts canonical names case-insensitively plus the common aliases
// "16QAM", "16-QAM", "QAM16", "chirp". "formula:<id>" yields kFormula and
// stores <id> in `formula_id` when non-null. Throws SchemeError.
SchemeKind parse_scheme(std::string_view text, std::string* formula_id = nullptr);

bool is_analog(SchemeKind kind);
// Schemes whose passband waveform is I(t) cos(wt) - Q(t) sin(wt) with one
// constellation point per symbol.
bool is_linear(SchemeKind kind);
bool is_qam(SchemeKind kind);
// Constellation / alphabet size (1 for analog schemes).
int alphabet_size(SchemeKind kind);
// log2(alphabet_size); 0 for analog schemes.
int bits_per_symbol(SchemeKind kind);

// Everything needed to synthesize one waveform.
struct SchemeConfig {
  SchemeKind kind = SchemeKind::kBpsk;
  double carrier_hz = 6000.0;
  double symbol_rate_hz = 1000.0;
  int samples_per_symbol = 48;
  std::size_t symbol_count = 10000;
  double amplitude = 1.0;  // A_c (and A in generated formulas)

  // Analog parameters.
  double mod_index = 0.5;           // m
  double message_hz = 250.0;        // f_m
  double freq_deviation = 3141.5926535897932;  // k_f, rad/s per message unit (500 Hz peak)
  double phase_deviation = 1.5707963267948966;  // k_p, rad per message unit
  double carrier_phase = 0.0;       // phi_c and phi
  double message_phase = 0.0;       // phi_m

  double gmsk_bt = 0.3;
  int gmsk_span_symbols = 3;
  // Chirps sweep carrier_hz -/+ chirp_sweep_hz over one symbol.
  double chirp_sweep_hz = 1000.0;

  PulseShape pulse = PulseShape::kRectangular;
  double rolloff = 0.35;
  int rrc_span_symbols = 8;

  // Formula schemes: text of the formula, its corpus id, the scheme that
  // supplies I(t), Q(t), d(t) and f(t), and the finite-sum bound n.
  std::string formula;
  std::string formula_id;
  SchemeKind base = SchemeKind::kQam16;
  int sum_upper = 4;

  std::uint64_t seed = 1;

  double sample_rate_hz() const { return symbol_rate_hz * samples_per_symbol; }
  std::size_t sample_count() const { return symbol_count * static_cast<std::size_t>(samples_per_symbol); }
  // Name used in reports: canonical scheme name or "formula:<id>".
  std::string label() const;
  // Scheme whose alphabet the symbols are drawn from (base for formulas).
  SchemeKind symbol_scheme() const { return kind == SchemeKind::kFormula ? base : kind; }
  // Highest frequency the waveform occupies, main lobe included.
  double upper_band_edge_hz() const;

  // Throws SchemeError when an invariant fails (Nyquist, sps >= 4,
  // positive rates, formula schemes with a non-linear base, ...).
  void validate() const;
};

// JSON form: "scheme" holds the name accepted by parse_scheme, "pulse" is
// "rect" or "rrc", "base" a linear scheme name; the remaining keys match
// the field names. from_json starts from the existing values, so missing
// keys keep them; unknown keys and wrong types throw SchemeError. The
// formula text of a "formula:<id>" scheme is not resolved here.
void to_json(nlohmann::json& j, const SchemeConfig& config);
void from_json(const nlohmann::json& j, SchemeConfig& config);

}  // namespace modwave::synth

#endif  // MODWAVE_SYNTH_SCHEME_H_
