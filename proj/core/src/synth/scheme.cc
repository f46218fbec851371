#include "modwave/synth/scheme.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <utility>

namespace modwave::synth {
namespace {

struct NamedScheme {
  std::string_view name;
  SchemeKind kind;
};

constexpr std::array<NamedScheme, 15> kCanonical = {{
    {"AM", SchemeKind::kAm},         {"FM", SchemeKind::kFm},
    {"PM", SchemeKind::kPm},         {"OOK", SchemeKind::kOok},
    {"BPSK", SchemeKind::kBpsk},     {"QPSK", SchemeKind::kQpsk},
    {"BFSK", SchemeKind::kBfsk},     {"FSK", SchemeKind::kFsk},
    {"MSK", SchemeKind::kMsk},       {"GMSK", SchemeKind::kGmsk},
    {"Chirp", SchemeKind::kChirp},   {"QAM-16", SchemeKind::kQam16},
    {"QAM-64", SchemeKind::kQam64},  {"QAM-128", SchemeKind::kQam128},
    {"QAM-256", SchemeKind::kQam256},
}};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view scheme_name(SchemeKind kind) {
  if (kind == SchemeKind::kFormula) return "formula";
  for (const auto& s : kCanonical) {
    if (s.kind == kind) return s.name;
  }
  return "unknown";
}

SchemeKind parse_scheme(std::string_view text, std::string* formula_id) {
  constexpr std::string_view kFormulaPrefix = "formula:";
  if (text.size() > kFormulaPrefix.size() && upper(text.substr(0, kFormulaPrefix.size())) == "FORMULA:") {
    if (formula_id) *formula_id = std::string(text.substr(kFormulaPrefix.size()));
    return SchemeKind::kFormula;
  }
  std::string key = upper(text);
  key.erase(std::remove(key.begin(), key.end(), '-'), key.end());
  // "16QAM" and "QAM16" both normalize to "QAM16".
  if (key.size() > 3 && key.ends_with("QAM")) key = "QAM" + key.substr(0, key.size() - 3);
  for (const auto& s : kCanonical) {
    std::string canon = upper(s.name);
    canon.erase(std::remove(canon.begin(), canon.end(), '-'), canon.end());
    if (canon == key) return s.kind;
  }
  throw SchemeError("unknown scheme '" + std::string(text) + "'");
}

bool is_analog(SchemeKind kind) {
  return kind == SchemeKind::kAm || kind == SchemeKind::kFm || kind == SchemeKind::kPm;
}

bool is_qam(SchemeKind kind) {
  return kind == SchemeKind::kQam16 || kind == SchemeKind::kQam64 || kind == SchemeKind::kQam128 ||
         kind == SchemeKind::kQam256;
}

bool is_linear(SchemeKind kind) {
  return kind == SchemeKind::kOok || kind == SchemeKind::kBpsk || kind == SchemeKind::kQpsk || is_qam(kind);
}

int alphabet_size(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kAm:
    case SchemeKind::kFm:
    case SchemeKind::kPm:
    case SchemeKind::kFormula:
      return 1;
    case SchemeKind::kQpsk:
    case SchemeKind::kFsk:
      return 4;
    case SchemeKind::kQam16:
      return 16;
    case SchemeKind::kQam64:
      return 64;
    case SchemeKind::kQam128:
      return 128;
    case SchemeKind::kQam256:
      return 256;
    default:
      return 2;
  }
}

int bits_per_symbol(SchemeKind kind) {
  int m = alphabet_size(kind);
  int bits = 0;
  while (m > 1) {
    m >>= 1;
    ++bits;
  }
  return bits;
}

std::string SchemeConfig::label() const {
  if (kind == SchemeKind::kFormula) return "formula:" + formula_id;
  return std::string(scheme_name(kind));
}

double SchemeConfig::upper_band_edge_hz() const {
  const double rs = symbol_rate_hz;
  const double lobe = pulse == PulseShape::kRootRaisedCosine ? 0.5 * rs * (1.0 + rolloff) : rs;
  switch (kind) {
    case SchemeKind::kAm:
      return carrier_hz + message_hz;
    case SchemeKind::kFm:
      return carrier_hz + std::abs(freq_deviation) / (2.0 * std::numbers::pi) + message_hz;
    case SchemeKind::kPm:
      return carrier_hz + (std::abs(phase_deviation) + 1.0) * message_hz;
    case SchemeKind::kBfsk:
      return carrier_hz + 0.5 * rs + rs;
    case SchemeKind::kFsk:
      return carrier_hz + 1.5 * rs + rs;
    case SchemeKind::kMsk:
    case SchemeKind::kGmsk:
      return carrier_hz + 0.75 * rs;
    case SchemeKind::kChirp:
      return carrier_hz + chirp_sweep_hz + rs;
    case SchemeKind::kFormula:
      return carrier_hz + 2.0 * rs;
    default:
      return carrier_hz + lobe;
  }
}

void SchemeConfig::validate() const {
  if (!(symbol_rate_hz > 0.0) || !std::isfinite(symbol_rate_hz)) {
    throw SchemeError("symbol_rate_hz must be positive");
  }
  if (samples_per_symbol < 4) throw SchemeError("samples_per_symbol must be >= 4");
  if (symbol_count == 0) throw SchemeError("symbol_count must be >= 1");
  if (!(carrier_hz > 0.0)) throw SchemeError("carrier_hz must be positive");
  if (!(amplitude > 0.0)) throw SchemeError("amplitude must be positive");
  if (upper_band_edge_hz() >= 0.5 * sample_rate_hz()) {
    throw SchemeError(label() + ": Nyquist violation, band edge " + std::to_string(upper_band_edge_hz()) +
                      " Hz >= fs/2 = " + std::to_string(0.5 * sample_rate_hz()) + " Hz");
  }
  if (kind == SchemeKind::kGmsk && (!(gmsk_bt > 0.0) || gmsk_span_symbols < 1)) {
    throw SchemeError("GMSK needs bt > 0 and span >= 1");
  }
  if (pulse == PulseShape::kRootRaisedCosine && (rolloff <= 0.0 || rolloff > 1.0 || rrc_span_symbols < 1)) {
    throw SchemeError("root-raised-cosine needs rolloff in (0, 1] and span >= 1");
  }
  if (kind == SchemeKind::kFormula) {
    if (formula.empty()) throw SchemeError("formula scheme '" + formula_id + "' has no formula text");
    if (!is_linear(base)) throw SchemeError("formula base scheme must be OOK, BPSK, QPSK or QAM");
    if (sum_upper < 0) throw SchemeError("sum upper bound n must be non-negative");
  }
}

}  // namespace modwave::synth
