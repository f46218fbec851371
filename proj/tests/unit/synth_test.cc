#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "modwave/dsl/corpus.h"
#include "modwave/dsl/evaluate.h"
#include "modwave/dsl/expression.h"
#include "modwave/rng.h"
#include "modwave/synth/constellation.h"
#include "modwave/synth/cpm.h"
#include "modwave/synth/modulate.h"
#include "modwave/synth/scheme.h"
#include "modwave/synth/waveform_io.h"

namespace modwave::synth {
namespace {

constexpr double kPi = std::numbers::pi;
const std::string kDataDir = MODWAVE_DATA_DIR;

std::string corpus_formula(const std::string& file, const std::string& id) {
  const auto corpus = dsl::read_corpus(kDataDir + "/corpus/" + file);
  return dsl::find_entry(corpus, id)->formula;
}

SchemeConfig small_config(SchemeKind kind, std::size_t symbols = 64) {
  SchemeConfig c;
  c.kind = kind;
  c.symbol_count = symbols;
  c.seed = 11;
  return c;
}

const std::vector<SchemeKind> kReferenceSchemes = {
    SchemeKind::kAm,    SchemeKind::kFm,    SchemeKind::kPm,    SchemeKind::kOok,   SchemeKind::kBpsk,
    SchemeKind::kQpsk,  SchemeKind::kBfsk,  SchemeKind::kFsk,   SchemeKind::kMsk,   SchemeKind::kGmsk,
    SchemeKind::kChirp, SchemeKind::kQam16, SchemeKind::kQam64, SchemeKind::kQam128, SchemeKind::kQam256};

// ---- scheme ids -------------------------------------------------------------

TEST(SchemeTest, ParsesCanonicalNamesAndAliases) {
  EXPECT_EQ(parse_scheme("qpsk"), SchemeKind::kQpsk);
  EXPECT_EQ(parse_scheme("QAM-16"), SchemeKind::kQam16);
  EXPECT_EQ(parse_scheme("16QAM"), SchemeKind::kQam16);
  EXPECT_EQ(parse_scheme("256-qam"), SchemeKind::kQam256);
  EXPECT_EQ(parse_scheme("qam128"), SchemeKind::kQam128);
  EXPECT_EQ(parse_scheme("chirp"), SchemeKind::kChirp);
  std::string id;
  EXPECT_EQ(parse_scheme("formula:M1", &id), SchemeKind::kFormula);
  EXPECT_EQ(id, "M1");
  EXPECT_THROW(parse_scheme("QAM-32"), SchemeError);
  EXPECT_THROW(parse_scheme(""), SchemeError);
  for (SchemeKind k : kReferenceSchemes) EXPECT_EQ(parse_scheme(scheme_name(k)), k);
}

TEST(SchemeTest, ConfigInvariants) {
  SchemeConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(c.sample_rate_hz(), 48000.0);
  c.carrier_hz = 23500.0;
  EXPECT_THROW(c.validate(), SchemeError);
  c = SchemeConfig{};
  c.samples_per_symbol = 3;
  EXPECT_THROW(c.validate(), SchemeError);
  c = SchemeConfig{};
  c.kind = SchemeKind::kFormula;
  EXPECT_THROW(c.validate(), SchemeError);  // no formula text
  c.formula = "I(t)";
  c.base = SchemeKind::kMsk;
  EXPECT_THROW(c.validate(), SchemeError);
  SchemeConfig nyquist = small_config(SchemeKind::kQpsk);
  nyquist.carrier_hz = 23200.0;
  EXPECT_THROW(modulate_reference(nyquist), SchemeError);
}

// ---- bits -------------------------------------------------------------------

TEST(GenBitsTest, DeterministicPerSeed) {
  EXPECT_EQ(gen_bits(8, 1), gen_bits(8, 1));
  EXPECT_NE(gen_bits(64, 1), gen_bits(64, 2));
  const auto one = gen_bits(1, 12345);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_LE(one[0], 1);
}

TEST(GenBitsTest, BalancedWithinBinomialBound) {
  const auto bits = gen_bits(100000, 3);
  std::size_t ones = 0;
  for (auto b : bits) ones += b;
  const double fraction = static_cast<double>(ones) / bits.size();
  EXPECT_GE(fraction, 0.49);
  EXPECT_LE(fraction, 0.51);
}

// ---- constellations ---------------------------------------------------------

TEST(ConstellationTest, QpskGrayTable) {
  const double a = 1.0 / std::sqrt(2.0);
  const auto s = map_symbols({0, 0, 0, 1, 1, 1, 1, 0}, SchemeKind::kQpsk);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], Complex(a, a));
  EXPECT_EQ(s[1], Complex(-a, a));
  EXPECT_EQ(s[2], Complex(-a, -a));
  EXPECT_EQ(s[3], Complex(a, -a));
}

TEST(ConstellationTest, BpskAndOok) {
  EXPECT_EQ(map_symbols({0, 1}, SchemeKind::kBpsk), (std::vector<Complex>{{1, 0}, {-1, 0}}));
  const auto ook = map_symbols({0, 1}, SchemeKind::kOok);
  EXPECT_EQ(ook[0], Complex(0, 0));
  EXPECT_DOUBLE_EQ(std::norm(ook[1]), 2.0);
}

TEST(ConstellationTest, Qam256AllZeroIsCorner) {
  const auto s = map_symbols(Bits(8, 0), SchemeKind::kQam256);
  ASSERT_EQ(s.size(), 1u);
  const double corner = -15.0 / std::sqrt(170.0);
  EXPECT_NEAR(s[0].real(), corner, 1e-15);
  EXPECT_NEAR(s[0].imag(), corner, 1e-15);
  // It is the largest-magnitude point of the alphabet.
  double max_norm = 0.0;
  for (const auto& p : constellation(SchemeKind::kQam256)) max_norm = std::max(max_norm, std::norm(p));
  EXPECT_NEAR(std::norm(s[0]), max_norm, 1e-12);
}

TEST(ConstellationTest, UnitAverageEnergyAndDistinctPoints) {
  for (SchemeKind k : {SchemeKind::kOok, SchemeKind::kBpsk, SchemeKind::kQpsk, SchemeKind::kQam16,
                       SchemeKind::kQam64, SchemeKind::kQam128, SchemeKind::kQam256}) {
    const auto& pts = constellation(k);
    ASSERT_EQ(pts.size(), static_cast<std::size_t>(alphabet_size(k)));
    double e = 0.0;
    for (const auto& p : pts) e += std::norm(p);
    EXPECT_NEAR(e / pts.size(), 1.0, 1e-12) << scheme_name(k);
    std::set<std::pair<long, long>> distinct;
    for (const auto& p : pts) distinct.insert({std::lround(p.real() * 1e6), std::lround(p.imag() * 1e6)});
    EXPECT_EQ(distinct.size(), pts.size()) << scheme_name(k);
  }
}

// Raw (unnormalized) odd-integer coordinates of a constellation.
std::vector<std::pair<int, int>> raw_points(SchemeKind k, double scale) {
  std::vector<std::pair<int, int>> out;
  for (const auto& p : constellation(k)) {
    out.push_back({static_cast<int>(std::lround(p.real() * scale)), static_cast<int>(std::lround(p.imag() * scale))});
  }
  return out;
}

TEST(ConstellationTest, Qam128IsTheTwelveByTwelveCross) {
  const auto pts = raw_points(SchemeKind::kQam128, std::sqrt(82.0));
  double energy = 0.0;
  for (auto [x, y] : pts) {
    EXPECT_TRUE(x % 2 != 0 && y % 2 != 0);
    EXPECT_LE(std::abs(x), 11);
    EXPECT_LE(std::abs(y), 11);
    EXPECT_FALSE(std::abs(x) > 7 && std::abs(y) > 7) << x << "," << y;
    energy += x * x + y * y;
  }
  EXPECT_DOUBLE_EQ(energy / 128.0, 82.0);
}

int popcount(std::uint32_t v) { return __builtin_popcount(v); }

TEST(ConstellationTest, SquareQamNeighboursDifferInOneBit) {
  for (SchemeKind k : {SchemeKind::kQpsk, SchemeKind::kQam16, SchemeKind::kQam64, SchemeKind::kQam256}) {
    const auto& pts = constellation(k);
    double dmin = 1e9;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) dmin = std::min(dmin, std::abs(pts[a] - pts[b]));
    }
    for (std::uint32_t a = 0; a < pts.size(); ++a) {
      for (std::uint32_t b = a + 1; b < pts.size(); ++b) {
        if (std::abs(std::abs(pts[a] - pts[b]) - dmin) < 1e-9) {
          EXPECT_EQ(popcount(a ^ b), 1) << scheme_name(k) << " " << a << " " << b;
        }
      }
    }
  }
}

TEST(ConstellationTest, RejectsPartialSymbols) {
  EXPECT_THROW(map_symbols({0, 1, 1}, SchemeKind::kQpsk), SchemeError);
  EXPECT_THROW(map_symbols(Bits(7, 0), SchemeKind::kQam256), SchemeError);
  EXPECT_THROW(constellation(SchemeKind::kMsk), SchemeError);
}

TEST(ConstellationTest, GrayCodeRoundTrip) {
  for (std::uint32_t n = 0; n < 1024; ++n) {
    EXPECT_EQ(gray_decode(gray_encode(n)), n);
    EXPECT_EQ(popcount(gray_encode(n) ^ gray_encode(n + 1)), 1);
  }
}

// ---- reference modulators ---------------------------------------------------

TEST(ModulateTest, BpskCentreSampleFlipsWithData) {
  SchemeConfig c = small_config(SchemeKind::kBpsk, 256);
  const auto s = modulate_reference(c);
  const std::size_t sps = c.samples_per_symbol;
  // Phase offset pi between d=0 and d=1: sample at symbol centre times the
  // carrier reference has the data's sign.
  for (std::size_t n = 0; n < c.symbol_count; ++n) {
    const std::size_t k = n * sps + sps / 2 + 1;
    const double carrier = std::cos(carrier_angle(c.carrier_hz, k, c.sample_rate_hz()));
    const double expected = s.origin_bits[n] ? -carrier : carrier;
    EXPECT_NEAR(s.i[k], expected, 1e-12) << n;
  }
}

TEST(ModulateTest, AmWithZeroIndexMatchesCarrierFormula) {
  SchemeConfig c = small_config(SchemeKind::kAm);
  c.mod_index = 0.0;
  c.carrier_phase = 0.4;
  const auto am = modulate_reference(c);
  dsl::EvaluationContext ctx;
  ctx.set_constant("A_c", c.amplitude);
  ctx.set_constant("f_c", c.carrier_hz);
  ctx.set_constant("phi_c", c.carrier_phase);
  const auto carrier = dsl::evaluate(dsl::parse("A_c * cos(2 pi f_c t + phi_c)"), ctx,
                                     dsl::TimeGrid::from_rate(c.sample_rate_hz(), c.sample_count()));
  ASSERT_EQ(am.size(), carrier.samples.size());
  for (std::size_t k = 0; k < am.size(); ++k) EXPECT_DOUBLE_EQ(am.i[k], carrier.samples[k]);
}

TEST(ModulateTest, OokZeroBitIsSilent) {
  const SchemeConfig c = small_config(SchemeKind::kOok, 200);
  const auto s = modulate_reference(c);
  const std::size_t sps = c.samples_per_symbol;
  std::size_t zero_symbols = 0;
  for (std::size_t n = 0; n < c.symbol_count; ++n) {
    double energy = 0.0;
    for (std::size_t k = n * sps; k < (n + 1) * sps; ++k) {
      if (s.origin_bits[n] == 0) EXPECT_EQ(s.i[k], 0.0);
      energy += s.i[k] * s.i[k];
    }
    if (s.origin_bits[n] == 0) {
      ++zero_symbols;
    } else {
      EXPECT_GT(energy, 0.0);
    }
  }
  EXPECT_GT(zero_symbols, 50u);
}

// The reference modulators implement the reference formula laws: evaluating the
// corpus formula with the scheme's own symbol stream reproduces them.
void expect_matches_formula(SchemeKind kind, const std::string& formula) {
  SchemeConfig c = small_config(kind, 128);
  const auto reference = modulate_reference(c);
  const FormulaContext ctx = formula_context(c);
  const auto via_formula = modulate_formula(dsl::parse(formula), ctx, c);
  ASSERT_EQ(reference.size(), via_formula.size());
  EXPECT_EQ(reference.origin_bits, via_formula.origin_bits);
  double worst = 0.0;
  for (std::size_t k = 0; k < reference.size(); ++k) worst = std::max(worst, std::abs(reference.i[k] - via_formula.i[k]));
  EXPECT_LT(worst, 1e-9) << scheme_name(kind);
}

TEST(ModulateTest, ReferenceSchemesFollowTableTwoFormulas) {
  expect_matches_formula(SchemeKind::kBpsk, corpus_formula("reference.csv", "BPSK"));
  expect_matches_formula(SchemeKind::kQam16, corpus_formula("reference.csv", "QAM"));
  expect_matches_formula(SchemeKind::kQam128, corpus_formula("reference.csv", "QAM"));
  expect_matches_formula(SchemeKind::kFsk, corpus_formula("reference.csv", "FSK"));
  expect_matches_formula(SchemeKind::kQpsk, "A_c * cos(2 pi f_c t + pi / 4 + (pi / 2) * d(t))");
}

TEST(ModulateTest, MskPhaseIsContinuousAndEnvelopeConstant) {
  for (SchemeKind k : {SchemeKind::kMsk, SchemeKind::kGmsk}) {
    SchemeConfig c = small_config(k, 200);
    const CpmModel model = CpmModel::for_scheme(c);
    EXPECT_NEAR(model.q(static_cast<double>(model.memory())), 0.5, 1e-12);
    EXPECT_EQ(model.q(-1.0), 0.0);
    // Excess phase at the end of a symbol equals the phase at the start of
    // the next for every pattern and incoming bit.
    const std::uint32_t mask = static_cast<std::uint32_t>(model.pattern_count() - 1);
    for (std::uint32_t p = 0; p <= mask; ++p) {
      double end = 0.0;
      for (int l = 0; l < model.memory(); ++l) {
        end += (((p >> l) & 1u) ? 1.0 : -1.0) * model.q(1.0 + l);
      }
      end *= 2.0 * kPi * model.h();
      for (std::uint32_t bit = 0; bit < 2; ++bit) {
        const std::uint32_t next = ((p << 1) | bit) & mask;
        const double start = model.state_step(p) + model.pattern_phase(next, 0);
        EXPECT_NEAR(std::remainder(end - start, 2 * kPi), 0.0, 1e-9) << scheme_name(k) << " p=" << p;
      }
    }
    const auto s = modulate_reference(c);
    EXPECT_NEAR(s.power(), 0.5, 0.01) << scheme_name(k);
  }
}

TEST(ModulateTest, MskUsesQuarterCycleFrequencyOffsets) {
  SchemeConfig c = small_config(SchemeKind::kMsk, 4);
  const CpmModel model = CpmModel::for_scheme(c);
  // Rectangular pulse: excess phase ramps by +/- pi/2 over a symbol.
  EXPECT_NEAR(model.pattern_phase(1, c.samples_per_symbol / 2), kPi / 4, 1e-12);
  EXPECT_NEAR(model.pattern_phase(0, c.samples_per_symbol / 2), -kPi / 4, 1e-12);
}

TEST(ModulateTest, ChirpSweepsAcrossSymbol) {
  SchemeConfig c = small_config(SchemeKind::kChirp, 4);
  const double period = 1.0 / c.symbol_rate_hz;
  const double dt = 1e-7;
  for (double tau : {0.0, 0.25 * period, 0.75 * period}) {
    const double f_up = (chirp_phase(c, true, tau + dt) - chirp_phase(c, true, tau)) / (2 * kPi * dt);
    EXPECT_NEAR(f_up, c.chirp_sweep_hz * (2 * tau / period - 1), 1.0);
    const double f_down = (chirp_phase(c, false, tau + dt) - chirp_phase(c, false, tau)) / (2 * kPi * dt);
    EXPECT_NEAR(f_down, -f_up, 1e-6);
  }
}

TEST(ModulateTest, RootRaisedCosinePulse) {
  SchemeConfig c = small_config(SchemeKind::kQpsk);
  c.pulse = PulseShape::kRootRaisedCosine;
  const auto p = rrc_pulse(c);
  double e = 0.0;
  for (double v : p) e += v * v;
  EXPECT_NEAR(e, c.samples_per_symbol, 1e-9);
  // p * p is a raised cosine: zero crossings at nonzero symbol multiples.
  const int sps = c.samples_per_symbol;
  const int half = static_cast<int>(p.size() / 2);
  auto autocorr = [&](int lag) {
    double acc = 0.0;
    for (int j = 0; j + lag < static_cast<int>(p.size()); ++j) acc += p[j] * p[j + lag];
    return acc;
  };
  const double peak = autocorr(0);
  for (int m = 1; m <= 3; ++m) EXPECT_LT(std::abs(autocorr(m * sps)) / peak, 1e-2) << m;
  EXPECT_LT(half, static_cast<int>(p.size()));
  EXPECT_NO_THROW(modulate_reference(c));
}

TEST(ModulateTest, DeterministicForEverySchemeAndSeedSensitive) {
  for (SchemeKind k : kReferenceSchemes) {
    SchemeConfig c = small_config(k, 32);
    const auto a = modulate_reference(c);
    const auto b = modulate_reference(c);
    EXPECT_EQ(a.i, b.i) << scheme_name(k);
    EXPECT_TRUE(all_finite(a)) << scheme_name(k);
    EXPECT_EQ(a.size(), c.sample_count());
    if (!is_analog(k)) {
      EXPECT_EQ(a.origin_bits.size(), c.symbol_count * bits_per_symbol(k)) << scheme_name(k);
      c.seed = 12;
      EXPECT_NE(modulate_reference(c).origin_bits, a.origin_bits) << scheme_name(k);
    }
  }
}

// ---- formula waveforms ------------------------------------------------------

SchemeConfig formula_config(const std::string& id) {
  SchemeConfig c = small_config(SchemeKind::kFormula, 64);
  c.formula_id = id;
  c.formula = corpus_formula("generated_m1_m3.csv", id);
  return c;
}

TEST(ModulateFormulaTest, M2WithZeroQuadratureMatchesHandComposition) {
  SchemeConfig c = formula_config("M2");
  FormulaContext ctx = formula_context(c);
  ctx.context.set_signal("Q(t)", std::vector<double>(ctx.grid.count, 0.0));
  const auto s = modulate_formula(dsl::parse(c.formula), ctx, c);
  const auto& in_phase = *ctx.context.signal("I(t)");
  const auto& d = *ctx.context.signal("d(t)");
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double w = 2 * kPi * c.carrier_hz * ctx.grid.at(k);
    const double expected = in_phase[k] * std::cos(w) + c.amplitude * std::cos(w) +
                            c.amplitude * kPi * d[k] * std::sin(w);
    EXPECT_NEAR(s.i[k], expected, 1e-9) << k;
  }
}

TEST(ModulateFormulaTest, M1WithoutExtraTermsIsPureQam) {
  SchemeConfig c = formula_config("M1");
  FormulaContext ctx = formula_context(c);
  ctx.context.set_constant("A", 0.0);
  ctx.context.set_constant("m", 0.0);
  const auto m1 = modulate_formula(dsl::parse(c.formula), ctx, c);
  SchemeConfig qam = small_config(SchemeKind::kQam16, 64);
  qam.amplitude = 1.0;
  const auto reference = modulate_reference(qam);
  EXPECT_EQ(m1.origin_bits, reference.origin_bits);
  for (std::size_t k = 0; k < m1.size(); ++k) EXPECT_NEAR(m1.i[k], reference.i[k], 1e-9);
}

TEST(ModulateFormulaTest, M3RunsWithGuardedDivisions) {
  const SchemeConfig c = formula_config("M3");
  const auto s = modulate_formula(c);
  EXPECT_TRUE(all_finite(s));
  EXPECT_GT(s.guard_count, 0u);
  EXPECT_EQ(s.origin_bits.size(), c.symbol_count * 4);
  EXPECT_EQ(s.origin_symbols.size(), c.symbol_count);
}

TEST(ModulateFormulaTest, UndefinedStreamsPropagateEvaluationErrors) {
  SchemeConfig c = formula_config("M1");
  c.formula = "x_q * cos(2 pi f_c t)";
  EXPECT_THROW(modulate(c), dsl::EvaluationError);
}

// ---- power normalization ----------------------------------------------------

TEST(NormalizeTest, Examples) {
  SampledSignal s;
  s.i = {2, 2, 2, 2};
  double factor = 0.0;
  const auto out = normalize_power(s, 1.0, &factor);
  EXPECT_EQ(out.i, (std::vector<double>{1, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(factor, 0.5);
  EXPECT_DOUBLE_EQ(out.gain, 0.5);

  SampledSignal unit;
  unit.i = {1, -1, 1, -1};
  const auto same = normalize_power(unit);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(same.i[k], unit.i[k], 1e-12);

  Rng rng(5);
  SampledSignal noise;
  noise.i.resize(10000);
  noise.q.resize(10000);
  for (auto& x : noise.i) x = 3.0 * rng.gaussian();
  for (auto& x : noise.q) x = rng.gaussian() - 0.2;
  EXPECT_NEAR(normalize_power(noise).power(), 1.0, 1e-6);

  SampledSignal zero;
  zero.i.assign(8, 0.0);
  EXPECT_THROW(normalize_power(zero), SchemeError);
}

TEST(NormalizeTest, PowerInvariantAcrossSchemesAndAmplitudes) {
  for (SchemeKind k : kReferenceSchemes) {
    for (double amplitude : {0.1, 1.0, 7.5}) {
      SchemeConfig c = small_config(k, 32);
      c.amplitude = amplitude;
      const auto s = normalize_power(modulate_reference(c), 1.0);
      EXPECT_NEAR(s.power(), 1.0, 1e-6) << scheme_name(k);
    }
  }
}

// ---- waveform dump ----------------------------------------------------------

TEST(WaveformIoTest, CsvAndFloatDump) {
  SchemeConfig c = small_config(SchemeKind::kQpsk, 8);
  const auto s = modulate_reference(c);
  std::ostringstream csv;
  write_waveform_csv(csv, s);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "index,i,q");
  EXPECT_EQ(first.rfind("0,", 0), 0u);

  const auto dir = std::filesystem::temp_directory_path() / "modwave_waveform_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "qpsk.f32";
  write_waveform_f32(path, s, "QPSK", c.seed);
  const auto back = read_waveform_f32(path);
  ASSERT_EQ(back.size(), s.size());
  EXPECT_DOUBLE_EQ(back.sample_rate_hz, s.sample_rate_hz);
  EXPECT_FALSE(back.is_complex());
  for (std::size_t k = 0; k < s.size(); ++k) EXPECT_NEAR(back.i[k], s.i[k], 1e-6);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace modwave::synth
