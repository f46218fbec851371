#include "modwave/synth/constellation.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace modwave::synth {
namespace {

std::vector<Complex> normalized(std::vector<Complex> points) {
  double energy = 0.0;
  for (const auto& p : points) energy += std::norm(p);
  const double scale = 1.0 / std::sqrt(energy / static_cast<double>(points.size()));
  for (auto& p : points) p *= scale;
  return points;
}

int bits_per_symbol_for(int m) {
  int k = 0;
  while ((1 << k) < m) ++k;
  return k;
}

double gray_level(std::uint32_t bits, int levels) {
  return 2.0 * static_cast<double>(gray_decode(bits)) - (levels - 1);
}

std::vector<Complex> square_qam(int m) {
  const int k = bits_per_symbol_for(m);
  const int half = k / 2;
  const int levels = 1 << half;
  std::vector<Complex> points(static_cast<std::size_t>(m));
  for (std::uint32_t label = 0; label < static_cast<std::uint32_t>(m); ++label) {
    const std::uint32_t ib = label >> half;
    const std::uint32_t qb = label & ((1u << half) - 1);
    points[label] = {gray_level(ib, levels), gray_level(qb, levels)};
  }
  return normalized(std::move(points));
}

std::vector<Complex> cross_qam128() {
  std::vector<Complex> points(128);
  for (std::uint32_t label = 0; label < 128; ++label) {
    double x = gray_level(label >> 4, 8);
    double y = gray_level(label & 0xF, 16);
    const double ay = std::abs(y);
    if (ay > 12.0) {
      const double ax = std::abs(x);
      const double nx = std::copysign(ay - 4.0, x);
      const double ny = std::copysign(8.0 - ax, y);
      x = nx;
      y = ny;
    }
    points[label] = {x, y};
  }
  return normalized(std::move(points));
}

}  // namespace

std::uint32_t gray_encode(std::uint32_t n) { return n ^ (n >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t n = g;
  for (std::uint32_t shift = 1; shift < 32; shift <<= 1) n ^= n >> shift;
  return n;
}

const std::vector<Complex>& constellation(SchemeKind kind) {
  static const std::vector<Complex> kOok = {{0.0, 0.0}, {std::sqrt(2.0), 0.0}};
  static const std::vector<Complex> kBpsk = {{1.0, 0.0}, {-1.0, 0.0}};
  static const std::vector<Complex> kQpsk = [] {
    const double a = 1.0 / std::sqrt(2.0);
    return std::vector<Complex>{{a, a}, {-a, a}, {a, -a}, {-a, -a}};
  }();
  static const std::vector<Complex> kQam16 = square_qam(16);
  static const std::vector<Complex> kQam64 = square_qam(64);
  static const std::vector<Complex> kQam128 = cross_qam128();
  static const std::vector<Complex> kQam256 = square_qam(256);
  switch (kind) {
    case SchemeKind::kOok:
      return kOok;
    case SchemeKind::kBpsk:
      return kBpsk;
    case SchemeKind::kQpsk:
      return kQpsk;
    case SchemeKind::kQam16:
      return kQam16;
    case SchemeKind::kQam64:
      return kQam64;
    case SchemeKind::kQam128:
      return kQam128;
    case SchemeKind::kQam256:
      return kQam256;
    default:
      throw SchemeError(std::string(scheme_name(kind)) + " has no constellation");
  }
}

std::uint32_t bits_to_label(const Bits& bits, std::size_t offset, int count) {
  std::uint32_t label = 0;
  for (int b = 0; b < count; ++b) label = (label << 1) | (bits[offset + static_cast<std::size_t>(b)] & 1u);
  return label;
}

void append_label_bits(std::uint32_t label, int count, Bits& out) {
  for (int b = count - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
}

std::vector<std::uint32_t> bits_to_labels(const Bits& bits, SchemeKind kind) {
  const int k = bits_per_symbol(kind);
  if (k == 0) throw SchemeError(std::string(scheme_name(kind)) + " carries no bits");
  if (bits.size() % static_cast<std::size_t>(k) != 0) {
    throw SchemeError("bit count " + std::to_string(bits.size()) + " is not a multiple of " +
                      std::to_string(k) + " bits per " + std::string(scheme_name(kind)) + " symbol");
  }
  std::vector<std::uint32_t> labels(bits.size() / static_cast<std::size_t>(k));
  for (std::size_t n = 0; n < labels.size(); ++n) labels[n] = bits_to_label(bits, n * static_cast<std::size_t>(k), k);
  return labels;
}

std::vector<Complex> map_symbols(const Bits& bits, SchemeKind kind) {
  const auto& points = constellation(kind);
  const auto labels = bits_to_labels(bits, kind);
  std::vector<Complex> symbols(labels.size());
  for (std::size_t n = 0; n < labels.size(); ++n) symbols[n] = points[labels[n]];
  return symbols;
}

std::uint32_t nearest_label(const std::vector<Complex>& points, Complex z) {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::uint32_t k = 0; k < points.size(); ++k) {
    const double d = std::norm(z - points[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

}  // namespace modwave::synth
