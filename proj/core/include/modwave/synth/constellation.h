#ifndef MODWAVE_SYNTH_CONSTELLATION_H_
#define MODWAVE_SYNTH_CONSTELLATION_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modwave/signal.h"
#include "modwave/synth/scheme.h"

namespace modwave::synth {

std::uint32_t gray_encode(std::uint32_t n);
std::uint32_t gray_decode(std::uint32_t g);

// Points of a linear scheme indexed by symbol label, where the label is the
// symbol's bits read most-significant first. Average energy is 1 except for
// OOK, whose points are {0, sqrt(2)} (unit average energy over the alphabet).
//   BPSK: 0 -> +1, 1 -> -1.
//   QPSK: 00 -> (1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2, 10 -> (1-j)/sqrt2.
//   Square QAM: first half of the bits Gray-index I, second half Q;
//     level = 2 * gray_decode(bits) - (L - 1), so all-zero is the (-,-) corner.
//   QAM-128: 8 x 16 Gray rectangle (3 bits I, 4 bits Q) with the rows
//     |y| in {13, 15} folded into the side arms, yielding the 12 x 12 cross.
// Throws SchemeError for schemes without a constellation.
const std::vector<Complex>& constellation(SchemeKind kind);

// Bits (MSB first) at [offset, offset + count) as an integer label.
std::uint32_t bits_to_label(const Bits& bits, std::size_t offset, int count);
void append_label_bits(std::uint32_t label, int count, Bits& out);

// Groups bits into labels; throws SchemeError when the length is not a
// multiple of bits_per_symbol(kind).
std::vector<std::uint32_t> bits_to_labels(const Bits& bits, SchemeKind kind);
std::vector<Complex> map_symbols(const Bits& bits, SchemeKind kind);

// Label of the nearest constellation point.
std::uint32_t nearest_label(const std::vector<Complex>& points, Complex z);

}  // namespace modwave::synth

#endif  // MODWAVE_SYNTH_CONSTELLATION_H_
