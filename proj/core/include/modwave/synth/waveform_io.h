#ifndef MODWAVE_SYNTH_WAVEFORM_IO_H_
#define MODWAVE_SYNTH_WAVEFORM_IO_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>

#include "modwave/signal.h"

namespace modwave::synth {

// CSV with header `index,i,q`; q is 0 for real signals.
void write_waveform_csv(std::ostream& out, const SampledSignal& signal);

// Interleaved little-endian float32 (i, q) pairs at `path`, plus a JSON
// sidecar at `path` + ".json" holding sample_rate, scheme, seed and
// sample_count.
void write_waveform_f32(const std::filesystem::path& path, const SampledSignal& signal,
                        const std::string& scheme, std::uint64_t seed);

// Reads back a float32 dump and its sidecar (ground truth is not stored).
SampledSignal read_waveform_f32(const std::filesystem::path& path);

}  // namespace modwave::synth

#endif  // MODWAVE_SYNTH_WAVEFORM_IO_H_
