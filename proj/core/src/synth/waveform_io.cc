#include "modwave/synth/waveform_io.h"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace modwave::synth {
namespace {

static_assert(std::endian::native == std::endian::little, "float32 dumps assume a little-endian host");

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".json");
}

}  // namespace

void write_waveform_csv(std::ostream& out, const SampledSignal& signal) {
  out << "index,i,q\n";
  char buf[96];
  for (std::size_t k = 0; k < signal.size(); ++k) {
    const double q = signal.is_complex() ? signal.q[k] : 0.0;
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, signal.i[k], q);
    out << buf;
  }
}

void write_waveform_f32(const std::filesystem::path& path, const SampledSignal& signal,
                        const std::string& scheme, std::uint64_t seed) {
  std::vector<float> data(2 * signal.size());
  for (std::size_t k = 0; k < signal.size(); ++k) {
    data[2 * k] = static_cast<float>(signal.i[k]);
    data[2 * k + 1] = signal.is_complex() ? static_cast<float>(signal.q[k]) : 0.0f;
  }
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write '" + path.string() + "'");
  bin.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(float)));

  nlohmann::ordered_json meta;
  meta["format"] = "float32-interleaved-iq";
  meta["sample_rate"] = signal.sample_rate_hz;
  meta["scheme"] = scheme;
  meta["seed"] = seed;
  meta["sample_count"] = signal.size();
  std::ofstream js(sidecar(path));
  if (!js) throw std::runtime_error("cannot write '" + sidecar(path).string() + "'");
  js << meta.dump(2) << '\n';
}

SampledSignal read_waveform_f32(const std::filesystem::path& path) {
  std::ifstream js(sidecar(path));
  if (!js) throw std::runtime_error("missing sidecar '" + sidecar(path).string() + "'");
  const auto meta = nlohmann::json::parse(js);
  const std::size_t count = meta.at("sample_count").get<std::size_t>();
  std::vector<float> data(2 * count);
  std::ifstream bin(path, std::ios::binary);
  if (!bin.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(float)))) {
    throw std::runtime_error("short waveform file '" + path.string() + "'");
  }
  SampledSignal s;
  s.sample_rate_hz = meta.at("sample_rate").get<double>();
  s.i.resize(count);
  s.q.resize(count);
  bool any_q = false;
  for (std::size_t k = 0; k < count; ++k) {
    s.i[k] = data[2 * k];
    s.q[k] = data[2 * k + 1];
    any_q = any_q || data[2 * k + 1] != 0.0f;
  }
  if (!any_q) s.q.clear();
  return s;
}

}  // namespace modwave::synth
