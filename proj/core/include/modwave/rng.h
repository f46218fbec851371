#ifndef MODWAVE_RNG_H_
#define MODWAVE_RNG_H_

#include <cstdint>
#include <random>

namespace modwave {

// Seeded generator with platform-independent output. The engine is
// std::mt19937_64 (its sequence is fixed by the standard); distributions
// are implemented here because the std ones are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1].
  double uniform_open() { return 1.0 - uniform(); }
  // Standard normal (Box-Muller, pairs cached).
  double gaussian();
  int bit() { return static_cast<int>(engine_() >> 63); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Independent stream seed for (master seed, stream index), via splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace modwave

#endif  // MODWAVE_RNG_H_
