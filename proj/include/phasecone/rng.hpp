#pragma once

#include <cstdint>
#include <random>

namespace phasecone {

// Deterministic random source.  The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the value mappings below are hand-rolled
// so that streams are bit-identical across platforms and library versions
// (std::uniform_real_distribution and friends make no such promise).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace phasecone
