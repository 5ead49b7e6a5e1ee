// rng.hpp — deterministic random streams.
//
// All randomness flows through Rng so that runs are reproducible across
// platforms and worker counts. The engine is std::mt19937_64 (its output
// sequence is pinned by the standard); the distributions are hand-rolled
// because the std:: distribution algorithms are implementation-defined.
#pragma once

#include <cstdint>
#include <random>

namespace csslb {

// splitmix64 finalizer; mixes (master seed, stream id) into a stream seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream_id);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent substream, e.g. one per Monte Carlo trial. Results do not
  // depend on how trials are scheduled across workers.
  static Rng stream(std::uint64_t master, std::uint64_t stream_id) {
    return Rng(mix_seed(master, stream_id));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (cosine branch; two u64 per call).
  double normal();

  // Unbiased integer in [0,n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n);

  // Fair coin.
  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace csslb
