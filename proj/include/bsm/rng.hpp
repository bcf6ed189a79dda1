#pragma once

#include <cstdint>

namespace bsm {

// Derives an independent stream seed from (base seed, stream index). Used
// everywhere a task needs its own generator (one per RR-set, one per MC
// replication, one per sweep point) so results never depend on thread count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Small deterministic generator (splitmix64 steps). Not cryptographic; the
// point is bit-identical output on every platform for the same seed, which
// the standard-library distributions do not guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 random bits.
  double uniform();

  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t uniform_int(std::uint64_t bound);

  // Standard normal via Box-Muller; consumes exactly two uniforms per call
  // (no cached spare, so interleaved callers stay reproducible).
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace bsm
