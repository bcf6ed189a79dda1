#include "bsm/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bsm {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int bound must be positive");
  // Multiply-shift reduction; the bias is below 2^-64 per draw.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
}

double Rng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();  // log(0) guard; hit with probability 2^-53
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692 * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // Hash the base seed once, then offset by the stream index and hash again.
  Rng base(seed);
  Rng mixed(base.next_u64() + stream * 0x9e3779b97f4a7c15ULL);
  return mixed.next_u64();
}

}  // namespace bsm
