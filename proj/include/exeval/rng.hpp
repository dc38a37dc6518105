#pragma once

#include <cstdint>

namespace exeval {

/// splitmix64: tiny, fast, and platform-independent. Integer state updates
/// and the 53-bit double conversion below are exact, so streams are
/// bit-identical across compilers and machines.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Seed of the independent substream for one replication. A pure function of
/// (master seed, replication index), so replications can run in any order or
/// in parallel without changing a single draw.
inline std::uint64_t substream_seed(std::uint64_t master_seed,
                                    std::uint64_t replication_index) {
  const std::uint64_t a = detail::mix64(master_seed + 0x9e3779b97f4a7c15ULL);
  const std::uint64_t b =
      detail::mix64(replication_index + 0xbf58476d1ce4e5b9ULL);
  return detail::mix64(a ^ (b + 0x94d049bb133111ebULL + (a << 6) + (a >> 2)));
}

}  // namespace exeval
