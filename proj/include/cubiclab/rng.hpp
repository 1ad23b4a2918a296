#pragma once

#include <cstdint>
#include <string>

namespace cubiclab {

/// SplitMix64. One step, with all arithmetic mod 2^64:
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
/// uniform() takes the top 53 bits: (next() >> 11) * 2^-53, in [0, 1).
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next()
  {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t state_;
};

/// Seed from CUBICLAB_SEED if set and parseable, otherwise `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 20240607);

} // namespace cubiclab
